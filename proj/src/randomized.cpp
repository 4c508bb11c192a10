#include "ipc/randomized.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ipc/random.hpp"

namespace ipc {

void ProtocolConfig::validate() const {
  if (local_dim < 2) throw ValidationError("protocol: local dimension must be at least 2");
  if (qudits_a < 1 || qudits_b < 1) throw ValidationError("protocol: each side needs a qudit");
  if (n_unitaries < 1) throw ValidationError("protocol: need at least one setting");
  if (shots && *shots < 1) throw ValidationError("protocol: shots per setting must be positive");
  if (design == Design::clifford && local_dim != 2)
    throw ValidationError("protocol: the Clifford design needs qubits (local dimension 2)");
}

namespace {

Eigen::Index ipow(int base, int exp) {
  Eigen::Index r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Canonical representative of a unitary modulo global phase.
Matrix dephase(Matrix u) {
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (std::abs(u(i)) > 1e-9) {
      u *= std::conj(u(i)) / std::abs(u(i));
      break;
    }
  return u;
}

std::vector<Matrix> build_clifford_group() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix h(2, 2), ph(2, 2);
  h << s, s, s, -s;
  ph << 1, 0, 0, std::complex<double>(0, 1);
  std::vector<Matrix> group{Matrix::Identity(2, 2)};
  for (std::size_t i = 0; i < group.size(); ++i)
    for (const Matrix* g : {&h, &ph}) {
      const Matrix cand = dephase(*g * group[i]);
      const bool seen = std::any_of(group.begin(), group.end(), [&](const Matrix& e) {
        return (e - cand).cwiseAbs().maxCoeff() < 1e-9;
      });
      if (!seen) group.push_back(cand);
    }
  return group;
}

void check_layout(const State& rho, const State& sigma, const ProtocolConfig& cfg) {
  cfg.validate();
  if (rho.dims() != sigma.dims()) throw DimensionError("run_protocol: state dims differ");
  const Eigen::Index da = ipow(cfg.local_dim, cfg.qudits_a);
  const Eigen::Index db = ipow(cfg.local_dim, cfg.qudits_b);
  if (rho.side() != da * db)
    throw DimensionError("run_protocol: state dimension " + std::to_string(rho.side()) +
                         " does not match the qudit layout");
  if (rho.parties() == 2 && (rho.dims()[0] != da || rho.dims()[1] != db))
    throw DimensionError("run_protocol: bipartite dims " + dims_string(rho.dims()) +
                         " do not match the qudit layout");
}

std::vector<double> outcome_probabilities(const Matrix& u, const Matrix& rho) {
  const Eigen::VectorXd diag = (u * rho).cwiseProduct(u.conjugate()).rowwise().sum().real();
  std::vector<double> p(static_cast<std::size_t>(diag.size()));
  double total = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) total += (p[i] = std::max(0.0, diag(i)));
  for (auto& x : p) x /= total;
  return p;
}

std::vector<std::int64_t> sample_counts(const std::vector<double>& p, std::int64_t shots,
                                        std::mt19937_64& rng) {
  std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
  std::vector<std::int64_t> counts(p.size(), 0);
  for (std::int64_t k = 0; k < shots; ++k) ++counts[dist(rng)];
  return counts;
}

// Marginal outcome index over the listed qudits for every full outcome.
std::vector<Eigen::Index> marginal_map(int local_dim, int total, const std::vector<int>& keep) {
  const Eigen::Index n = ipow(local_dim, total);
  std::vector<Eigen::Index> out(static_cast<std::size_t>(n));
  for (Eigen::Index s = 0; s < n; ++s) {
    Eigen::Index m = 0;
    for (int q : keep) m = m * local_dim + (s / ipow(local_dim, total - 1 - q)) % local_dim;
    out[s] = m;
  }
  return out;
}

Eigen::VectorXd marginalize(const Eigen::VectorXd& full, const std::vector<Eigen::Index>& map,
                            Eigen::Index size) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size);
  for (Eigen::Index s = 0; s < full.size(); ++s) out(map[s]) += full(s);
  return out;
}

template <typename T>
Eigen::VectorXd as_vector(const std::vector<T>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = double(v[i]);
  return out;
}

// Leave-one-out jackknife of a statistic of column means.
Estimate jackknife(const std::vector<Eigen::VectorXd>& samples,
                   const std::function<double(const Eigen::VectorXd&)>& stat) {
  const std::size_t k = samples.size();
  Eigen::VectorXd total = Eigen::VectorXd::Zero(samples.front().size());
  for (const auto& s : samples) total += s;
  Estimate e;
  e.value = stat(total / double(k));
  std::vector<double> loo(k);
  double mean = 0.0;
  for (std::size_t i = 0; i < k; ++i) mean += (loo[i] = stat((total - samples[i]) / double(k - 1)));
  mean /= double(k);
  double ss = 0.0;
  for (double v : loo) ss += (v - mean) * (v - mean);
  e.se = std::sqrt(double(k - 1) / double(k) * ss);
  return e;
}

}  // namespace

const std::vector<Matrix>& clifford_group() {
  static const std::vector<Matrix> group = build_clifford_group();
  return group;
}

Matrix sample_local_unitary(int local_dim, Design design, std::mt19937_64& rng) {
  if (local_dim < 2) throw ValidationError("sample_local_unitary: dimension must be at least 2");
  if (design == Design::clifford) {
    if (local_dim != 2) throw ValidationError("sample_local_unitary: Clifford design needs qubits");
    const auto& g = clifford_group();
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    return g[pick(rng)];
  }
  return haar_unitary(local_dim, rng);
}

Eigen::MatrixXd hamming_weights(int local_dim, int qudits) {
  const Eigen::Index n = ipow(local_dim, qudits);
  Eigen::MatrixXd w(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index t = 0; t < n; ++t) {
      int dist = 0;
      for (Eigen::Index a = s, b = t; a > 0 || b > 0; a /= local_dim, b /= local_dim)
        dist += (a % local_dim) != (b % local_dim);
      w(s, t) = double(n) * std::pow(-double(local_dim), -dist);
    }
  return w;
}

MeasurementRecord run_setting(const State& rho, const State& sigma, const ProtocolConfig& cfg,
                              int setting) {
  std::mt19937_64 rng(split_seed(cfg.seed, static_cast<std::uint64_t>(setting)));
  MeasurementRecord rec;
  rec.setting = setting;
  Matrix u = Matrix::Identity(1, 1);
  for (int q = 0; q < cfg.total_qudits(); ++q) {
    rec.unitaries.push_back(sample_local_unitary(cfg.local_dim, cfg.design, rng));
    u = Eigen::kroneckerProduct(u, rec.unitaries.back()).eval();
  }
  auto pr = outcome_probabilities(u, rho.matrix());
  auto ps = outcome_probabilities(u, sigma.matrix());
  if (cfg.exact()) {
    rec.prob_rho = std::move(pr);
    rec.prob_sigma = std::move(ps);
  } else {
    rec.shots = *cfg.shots;
    rec.counts_rho = sample_counts(pr, rec.shots, rng);
    rec.counts_sigma = sample_counts(ps, rec.shots, rng);
  }
  return rec;
}

std::vector<MeasurementRecord> run_protocol(const State& rho, const State& sigma,
                                            const ProtocolConfig& cfg) {
  check_layout(rho, sigma, cfg);
  std::vector<MeasurementRecord> out;
  out.reserve(static_cast<std::size_t>(cfg.n_unitaries));
  for (int k = 0; k < cfg.n_unitaries; ++k) out.push_back(run_setting(rho, sigma, cfg, k));
  return out;
}

OverlapEstimate estimate_overlaps(const std::vector<MeasurementRecord>& records,
                                  const ProtocolConfig& cfg) {
  cfg.validate();
  if (records.size() < 2) throw ValidationError("estimate_overlaps: need at least two settings");
  const int total = cfg.total_qudits();
  const Eigen::Index outcomes = ipow(cfg.local_dim, total);

  std::array<std::vector<int>, 3> qudits;
  for (int q = 0; q < total; ++q) (q < cfg.qudits_a ? qudits[part_a] : qudits[part_b]).push_back(q);
  for (int q = 0; q < total; ++q) qudits[part_ab].push_back(q);

  std::array<std::vector<Eigen::Index>, 3> maps;
  std::array<Eigen::MatrixXd, 3> weights;
  for (std::size_t x = 0; x < 3; ++x) {
    maps[x] = marginal_map(cfg.local_dim, total, qudits[x]);
    weights[x] = hamming_weights(cfg.local_dim, static_cast<int>(qudits[x].size()));
  }

  // Per setting: overlap, purity of ρ, purity of σ for A, B, AB (9 columns).
  std::vector<Eigen::VectorXd> samples;
  samples.reserve(records.size());
  for (const auto& rec : records) {
    const bool exact = rec.shots == 0;
    Eigen::VectorXd fr, fs;
    if (exact) {
      fr = as_vector(rec.prob_rho);
      fs = as_vector(rec.prob_sigma);
    } else {
      if (rec.shots < 2) throw ValidationError("estimate_overlaps: need at least two shots");
      fr = as_vector(rec.counts_rho);
      fs = as_vector(rec.counts_sigma);
    }
    if (fr.size() != outcomes || fs.size() != outcomes)
      throw DimensionError("estimate_overlaps: record does not match the qudit layout");
    Eigen::VectorXd row(9);
    for (std::size_t x = 0; x < 3; ++x) {
      const Eigen::Index nx = weights[x].rows();
      const Eigen::VectorXd a = marginalize(fr, maps[x], nx);
      const Eigen::VectorXd b = marginalize(fs, maps[x], nx);
      const auto& w = weights[x];
      const double dx = w(0, 0);
      if (exact) {
        row(3 * x) = a.dot(w * b);
        row(3 * x + 1) = a.dot(w * a);
        row(3 * x + 2) = b.dot(w * b);
      } else {
        // Independent shot records make the cross term unbiased as a plain product; the
        // within-state terms keep distinct-shot pairs only.
        const double n = double(rec.shots);
        row(3 * x) = a.dot(w * b) / (n * n);
        row(3 * x + 1) = (a.dot(w * a) - dx * a.sum()) / (n * (n - 1));
        row(3 * x + 2) = (b.dot(w * b) - dx * b.sum()) / (n * (n - 1));
      }
    }
    samples.push_back(std::move(row));
  }

  OverlapEstimate est;
  est.settings = static_cast<int>(records.size());
  for (std::size_t x = 0; x < 3; ++x) {
    est.overlap[x] = jackknife(samples, [x](const Eigen::VectorXd& m) { return m(3 * x); });
    est.purity_rho[x] = jackknife(samples, [x](const Eigen::VectorXd& m) { return m(3 * x + 1); });
    est.purity_sigma[x] = jackknife(samples, [x](const Eigen::VectorXd& m) { return m(3 * x + 2); });
  }
  est.reliable_a = est.overlap[part_a].value > cfg.ratio_guard * est.overlap[part_a].se;
  est.reliable_b = est.overlap[part_b].value > cfg.ratio_guard * est.overlap[part_b].se;
  const bool ra = est.reliable_a, rb = est.reliable_b;
  auto sa = [ra](const Eigen::VectorXd& m) { return ra ? m(3 * part_ab) / m(3 * part_a) : 0.0; };
  auto sb = [rb](const Eigen::VectorXd& m) { return rb ? m(3 * part_ab) / m(3 * part_b) : 0.0; };
  est.s_a = jackknife(samples, sa);
  est.s_b = jackknife(samples, sb);
  est.s_hat = jackknife(samples, [&](const Eigen::VectorXd& m) { return std::max(sa(m), sb(m)); });
  return est;
}

SwapEstimate swap_test_overlap(const State& rho, const State& sigma, std::int64_t shots,
                               std::uint64_t seed) {
  if (shots < 1) throw ValidationError("swap_test_overlap: shots must be positive");
  if (rho.side() != sigma.side()) throw DimensionError("swap_test_overlap: dimensions differ");
  SwapEstimate e;
  e.p0 = std::clamp((1.0 + hs_inner(rho.matrix(), sigma.matrix())) / 2.0, 0.0, 1.0);
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::int64_t> draw(shots, e.p0);
  const double f0 = double(draw(rng)) / double(shots);
  e.estimate = 2.0 * f0 - 1.0;
  e.se = 2.0 * std::sqrt(f0 * (1.0 - f0) / double(shots));
  return e;
}

}  // namespace ipc
