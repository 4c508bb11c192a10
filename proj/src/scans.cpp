#include "ipc/scans.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "ipc/criteria.hpp"
#include "ipc/json_io.hpp"
#include "ipc/multipartite.hpp"

namespace ipc {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

double golden(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace

Maximum1D maximize_1d(const std::function<double(double)>& f, double lo, double hi, int coarse,
                      double tol) {
  if (coarse < 3) throw ValidationError("maximize_1d: need at least 3 coarse points");
  auto scan = [&](int n, std::vector<double>& vals) {
    vals.resize(n);
    for (int i = 0; i < n; ++i) vals[i] = f(lo + (hi - lo) * i / (n - 1));
    int peaks = 0;
    for (int i = 0; i < n; ++i) {
      const bool left = i == 0 || vals[i] > vals[i - 1];
      const bool right = i == n - 1 || vals[i] >= vals[i + 1];
      if (left && right) ++peaks;
    }
    return peaks;
  };
  std::vector<double> vals;
  int n = coarse;
  Maximum1D res;
  if (scan(n, vals) > 1) {
    res.multimodal = true;
    n = 16 * coarse;
    scan(n, vals);
  }
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (vals[i] > vals[best]) best = i;
  const double step = (hi - lo) / (n - 1);
  const double a = std::max(lo, lo + (best - 1) * step), b = std::min(hi, lo + (best + 1) * step);
  res.arg = golden(f, a, b, tol);
  res.value = f(res.arg);
  const double grid_best = vals[best];
  if (grid_best > res.value) {
    res.arg = lo + best * step;
    res.value = grid_best;
  }
  return res;
}

double bisect(const std::function<bool(double)>& pred, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double first_positive_crossing(const std::function<double(double)>& f, double lo, double hi,
                               int steps, double tol) {
  double prev = lo;
  for (int i = 1; i <= steps; ++i) {
    const double x = lo + (hi - lo) * i / steps;
    if (f(x) > 0.0) {
      if (f(prev) > 0.0) return prev;
      return bisect([&](double t) { return f(t) > 0.0; }, prev, x, tol);
    }
    prev = x;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

// Overlap ratio against a pure probe, with the reduced states of rho computed once.
class PureProbeRatio {
 public:
  explicit PureProbeRatio(const State& rho)
      : rho_(rho),
        a_(partial_trace(rho.matrix(), rho.dims(), Bipartition{{0}})),
        b_(partial_trace(rho.matrix(), rho.dims(), Bipartition{{1}})) {}

  double operator()(const Pure& v) const {
    const double global = v.vec().dot(rho_.matrix() * v.vec()).real();
    const Matrix c = coefficient_matrix(v, Bipartition{{0}});
    const double la = hs_inner(a_, Matrix(c * c.adjoint()));
    const double lb = hs_inner(b_, Matrix((c.adjoint() * c).transpose()));
    return std::max(la != 0.0 ? global / la : 0.0, lb != 0.0 ? global / lb : 0.0);
  }

 private:
  const State& rho_;
  Matrix a_, b_;
};

}  // namespace

Maximum1D example2_best_verifier(int d, double x) {
  const State rho = example2(d, x);
  const PureProbeRatio ratio(rho);
  return maximize_1d([&](double y) { return ratio(theta_state(d, y)); }, 0.0,
                     1.0 / std::sqrt(d - 1.0));
}

Maximum1D example3_best_probe() {
  const State rho = example3_state();
  const PureProbeRatio ratio(rho);
  return maximize_1d([&](double t) { return ratio(example3_probe(t)); }, -1.0 / 3.0, 1.0 / 6.0);
}

Matrix lambda_map_explicit(const State& rho, double r) {
  if (rho.parties() != 3) throw DimensionError("lambda_map_explicit: needs three subsystems");
  const int da = rho.dims()[0], db = rho.dims()[1], dc = rho.dims()[2];
  const Matrix rc = partial_trace(rho.matrix(), rho.dims(), Bipartition{{2}});
  const Matrix rbc = partial_trace(rho.matrix(), rho.dims(), Bipartition{{1, 2}});
  const Matrix rac = partial_trace(rho.matrix(), rho.dims(), Bipartition{{0, 2}});
  Matrix out = -rho.matrix() / r;
  auto idx = [&](int a, int b, int c) { return (a * db + b) * dc + c; };
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int c = 0; c < dc; ++c)
        for (int a2 = 0; a2 < da; ++a2)
          for (int b2 = 0; b2 < db; ++b2)
            for (int c2 = 0; c2 < dc; ++c2) {
              auto& e = out(idx(a, b, c), idx(a2, b2, c2));
              if (a == a2 && b == b2) e += rc(c, c2);
              if (a == a2) e += rbc(b * dc + c, b2 * dc + c2);
              if (b == b2) e -= rac(a * dc + c, a2 * dc + c2) / r;
            }
  return out;
}

double ghz_detection_threshold(int n) {
  const State target = ghz(n, 2).density();
  return bisect(
      [&](double p) { return multipartite_ipc(ghz_noisy(n, 2, p), target).detected; }, 0.0, 1.0,
      1e-9);
}

void write_fig1(std::ostream& out, const Fig1Config& cfg) {
  if (cfg.d < 2) throw ValidationError("fig1: d must be at least 2");
  if (cfg.grid < 2) throw ValidationError("fig1: grid must be at least 2");
  if (cfg.r_max < 1) throw ValidationError("fig1: r-max must be at least 1");
  out << "# fig1 d=" << cfg.d << " grid=" << cfg.grid << " r_max=" << cfg.r_max
      << " x_min=1/d^2 seed=none\n";
  out << "x,y,s_value,max_r_detected\n";
  const double lo = 1.0 / (cfg.d * cfg.d);
  std::vector<State> states;
  std::vector<double> xs;
  for (int i = 0; i < cfg.grid; ++i) {
    xs.push_back(i == cfg.grid - 1 ? 1.0 : lo + (1.0 - lo) * i / (cfg.grid - 1));
    states.push_back(isotropic(cfg.d, xs.back()));
  }
  for (int i = 0; i < cfg.grid; ++i)
    for (int j = 0; j < cfg.grid; ++j) {
      const double s = overlap_ratio(states[i], states[j]).s;
      const int r = std::min(cfg.r_max, sn_bound_from_ratio(s) - 1);
      out << num(xs[i]) << ',' << num(xs[j]) << ',' << num(s) << ',' << r << '\n';
    }
}

std::vector<Fig3aRow> fig3a_rows(const Fig3Config& cfg) {
  if (cfg.d_min < 3 || cfg.d_max < cfg.d_min) throw ValidationError("fig3: need 3 <= d_min <= d_max");
  if (cfg.r_max < 1) throw ValidationError("fig3: r-max must be at least 1");
  std::vector<Fig3aRow> rows;
  for (int d = cfg.d_min; d <= cfg.d_max; ++d)
    for (int r = 1; r <= std::min(cfg.r_max, d - 1); ++r) {
      Fig3aRow row;
      row.d = d;
      row.r = r;
      const double eps = CriteriaConfig{}.epsilon;
      row.x_lower = bisect(
          [&](double x) { return example2_best_verifier(d, x).value > r + eps; }, 0.0, 1.0);
      const double target = double(r) / d;
      row.x_upper = example2_delta(d, 0.0) >= target
                        ? 0.0
                        : bisect([&](double x) { return example2_delta(d, x) > target; }, 0.0, 1.0);
      row.band = row.x_lower < row.x_upper;
      rows.push_back(row);
    }
  return rows;
}

std::vector<Fig3bRow> fig3b_rows(const Fig3Config& cfg) {
  if (cfg.d_min < 3 || cfg.d_max < cfg.d_min) throw ValidationError("fig3: need 3 <= d_min <= d_max");
  if (cfg.grid < 2) throw ValidationError("fig3: grid must be at least 2");
  std::vector<Fig3bRow> rows;
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    Fig3bRow row;
    row.d = d;
    for (int i = 1; i <= cfg.grid; ++i) {
      const double x = double(i) / cfg.grid;
      const State rho = example2(d, x);
      ++row.ipc_scanned;
      if (overlap_ratio(rho, rho).s > 1.0 + CriteriaConfig{}.epsilon ||
          example2_best_verifier(d, x).value > 1.0 + CriteriaConfig{}.epsilon)
        ++row.ipc_detected;
      else if (row.ipc == 0.0)
        row.ipc = x;
    }
    row.p3 = first_positive_crossing([d](double x) { return example2_p3_cubic(d, x); }, 0.0, 1.0);
    row.fbc = double(d - 2) / (d * d - d - 1);
    row.pc = first_positive_crossing([d](double x) { return example2_purity_gap(d, x); }, 0.0, 1.0);
    rows.push_back(row);
  }
  return rows;
}

void write_fig3(std::ostream& panel_a, std::ostream& panel_b, const Fig3Config& cfg) {
  const std::string conf = " d_min=" + std::to_string(cfg.d_min) + " d_max=" +
                           std::to_string(cfg.d_max) + " r_max=" + std::to_string(cfg.r_max) +
                           " grid=" + std::to_string(cfg.grid) + " bisection_tol=1e-8 seed=none\n";
  panel_a << "# fig3a" << conf << "d,r,x_lower,x_upper,band\n";
  for (const auto& r : fig3a_rows(cfg))
    panel_a << r.d << ',' << r.r << ',' << num(r.x_lower) << ',' << num(r.x_upper) << ','
            << (r.band ? 1 : 0) << '\n';
  panel_b << "# fig3b" << conf << "d,ipc,ipc_scanned,ipc_detected,p3_ppt,fbc_psi,purity\n";
  for (const auto& r : fig3b_rows(cfg))
    panel_b << r.d << ',' << num(r.ipc) << ',' << r.ipc_scanned << ',' << r.ipc_detected << ','
            << num(r.p3) << ',' << num(r.fbc) << ',' << num(r.pc) << '\n';
}

std::vector<TightnessRow> rfbc_tightness_rows(int d_min, int d_max, int r_max) {
  if (d_min < 3 || d_max < d_min) throw ValidationError("rfbc-tightness: need 3 <= d_min <= d_max");
  if (r_max < 1) throw ValidationError("rfbc-tightness: r-max must be at least 1");
  std::vector<TightnessRow> rows;
  for (int d = d_min; d <= d_max; ++d)
    for (int r = 1; r <= std::min(r_max, d - 1); ++r) {
      TightnessRow row;
      row.d = d;
      row.r = r;
      const double target = double(r) / d;
      row.x_witness = bisect(
          [&](double x) { return x + (1.0 - x) / (d * (d - 1.0)) > target; }, 0.0, 1.0);
      row.x_spectral = example2_delta(d, 0.0) >= target
                           ? 0.0
                           : bisect([&](double x) { return example2_delta(d, x) > target; }, 0.0, 1.0);
      rows.push_back(row);
    }
  return rows;
}

void write_rfbc_tightness(std::ostream& out, int d_min, int d_max, int r_max) {
  out << "# rfbc-tightness d_min=" << d_min << " d_max=" << d_max << " r_max=" << r_max
      << " bisection_tol=1e-8 seed=none\n";
  out << "d,r,x_witness,x_spectral\n";
  for (const auto& r : rfbc_tightness_rows(d_min, d_max, r_max))
    out << r.d << ',' << r.r << ',' << num(r.x_witness) << ',' << num(r.x_spectral) << '\n';
}

nlohmann::json rm_experiment(const StateSpec& rho_spec, const StateSpec& sigma_spec,
                             const ProtocolConfig& cfg, std::ostream* records) {
  const State rho = build_state(rho_spec);
  const State sigma = build_state(sigma_spec);
  const auto recs = run_protocol(rho, sigma, cfg);
  if (records) write_records(*records, recs);
  const OverlapEstimate est = estimate_overlaps(recs, cfg);
  const OverlapRatio exact = overlap_ratio(rho, sigma);
  nlohmann::json j;
  j["rho"] = rho_spec;
  j["sigma"] = sigma_spec;
  j["protocol"] = cfg;
  j["estimate"] = est;
  j["exact"] = {{"global", exact.global}, {"local_a", exact.local_a}, {"local_b", exact.local_b},
                {"s", exact.s}};
  j["sn_bound_point"] = sn_bound_from_ratio(est.s_hat.value);
  j["sn_bound_2se"] = sn_bound_from_ratio(est.s_hat.value - 2.0 * est.s_hat.se);
  j["caveat"] = "statistical: the bound holds if s_hat is not overestimated; sn_bound_2se "
                "uses s_hat - 2 se";
  return j;
}

ExamplesReport run_examples() {
  ExamplesReport rep;
  auto check = [&](nlohmann::json& block, const std::string& name, bool ok) {
    block["checks"][name] = ok;
    if (!ok) rep.failures.push_back(name);
  };

  {  // isotropic pairs
    nlohmann::json b;
    double worst = 0.0;
    for (int d = 2; d <= 10; ++d)
      for (int i = 0; i < 20; ++i) {
        const double x = 1.0 / (d * d) + (1.0 - 1.0 / (d * d)) * i / 19.0;
        worst = std::max(worst, std::abs(overlap_ratio(isotropic(d, x), isotropic(d, 1.0)).s - d * x));
      }
    b["max_abs_error_s_minus_dx"] = worst;
    check(b, "example1: s = d x", worst <= 1e-9);
    rep.report["example1"] = b;
  }
  {  // d x d family closed forms
    nlohmann::json b;
    double worst = 0.0;
    for (int d = 3; d <= 6; ++d)
      for (double x : {0.1, 0.5, 0.9}) {
        const State rho = example2(d, x);
        const auto cf = example2_closed_forms(d, x);
        const auto pm = pt_moments(rho, 3);
        worst = std::max({worst, std::abs(eigenvalues_max(rho.matrix()) - cf.delta),
                          std::abs(pm[1] * pm[1] - pm[2] - cf.p2sq_minus_p3),
                          std::abs(rho.purity() - cf.purity_global)});
      }
    b["max_abs_error_closed_forms"] = worst;
    check(b, "example2: closed forms", worst <= 1e-9);
    rep.report["example2"] = b;
  }
  {  // 4x4 example
    nlohmann::json b;
    const auto m = example3_best_probe();
    const State rho = example3_state();
    const bool unfaithful = fbc_spectrum_bound(rho, 2);
    const int sn_lower = sn_bound_from_ratio(m.value);
    b["max_ratio"] = m.value;
    b["argmax"] = m.arg;
    b["sn_lower_bound"] = sn_lower;
    b["sn_upper_bound_from_decomposition"] = 3;
    b["rank2_witnesses_fail"] = unfaithful;
    check(b, "example3: max ratio 12/5", std::abs(m.value - 12.0 / 5.0) <= 1e-8);
    check(b, "example3: argmax 7/54", std::abs(m.arg - 7.0 / 54.0) <= 1e-6);
    check(b, "example3: SN = 3 and no 2-witness detects", sn_lower == 3 && unfaithful);
    rep.report["example3"] = b;
  }
  {  // noisy GHZ thresholds
    nlohmann::json b;
    for (int n = 3; n <= 5; ++n) {
      const double p = ghz_detection_threshold(n);
      const double expect = 1.0 / ((1 << (n - 1)) + 1);
      b["threshold_n" + std::to_string(n)] = p;
      check(b, "example4: n=" + std::to_string(n) + " threshold", std::abs(p - expect) <= 1e-6);
    }
    rep.report["example4"] = b;
  }
  {  // Λ map on noisy 3-qudit GHZ
    nlohmann::json b, rows = nlohmann::json::array();
    for (int d = 2; d <= 4; ++d)
      for (double p : {0.5, 0.8, 0.95, 1.0}) {
        const State rho = ghz_noisy(3, d, p);
        const State sigma = ghz(3, d).density();
        const double bound = (d + 1.0) / ((1.0 - p) / p * d + 2.0);
        const int r_stated = static_cast<int>(std::ceil(bound)) - 1;
        const auto v = lambda_map_verdict(rho, sigma, std::max(1, r_stated));
        double map_err = 0.0;
        for (int r = 1; r <= 3; ++r)
          map_err = std::max(map_err, std::abs(lambda_map_value(rho, sigma, r) -
                                               hs_inner(lambda_map_explicit(rho, r), sigma.matrix())));
        const double stated_value = p * (2.0 / d - (1.0 / d + 1.0)) + (1.0 - p);
        rows.push_back({{"d", d}, {"p", p}, {"r_op_stated", r_stated}, {"r_op", v.r_op},
                        {"closed_vs_explicit", map_err},
                        {"value_r1", lambda_map_value(rho, sigma, 1.0)},
                        {"stated_value_r1", stated_value}});
        const std::string tag = "d=" + std::to_string(d) + " p=" + num(p);
        check(b, "example5: closed form vs explicit map " + tag, map_err <= 1e-9);
        check(b, "example5: r_op >= stated r_op " + tag, v.r_op >= r_stated);
      }
    b["rows"] = rows;
    b["note"] = "stated_value_r1 is p(2/d - (1/d+1)) + (1-p); it agrees with value_r1 only at "
                "p = 1, and the exact value is never larger, so the stated r_op remains valid";
    rep.report["example5"] = b;
  }
  rep.report["failures"] = rep.failures;
  rep.report["ok"] = rep.ok();
  return rep;
}

}  // namespace ipc
