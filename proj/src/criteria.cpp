#include "ipc/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ipc {

namespace {

void require_bipartite(const State& s, const char* who) {
  if (s.parties() != 2)
    throw DimensionError(std::string(who) + ": expected a bipartite state, got dims " +
                         dims_string(s.dims()));
}

const Bipartition kA{{0}};
const Bipartition kB{{1}};

double ratio(double num, double den) { return den != 0.0 ? num / den : 0.0; }

}  // namespace

int sn_bound_from_ratio(double s, double epsilon) {
  return std::max(1, static_cast<int>(std::ceil(s - epsilon)));
}

OverlapRatio overlap_ratio(const State& rho, const State& sigma) {
  require_bipartite(rho, "overlap_ratio");
  if (rho.dims() != sigma.dims())
    throw DimensionError("overlap_ratio: dims " + dims_string(rho.dims()) + " and " +
                         dims_string(sigma.dims()) + " differ");
  OverlapRatio o;
  o.global = hs_inner(rho.matrix(), sigma.matrix());
  o.local_a = hs_inner(partial_trace(rho.matrix(), rho.dims(), kA),
                       partial_trace(sigma.matrix(), sigma.dims(), kA));
  o.local_b = hs_inner(partial_trace(rho.matrix(), rho.dims(), kB),
                       partial_trace(sigma.matrix(), sigma.dims(), kB));
  o.s_a = ratio(o.global, o.local_a);
  o.s_b = ratio(o.global, o.local_b);
  o.s = std::max(o.s_a, o.s_b);
  return o;
}

CriterionVerdict ipc_bound(const State& rho, const State& sigma, const CriteriaConfig& cfg) {
  const OverlapRatio o = overlap_ratio(rho, sigma);
  CriterionVerdict v;
  v.criterion = "ipc";
  v.values = {{"global", o.global}, {"local_a", o.local_a}, {"local_b", o.local_b},
              {"s_a", o.s_a},       {"s_b", o.s_b},         {"s", o.s}};
  v.threshold = 1.0;
  v.sn_bound = sn_bound_from_ratio(o.s, cfg.epsilon);
  v.detected = v.sn_bound >= 2;
  return v;
}

Matrix reduction_operator(const State& rho, int r, ReductionSide side) {
  require_bipartite(rho, "reduction_operator");
  const int da = rho.dims()[0], db = rho.dims()[1];
  const Matrix& m = rho.matrix();
  if (side == ReductionSide::b) {
    const Matrix rb = partial_trace(m, rho.dims(), kB);
    return double(r) * Eigen::kroneckerProduct(Matrix::Identity(da, da), rb).eval() - m;
  }
  const Matrix ra = partial_trace(m, rho.dims(), kA);
  return double(r) * Eigen::kroneckerProduct(ra, Matrix::Identity(db, db)).eval() - m;
}

namespace {

struct ReductionSpectra {
  EigenDecomp<double> a, b;
  ReductionSide worst() const { return a.values(0) <= b.values(0) ? ReductionSide::a : ReductionSide::b; }
  const EigenDecomp<double>& of(ReductionSide s) const { return s == ReductionSide::a ? a : b; }
};

ReductionSpectra reduction_spectra(const State& rho, int r) {
  if (r < 1) throw ValidationError("reduction_check: r must be at least 1");
  return {eig_hermitian(reduction_operator(rho, r, ReductionSide::a)),
          eig_hermitian(reduction_operator(rho, r, ReductionSide::b))};
}

}  // namespace

CriterionVerdict reduction_check(const State& rho, int r, const CriteriaConfig& cfg) {
  const ReductionSpectra sp = reduction_spectra(rho, r);
  const ReductionSide side = sp.worst();
  const double lmin = sp.of(side).values(0);
  CriterionVerdict v;
  v.criterion = "reduction";
  v.values = {{"r", double(r)},
              {"min_eig_a", sp.a.values(0)},
              {"min_eig_b", sp.b.values(0)},
              {"min_eig", lmin}};
  v.threshold = 0.0;
  v.detected = lmin < -cfg.epsilon;
  v.sn_bound = v.detected ? r + 1 : 1;
  v.detail = side == ReductionSide::a ? "side=A" : "side=B";
  return v;
}

std::optional<State> extract_ipc_witness(const State& rho, int r, const CriteriaConfig& cfg) {
  const ReductionSpectra sp = reduction_spectra(rho, r);
  const auto& e = sp.of(sp.worst());
  if (!(e.values(0) < -cfg.epsilon)) return std::nullopt;
  // Column 0 is the most negative eigenvector; ties resolve to the solver's lowest index.
  const Vector psi = e.vectors.col(0).normalized();
  return State(rho.dims(), psi * psi.adjoint());
}

CriterionVerdict purity_check(const State& rho, const CriteriaConfig& cfg) {
  require_bipartite(rho, "purity_check");
  const double p = rho.purity();
  const Matrix ra = partial_trace(rho.matrix(), rho.dims(), kA);
  const Matrix rb = partial_trace(rho.matrix(), rho.dims(), kB);
  const double pa = hs_inner(ra, ra), pb = hs_inner(rb, rb);
  // Δ_X = S₂(ρ_X) - S₂(ρ) = log2(Tr ρ² / Tr ρ_X²)
  const double gap_a = std::log2(p / pa), gap_b = std::log2(p / pb);
  CriterionVerdict v;
  v.criterion = "purity";
  v.values = {{"purity", p}, {"purity_a", pa}, {"purity_b", pb},
              {"renyi_gap_a", gap_a}, {"renyi_gap_b", gap_b}};
  v.threshold = std::min(pa, pb);
  v.detected = p > v.threshold + cfg.epsilon;
  v.sn_bound = std::max(sn_bound_from_ratio(std::exp2(gap_a), cfg.epsilon),
                        sn_bound_from_ratio(std::exp2(gap_b), cfg.epsilon));
  return v;
}

CriterionVerdict fbc_witness_value(const State& rho, const Pure& phi, int r,
                                   const CriteriaConfig& cfg) {
  require_bipartite(rho, "fbc_witness_value");
  if (phi.dims() != rho.dims()) throw DimensionError("fbc_witness_value: witness dims differ");
  if (r < 1) throw ValidationError("fbc_witness_value: r must be at least 1");
  const Schmidt sd = schmidt_decompose(phi);
  if (sd.rank() < static_cast<std::size_t>(r))
    throw InvalidWitness("fbc_witness_value: witness Schmidt rank " + std::to_string(sd.rank()) +
                         " is below r = " + std::to_string(r));
  const double top = std::accumulate(sd.coeffs.begin(), sd.coeffs.begin() + r, 0.0);
  const double fid = (phi.vec().adjoint() * rho.matrix() * phi.vec())(0, 0).real();
  CriterionVerdict v;
  v.criterion = "fbc";
  v.values = {{"r", double(r)}, {"top_r_weight", top}, {"fidelity", fid}, {"value", top - fid}};
  v.threshold = 0.0;
  v.detected = top - fid < -cfg.epsilon;
  v.sn_bound = v.detected ? r + 1 : 1;
  return v;
}

bool fbc_spectrum_bound(const State& rho, int r, const CriteriaConfig& cfg) {
  require_bipartite(rho, "fbc_spectrum_bound");
  const double lmax = eigenvalues_max(rho.matrix());
  const double bound = std::max(double(r) / rho.dims()[0], double(r) / rho.dims()[1]);
  return lmax <= bound + cfg.epsilon;
}

std::vector<double> pt_moments(const State& rho, int k_max) {
  require_bipartite(rho, "pt_moments");
  if (k_max < 2) throw ValidationError("pt_moments: k_max must be at least 2");
  const auto ev = eig_hermitian(partial_transpose(rho, kA)).values;
  std::vector<double> p(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) p[k - 1] = ev.array().pow(k).sum();
  return p;
}

CriterionVerdict p3_ppt_check(const State& rho, const CriteriaConfig& cfg) {
  const auto p = pt_moments(rho, 3);
  CriterionVerdict v;
  v.criterion = "p3_ppt";
  v.values = {{"p2", p[1]}, {"p3", p[2]}, {"p2sq_minus_p3", p[1] * p[1] - p[2]}};
  v.threshold = p[2];
  v.detected = p[1] * p[1] > p[2] + cfg.epsilon;
  v.sn_bound = v.detected ? 2 : 1;
  return v;
}

double example2_delta(int d, double x) {
  const double m = (1.0 - x) / ((d - 1.0) * (d - 1.0));
  const double n = x / d;
  const double b = m + n * d;
  return (b + std::sqrt(std::max(0.0, b * b - 4.0 * m * n))) / 2.0;
}

double example2_p3_cubic(int d, double x) {
  const double dd = d;
  const double c3 = std::pow(dd * dd * dd - 2 * dd * dd + 2, 2);
  const double c2 = 2 * std::pow(dd, 4) - 12 * dd * dd * dd + 18 * dd * dd - 5 * dd - 6;
  const double c1 = -std::pow(dd, 4) + 8 * dd * dd * dd - 15 * dd * dd + 10 * dd + 1;
  return ((c3 * x + c2) * x + c1) * x - dd;
}

namespace {

double example2_purity_global(int d, double x) {
  const double dm = d - 1.0;
  return (1 - x) * (1 - x) / (dm * dm) + x * x + 2 * (1 - x) * x / (dm * d);
}

double example2_purity_local(int d, double x) {
  const double dm = d - 1.0;
  return (1 - x) * (1 - x) / dm + x * x / d + 2 * (1 - x) * x / d;
}

}  // namespace

double example2_purity_gap(int d, double x) {
  return example2_purity_global(d, x) - example2_purity_local(d, x);
}

double example2_psi_witness_gap(int d, double x, int r) {
  return x + (1.0 - x) / (double(d) * (d - 1.0)) - double(r) / d;
}

Example2ClosedForms example2_closed_forms(int d, double x) {
  if (d < 3) throw DimensionError("example2_closed_forms: d must be at least 3");
  if (x < 0.0 || x > 1.0) throw ValidationError("example2_closed_forms: x must lie in [0, 1]");
  const double dd = d;
  Example2ClosedForms c;
  c.delta = example2_delta(d, x);
  c.p2sq_minus_p3 = x / (std::pow(dd - 1, 4) * dd * dd) * example2_p3_cubic(d, x);
  c.purity_global = example2_purity_global(d, x);
  c.purity_local = example2_purity_local(d, x);
  c.fbc_psi_fidelity = (1.0 - x) / (dd * (dd - 1)) + x;
  c.fbc_psi_threshold = (dd - 2) / (dd * dd - dd - 1);
  return c;
}

}  // namespace ipc
