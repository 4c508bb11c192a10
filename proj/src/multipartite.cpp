#include "ipc/multipartite.hpp"

#include <cmath>

namespace ipc {

namespace {

double reduced_overlap(const State& rho, const State& sigma, const std::vector<int>& kept) {
  const Bipartition part{kept};
  return hs_inner(partial_trace(rho.matrix(), rho.dims(), part),
                  partial_trace(sigma.matrix(), sigma.dims(), part));
}

void require_three(const State& rho, const State& sigma) {
  if (rho.parties() != 3)
    throw DimensionError("lambda map: expected three subsystems, got " + dims_string(rho.dims()));
  if (rho.dims() != sigma.dims()) throw DimensionError("lambda map: state dims differ");
}

}  // namespace

std::vector<Bipartition> enumerate_bipartitions(std::size_t n) {
  if (n < 2) throw DimensionError("enumerate_bipartitions: need at least two subsystems");
  if (n > 12) throw DimensionError("enumerate_bipartitions: exhaustive scan limited to 12 subsystems");
  std::vector<Bipartition> out;
  const unsigned rest = static_cast<unsigned>(n - 1);
  // Bit i of mask puts subsystem i+1 on the side of subsystem 0; the all-ones mask is not a cut.
  for (unsigned mask = 0; mask + 1 < (1u << rest); ++mask) {
    Bipartition b{{0}};
    for (unsigned i = 0; i < rest; ++i)
      if (mask & (1u << i)) b.kept.push_back(static_cast<int>(i + 1));
    out.push_back(std::move(b));
  }
  return out;
}

MultiVerdict multipartite_ipc(const State& rho, const State& sigma, const CriteriaConfig& cfg) {
  if (rho.parties() < 3)
    throw DimensionError("multipartite_ipc: needs at least three subsystems; use ipc_bound");
  if (rho.dims() != sigma.dims()) throw DimensionError("multipartite_ipc: state dims differ");
  MultiVerdict v;
  v.global = hs_inner(rho.matrix(), sigma.matrix());
  const auto cuts = enumerate_bipartitions(rho.parties());
  for (const auto& b : cuts) {
    CutOverlap c;
    c.kept = b.kept;
    c.overlap_kept = reduced_overlap(rho, sigma, b.kept);
    c.overlap_complement = reduced_overlap(rho, sigma, b.complement(rho.parties()));
    c.min = std::min(c.overlap_kept, c.overlap_complement);
    if (v.cuts.empty() || c.min < v.cuts[v.minimizing].min) v.minimizing = v.cuts.size();
    v.cuts.push_back(std::move(c));
  }
  v.min_over_cuts = v.cuts[v.minimizing].min;
  v.detected = v.global > v.min_over_cuts + cfg.epsilon;
  return v;
}

double lambda_map_value(const State& rho, const State& sigma, double r) {
  require_three(rho, sigma);
  if (!(r > 0.0)) throw ValidationError("lambda_map_value: r must be positive");
  const double c = reduced_overlap(rho, sigma, {2});
  const double bc = reduced_overlap(rho, sigma, {1, 2});
  const double ac = reduced_overlap(rho, sigma, {0, 2});
  const double all = hs_inner(rho.matrix(), sigma.matrix());
  return c + bc - (ac + all) / r;
}

LambdaVerdict lambda_map_verdict(const State& rho, const State& sigma, int r,
                                 const CriteriaConfig& cfg) {
  require_three(rho, sigma);
  if (r < 1) throw ValidationError("lambda_map_verdict: r must be at least 1");
  const double pos = reduced_overlap(rho, sigma, {2}) + reduced_overlap(rho, sigma, {1, 2});
  const double neg = reduced_overlap(rho, sigma, {0, 2}) + hs_inner(rho.matrix(), sigma.matrix());
  auto value = [&](int k) { return pos - neg / double(k); };

  LambdaVerdict v;
  v.r = r;
  v.value = value(r);
  v.negative = v.value < -cfg.epsilon;
  // The value is nondecreasing in r, so the negative range is an initial segment.
  const int cap = static_cast<int>(rho.side());
  while (v.r_op < cap && value(v.r_op + 1) < -cfg.epsilon) ++v.r_op;
  v.genuine_or_ac_schmidt_exceeds_r = v.negative;
  if (v.negative)
    v.conclusion = "each of rho and sigma is genuinely multipartite entangled, or every "
                   "cut-product decomposition of it has an A|C component with Schmidt number > " +
                   std::to_string(r);
  else
    v.conclusion = "no conclusion";
  return v;
}

}  // namespace ipc
