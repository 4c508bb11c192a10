#pragma once

// Multipartite overlap criteria: the bipartition scan and the tripartite Λ-map test.

#include <string>
#include <vector>

#include "ipc/criteria.hpp"
#include "ipc/qmat.hpp"

namespace ipc {

struct CutOverlap {
  std::vector<int> kept;    // S, always containing subsystem 0
  double overlap_kept = 0.0;        // <ρ_S, σ_S>
  double overlap_complement = 0.0;  // <ρ_S̄, σ_S̄>
  double min = 0.0;
};

struct MultiVerdict {
  std::vector<CutOverlap> cuts;
  std::size_t minimizing = 0;  // index into cuts
  double global = 0.0;
  double min_over_cuts = 0.0;
  bool detected = false;
};

/// The 2^{n-1} - 1 cuts S|S̄ of n subsystems, S holding subsystem 0. n <= 12.
std::vector<Bipartition> enumerate_bipartitions(std::size_t n);

/// <ρ,σ> against the smallest local overlap over all cuts; detection means neither state is
/// fully separable.
MultiVerdict multipartite_ipc(const State& rho, const State& sigma, const CriteriaConfig& cfg = {});

/// <Λ(ρ), σ> for Λ = Λ^A_{-1/r} ⊗ Λ^B_1 ⊗ id_C on a three-party layout, via
/// <ρ_C,σ_C> + <ρ_BC,σ_BC> - <ρ_AC,σ_AC>/r - <ρ,σ>/r. Real r > 0 is accepted.
double lambda_map_value(const State& rho, const State& sigma, double r);

struct LambdaVerdict {
  int r = 1;
  double value = 0.0;
  bool negative = false;
  /// Largest integer r' for which the value is negative (0 if none), capped at the total
  /// dimension.
  int r_op = 0;
  /// Set when negative: ρ and σ are each either genuinely multipartite entangled, or every
  /// decomposition into cut-product terms has an A|C component with Schmidt number > r.
  bool genuine_or_ac_schmidt_exceeds_r = false;
  std::string conclusion;
};

LambdaVerdict lambda_map_verdict(const State& rho, const State& sigma, int r,
                                 const CriteriaConfig& cfg = {});

}  // namespace ipc
