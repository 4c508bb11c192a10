#pragma once

// Bipartite detection criteria: the inner-product criterion (global vs local state overlap),
// r-reduction, purity, fidelity-based witnesses with the spectral bound, and the p3-PPT
// moment test.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipc/qmat.hpp"

namespace ipc {

struct CriteriaConfig {
  /// Margin by which a strict inequality must be violated.
  double epsilon = 1e-9;
};

struct CriterionVerdict {
  std::string criterion;
  std::map<std::string, double> values;
  double threshold = 0.0;
  bool detected = false;
  int sn_bound = 1;
  std::string detail;
};

/// Global and local overlaps of a pair of bipartite states and the ratios between them.
struct OverlapRatio {
  double global = 0.0;
  double local_a = 0.0;
  double local_b = 0.0;
  double s_a = 0.0;  // global / local_a, or 0 when local_a vanishes
  double s_b = 0.0;
  double s = 0.0;    // max(s_a, s_b)
};

/// max(1, ⌈s - ε⌉).
int sn_bound_from_ratio(double s, double epsilon = CriteriaConfig{}.epsilon);

OverlapRatio overlap_ratio(const State& rho, const State& sigma);

/// Schmidt-number lower bound certified for both states by their overlap ratio.
CriterionVerdict ipc_bound(const State& rho, const State& sigma, const CriteriaConfig& cfg = {});

/// Side of a violated reduction operator.
enum class ReductionSide {
  a,  // r ρ_A ⊗ I_B - ρ
  b,  // r I_A ⊗ ρ_B - ρ
};

/// Positivity of r I_A⊗ρ_B - ρ and r ρ_A⊗I_B - ρ. Reports the more negative side.
CriterionVerdict reduction_check(const State& rho, int r, const CriteriaConfig& cfg = {});

/// The two reduction operators, indexed by side.
Matrix reduction_operator(const State& rho, int r, ReductionSide side);

/// Projector onto the most negative eigenvector of the violated reduction operator, if any.
/// Its overlap ratio with `rho` exceeds r.
std::optional<State> extract_ipc_witness(const State& rho, int r, const CriteriaConfig& cfg = {});

/// Tr ρ² > min(Tr ρ_A², Tr ρ_B²), with the Rényi-gap Schmidt bound ⌈2^{Δ_X} - ε⌉.
CriterionVerdict purity_check(const State& rho, const CriteriaConfig& cfg = {});

/// Tr[ρ W] for W = (Σ_{k<=r} λ_k) I - |Φ><Φ|. Throws InvalidWitness when Φ has rank below r.
CriterionVerdict fbc_witness_value(const State& rho, const Pure& phi, int r,
                                   const CriteriaConfig& cfg = {});

/// λ_max(ρ) <= max(r/d_A, r/d_B): no r-fidelity witness can detect ρ.
bool fbc_spectrum_bound(const State& rho, int r, const CriteriaConfig& cfg = {});

/// p_1..p_kmax with p_k = Tr[(ρ^{T_A})^k].
std::vector<double> pt_moments(const State& rho, int k_max);

CriterionVerdict p3_ppt_check(const State& rho, const CriteriaConfig& cfg = {});

/// Closed forms for the d x d family (1-x) I_{(d-1)²}/(d-1)² + x|Ψ><Ψ|.
struct Example2ClosedForms {
  double delta = 0.0;             // largest eigenvalue
  double p2sq_minus_p3 = 0.0;
  double purity_global = 0.0;
  double purity_local = 0.0;
  double fbc_psi_fidelity = 0.0;  // <Ψ|ρ|Ψ>
  double fbc_psi_threshold = 0.0; // (d-2)/(d²-d-1)
};

Example2ClosedForms example2_closed_forms(int d, double x);

/// (m + nd + √((m+nd)² - 4mn))/2 with m = (1-x)/(d-1)², n = x/d.
double example2_delta(int d, double x);

/// Bracketed cubic whose sign decides p3-PPT detection for the family.
double example2_p3_cubic(int d, double x);

/// Tr ρ² - Tr ρ_A² for the family; positive iff the purity criterion detects.
double example2_purity_gap(int d, double x);

/// <Ψ|ρ|Ψ> - r/d for the family; positive iff the witness built on |Ψ> detects at level r.
double example2_psi_witness_gap(int d, double x, int r);

}  // namespace ipc
