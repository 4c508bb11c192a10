#pragma once

// Local-unitary optimization of the overlap ratio and the fully entangled fraction.
//
// Every value reported here is a lower bound on the corresponding supremum: the ascent is
// local and multi-start, and global optimality is never claimed.

#include <cstdint>
#include <functional>
#include <vector>

#include "ipc/criteria.hpp"
#include "ipc/qmat.hpp"

namespace ipc {

struct OptConfig {
  int restarts = 8;       // including the identity start
  int max_iters = 500;
  double tol = 1e-9;      // best-value improvement below tol over `patience` iterations stops
  int patience = 50;
  double fd_step = 1e-5;  // central differences
  std::uint64_t seed = 0;
  bool optimize_a = true;
  bool optimize_b = true;
};

/// θ for U(θ) on A and ξ for V(ξ) on B, d² reals each.
struct UnitaryParams {
  Eigen::VectorXd theta;
  Eigen::VectorXd xi;
};

struct OptResult {
  double value = 0.0;
  UnitaryParams params;
  std::vector<double> trajectory;  // best value so far, one entry per iteration
  int restarts_used = 0;
  bool converged = false;
  int sn_bound = 1;
};

/// diag(e^{iφ}) Π_{j<k} G_{jk}(α, β) with d(d-1)/2 angles, d(d-1)/2 phases and d phases.
/// Zero parameters give the identity.
Matrix givens_unitary(int d, const Eigen::VectorXd& params);

inline int givens_param_count(int d) { return d * d; }

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// Central-difference gradient.
Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double step);

/// Quasi-Newton ascent from `start`; the trajectory records the best value per iteration.
OptResult maximize(const Objective& f, const Eigen::VectorXd& start, const OptConfig& cfg);

/// Lower bound on sup over local unitaries of S(U⊗V ρ U†⊗V†, σ). The identity is one of the
/// starts, so the result never falls below overlap_ratio(ρ, σ).s.
OptResult s_hat(const State& rho, const State& sigma, const OptConfig& cfg = {},
                const CriteriaConfig& ccfg = {});

/// Lower bound on max_U <Ψ|(I⊗U†) ρ (I⊗U)|Ψ>; needs equal local dimensions.
OptResult fully_entangled_fraction(const State& rho, const OptConfig& cfg = {});

struct FefIdentityReport {
  double s_hat = 0.0;
  double fef = 0.0;
  double d_times_fef = 0.0;
  double relative_deviation = 0.0;
};

/// Compares ŝ(ρ, |Ψ><Ψ|) (B-side unitary only) with d·F_ρ from an independent optimization.
FefIdentityReport verify_shat_fef_identity(const State& rho, const OptConfig& cfg = {});

}  // namespace ipc
