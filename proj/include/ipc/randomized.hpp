#pragma once

// Simulated local randomized measurements on two states under identical settings, and the
// cross-correlation estimator of global and local state overlaps.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ipc/qmat.hpp"

namespace ipc {

enum class Design { haar, clifford };

struct ProtocolConfig {
  int local_dim = 2;            // ℓ
  int qudits_a = 1;             // m
  int qudits_b = 1;             // n
  int n_unitaries = 100;
  std::optional<std::int64_t> shots;  // empty: exact outcome probabilities
  std::uint64_t seed = 0;
  Design design = Design::haar;
  /// A local overlap counts as reliable only when it exceeds this many standard errors.
  double ratio_guard = 10.0;

  int total_qudits() const { return qudits_a + qudits_b; }
  bool exact() const { return !shots.has_value(); }
  void validate() const;
};

struct MeasurementRecord {
  int setting = 0;
  std::vector<Matrix> unitaries;     // one per qudit, A's qudits first
  std::vector<double> prob_rho;      // exact mode
  std::vector<double> prob_sigma;
  std::vector<std::int64_t> counts_rho;  // finite-shot mode, dense over outcomes
  std::vector<std::int64_t> counts_sigma;
  std::int64_t shots = 0;            // 0 in exact mode
};

struct Estimate {
  double value = 0.0;
  double se = 0.0;  // jackknife over settings
};

/// Index order for per-subsystem arrays below.
enum Part : std::size_t { part_a = 0, part_b = 1, part_ab = 2 };

struct OverlapEstimate {
  std::array<Estimate, 3> overlap;       // Tr[ρ_X σ_X]
  std::array<Estimate, 3> purity_rho;    // Tr[ρ_X²]
  std::array<Estimate, 3> purity_sigma;  // Tr[σ_X²]
  Estimate s_a, s_b, s_hat;
  bool reliable_a = true;
  bool reliable_b = true;
  int settings = 0;
};

/// Single-qudit unitary from a 2-design: Haar, or uniform over the 24 single-qubit Cliffords.
Matrix sample_local_unitary(int local_dim, Design design, std::mt19937_64& rng);

/// The single-qubit Clifford group modulo global phase.
const std::vector<Matrix>& clifford_group();

std::vector<MeasurementRecord> run_protocol(const State& rho, const State& sigma,
                                            const ProtocolConfig& cfg);

/// One setting, drawn from the stream `split_seed(cfg.seed, setting)`.
MeasurementRecord run_setting(const State& rho, const State& sigma, const ProtocolConfig& cfg,
                              int setting);

OverlapEstimate estimate_overlaps(const std::vector<MeasurementRecord>& records,
                                  const ProtocolConfig& cfg);

/// Weights d_X (-ℓ)^{-D(s,t)} of the cross-correlation estimator on `qudits` qudits.
Eigen::MatrixXd hamming_weights(int local_dim, int qudits);

struct SwapEstimate {
  double p0 = 0.0;        // exact ancilla probability of outcome 0
  double estimate = 0.0;  // 2 f0 - 1
  double se = 0.0;
};

/// Swap test with an ancilla: P(0) = (1 + Tr ρσ)/2, sampled over `shots` Bernoulli draws.
SwapEstimate swap_test_overlap(const State& rho, const State& sigma, std::int64_t shots,
                               std::uint64_t seed);

}  // namespace ipc
