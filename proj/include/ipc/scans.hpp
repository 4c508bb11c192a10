#pragma once

// Figure scans and worked-example checks driven by the command-line tool.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ipc/randomized.hpp"
#include "ipc/states.hpp"

namespace ipc {

struct Maximum1D {
  double arg = 0.0;
  double value = 0.0;
  bool multimodal = false;  // the coarse pre-scan saw more than one local maximum
};

/// Coarse pre-scan, then golden-section search around the best bracket. When the pre-scan
/// finds several local maxima, the scan is repeated on a 16x denser grid first.
Maximum1D maximize_1d(const std::function<double(double)>& f, double lo, double hi,
                      int coarse = 64, double tol = 1e-11);

/// Boundary of a predicate that is false at lo and true at hi, to absolute tolerance tol.
double bisect(const std::function<bool(double)>& pred, double lo, double hi, double tol = 1e-8);

/// First root in (lo, hi] where f turns from <= 0 to > 0, located on `steps` samples and
/// refined by bisection; NaN when f never turns positive.
double first_positive_crossing(const std::function<double(double)>& f, double lo, double hi,
                               int steps = 2000, double tol = 1e-12);

/// max over y of the overlap ratio between example2(d, x) and the theta state of parameter y.
Maximum1D example2_best_verifier(int d, double x);

/// max over t of the overlap ratio between the 4x4 example state and its probe family.
Maximum1D example3_best_probe();

/// Λ(ρ) = I_AB⊗ρ_C + I_A⊗ρ_BC - (1/r)(ρ_AC with I_B inserted) - ρ/r, built as a matrix.
Matrix lambda_map_explicit(const State& rho, double r);

/// Smallest p at which noisy GHZ(n, 2) is detected against pure GHZ by the bipartition scan.
double ghz_detection_threshold(int n);

struct Fig1Config {
  int d = 3;
  int grid = 50;
  int r_max = 10;
};
void write_fig1(std::ostream& out, const Fig1Config& cfg);

struct Fig3Config {
  int d_min = 3;
  int d_max = 10;
  int r_max = 4;
  int grid = 50;
};

struct Fig3aRow {
  int d = 0, r = 0;
  double x_lower = 0.0;  // IPC with the best theta verifier certifies SN > r above this
  double x_upper = 0.0;  // spectral unfaithfulness bound holds up to this
  bool band = false;     // x_lower < x_upper
};
std::vector<Fig3aRow> fig3a_rows(const Fig3Config& cfg);

struct Fig3bRow {
  int d = 0;
  double ipc = 0.0;  // smallest scanned x > 0 that is missed, or 0 when every x > 0 is detected
  int ipc_scanned = 0;
  int ipc_detected = 0;
  double p3 = 0.0;
  double fbc = 0.0;
  double pc = 0.0;
};
std::vector<Fig3bRow> fig3b_rows(const Fig3Config& cfg);

void write_fig3(std::ostream& panel_a, std::ostream& panel_b, const Fig3Config& cfg);

struct TightnessRow {
  int d = 0, r = 0;
  double x_witness = 0.0;   // x + (1-x)/(d(d-1)) = r/d
  double x_spectral = 0.0;  // largest eigenvalue = r/d
};
std::vector<TightnessRow> rfbc_tightness_rows(int d_min, int d_max, int r_max);
void write_rfbc_tightness(std::ostream& out, int d_min, int d_max, int r_max);

/// Full randomized-measurement pipeline. Records go to `records` when non-null.
nlohmann::json rm_experiment(const StateSpec& rho, const StateSpec& sigma,
                             const ProtocolConfig& cfg, std::ostream* records);

struct ExamplesReport {
  nlohmann::json report;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
ExamplesReport run_examples();

}  // namespace ipc
