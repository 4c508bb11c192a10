// Command-line front end: figure data, worked examples and the randomized-measurement run.
//
// Exit codes: 0 success, 1 a worked-example check failed, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "ipc/errors.hpp"
#include "ipc/json_io.hpp"
#include "ipc/scans.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "-" is standard output.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw UsageError("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

ipc::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return ipc::json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schmidt-number certification via state overlaps: figure scans, worked examples "
               "and simulated randomized measurements."};
  app.require_subcommand(1);

  std::string out = "-";

  ipc::Fig1Config f1;
  auto* fig1 = app.add_subcommand(
      "fig1",
      "Isotropic-pair scan. CSV columns: x, y (isotropic fidelities, grid over [1/d^2, 1]), "
      "s_value (overlap ratio), max_r_detected (largest r with s > r, capped at --r-max).");
  fig1->add_option("--d", f1.d, "local dimension")->check(CLI::Range(2, 64));
  fig1->add_option("--grid", f1.grid, "points per axis")->check(CLI::Range(2, 100000));
  fig1->add_option("--r-max", f1.r_max, "cap on reported r")->check(CLI::Range(1, 1 << 20));
  fig1->add_option("--out", out, "output CSV, - for stdout");

  ipc::Fig3Config f3;
  int d_fixed = 0;
  std::string out_b;
  auto* fig3 = app.add_subcommand(
      "fig3",
      "d x d family boundaries. Panel a CSV: d, r, x_lower (best theta verifier certifies SN > r "
      "above), x_upper (spectral bound: no rank-r fidelity witness detects below), band (1 if "
      "x_lower < x_upper). Panel b CSV: d, ipc (first scanned x > 0 missed, 0 if none), "
      "ipc_scanned, ipc_detected, p3_ppt, fbc_psi, purity (detection onsets in x).");
  fig3->add_option("--d", d_fixed, "single dimension (overrides --d-min/--d-max)");
  fig3->add_option("--d-min", f3.d_min)->check(CLI::Range(3, 64));
  fig3->add_option("--d-max", f3.d_max)->check(CLI::Range(3, 64));
  fig3->add_option("--r-max", f3.r_max)->check(CLI::Range(1, 64));
  fig3->add_option("--grid", f3.grid, "x samples for the panel b IPC scan")
      ->check(CLI::Range(2, 100000));
  fig3->add_option("--out", out, "panel a CSV, - for stdout");
  fig3->add_option("--out-b", out_b, "panel b CSV (default: <out> with .b.csv)");

  int t_dmin = 3, t_dmax = 10, t_rmax = 9, t_d = 0;
  auto* tight = app.add_subcommand(
      "rfbc-tightness",
      "Unfaithfulness boundaries. CSV columns: d, r, x_witness (x where the |Psi> witness "
      "stops detecting at level r), x_spectral (x where the largest eigenvalue reaches r/d).");
  tight->add_option("--d", t_d, "single dimension");
  tight->add_option("--d-min", t_dmin)->check(CLI::Range(3, 64));
  tight->add_option("--d-max", t_dmax)->check(CLI::Range(3, 64));
  tight->add_option("--r-max", t_rmax)->check(CLI::Range(1, 64));
  tight->add_option("--out", out, "output CSV, - for stdout");

  std::string config, records;
  std::int64_t shots = 0;
  int settings = 0;
  bool exact = false;
  std::uint64_t seed = 0;
  auto* rm = app.add_subcommand(
      "rm-experiment",
      "Randomized-measurement run. --config is JSON {\"rho\": spec, \"sigma\": spec, "
      "\"protocol\": {...}} where spec is {family, params, seed}. Writes a JSON report and a "
      "JSON-lines record file.");
  rm->add_option("--config", config, "experiment JSON")->required();
  auto* shots_opt = rm->add_option("--shots", shots, "shots per setting")->check(CLI::PositiveNumber);
  auto* settings_opt = rm->add_option("--settings", settings, "number of settings")
                           ->check(CLI::Range(2, 1 << 30));
  auto* exact_flag = rm->add_flag("--exact", exact, "use exact outcome probabilities");
  shots_opt->excludes(exact_flag);
  auto* seed_opt = rm->add_option("--seed", seed, "protocol seed");
  rm->add_option("--out", out, "report JSON, - for stdout");
  rm->add_option("--records", records, "records file (default: <out>.records.jsonl)");

  auto* ex = app.add_subcommand("examples", "Run the worked examples; JSON report. Exit 1 on mismatch.");
  ex->add_option("--out", out, "report JSON, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fig1) {
      Output o(out);
      ipc::write_fig1(o.stream(), f1);
    } else if (*fig3) {
      if (d_fixed) f3.d_min = f3.d_max = d_fixed;
      if (out_b.empty()) {
        if (out == "-") throw UsageError("fig3 needs --out-b when panel a goes to stdout");
        out_b = out + ".b.csv";
      }
      Output a(out), b(out_b);
      ipc::write_fig3(a.stream(), b.stream(), f3);
    } else if (*tight) {
      if (t_d) t_dmin = t_dmax = t_d;
      Output o(out);
      ipc::write_rfbc_tightness(o.stream(), t_dmin, t_dmax, t_rmax);
    } else if (*rm) {
      const ipc::json j = read_json(config);
      const auto rho = j.at("rho").get<ipc::StateSpec>();
      const auto sigma = j.at("sigma").get<ipc::StateSpec>();
      auto cfg = j.value("protocol", ipc::json::object()).get<ipc::ProtocolConfig>();
      if (*shots_opt) cfg.shots = shots;
      if (exact) cfg.shots.reset();
      if (*settings_opt) cfg.n_unitaries = settings;
      if (*seed_opt) cfg.seed = seed;
      cfg.validate();
      if (records.empty()) {
        if (out == "-") throw UsageError("rm-experiment needs --records when the report goes to stdout");
        records = out + ".records.jsonl";
      }
      Output rec(records);
      const ipc::json report = ipc::rm_experiment(rho, sigma, cfg, &rec.stream());
      Output o(out);
      o.stream() << report.dump(2) << '\n';
    } else if (*ex) {
      const auto rep = ipc::run_examples();
      Output o(out);
      o.stream() << rep.report.dump(2) << '\n';
      for (const auto& f : rep.failures) std::cerr << "FAILED: " << f << '\n';
      return rep.ok() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {  // DimensionError, ValidationError, InvalidWitness
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ipc::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
