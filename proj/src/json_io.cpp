#include "ipc/json_io.hpp"

#include <istream>
#include <ostream>

#include "ipc/errors.hpp"

namespace ipc {

void to_json(json& j, const StateSpec& s) {
  j = json{{"family", s.family}, {"params", s.params}, {"seed", s.seed}};
}

void from_json(const json& j, StateSpec& s) {
  s.family = j.at("family").get<std::string>();
  s.params = j.value("params", std::map<std::string, double>{});
  s.seed = j.value("seed", std::uint64_t{0});
}

void to_json(json& j, const CriterionVerdict& v) {
  j = json{{"criterion", v.criterion},
           {"values", v.values},
           {"threshold", v.threshold},
           {"detected", v.detected},
           {"sn_bound", v.sn_bound}};
  if (!v.detail.empty()) j["detail"] = v.detail;
}

void to_json(json& j, const ProtocolConfig& c) {
  j = json{{"local_dim", c.local_dim},
           {"m", c.qudits_a},
           {"n", c.qudits_b},
           {"n_unitaries", c.n_unitaries},
           {"seed", c.seed},
           {"design", c.design == Design::haar ? "haar" : "clifford"},
           {"ratio_guard", c.ratio_guard}};
  if (c.shots)
    j["shots_per_setting"] = *c.shots;
  else
    j["shots_per_setting"] = "exact";
}

void from_json(const json& j, ProtocolConfig& c) {
  c.local_dim = j.value("local_dim", c.local_dim);
  c.qudits_a = j.value("m", c.qudits_a);
  c.qudits_b = j.value("n", c.qudits_b);
  c.n_unitaries = j.value("n_unitaries", c.n_unitaries);
  c.seed = j.value("seed", c.seed);
  c.ratio_guard = j.value("ratio_guard", c.ratio_guard);
  const std::string design = j.value("design", std::string("haar"));
  if (design == "haar")
    c.design = Design::haar;
  else if (design == "clifford")
    c.design = Design::clifford;
  else
    throw ValidationError("unknown design '" + design + "'");
  if (j.contains("shots_per_setting")) {
    const auto& s = j.at("shots_per_setting");
    if (s.is_string()) {
      if (s.get<std::string>() != "exact")
        throw ValidationError("shots_per_setting must be a positive integer or \"exact\"");
      c.shots.reset();
    } else {
      c.shots = s.get<std::int64_t>();
    }
  }
  c.validate();
}

void to_json(json& j, const Estimate& e) { j = json{{"value", e.value}, {"se", e.se}}; }

void to_json(json& j, const OverlapEstimate& e) {
  static const char* names[] = {"A", "B", "AB"};
  json ov, pr, ps;
  for (std::size_t k = 0; k < 3; ++k) {
    ov[names[k]] = e.overlap[k];
    pr[names[k]] = e.purity_rho[k];
    ps[names[k]] = e.purity_sigma[k];
  }
  j = json{{"overlap", ov},           {"purity_rho", pr},       {"purity_sigma", ps},
           {"s_a", e.s_a},            {"s_b", e.s_b},           {"s_hat", e.s_hat},
           {"reliable_a", e.reliable_a}, {"reliable_b", e.reliable_b}, {"settings", e.settings}};
}

void to_json(json& j, const MultiVerdict& v) {
  json cuts = json::array();
  for (const auto& c : v.cuts)
    cuts.push_back({{"S", c.kept},
                    {"overlap_S", c.overlap_kept},
                    {"overlap_complement", c.overlap_complement},
                    {"min", c.min}});
  j = json{{"cuts", cuts},
           {"minimizing", v.cuts.empty() ? json() : json(v.cuts[v.minimizing].kept)},
           {"global", v.global},
           {"min_over_cuts", v.min_over_cuts},
           {"detected", v.detected}};
}

void to_json(json& j, const LambdaVerdict& v) {
  j = json{{"r", v.r},
           {"value", v.value},
           {"negative", v.negative},
           {"r_op", v.r_op},
           {"genuine_or_ac_schmidt_exceeds_r", v.genuine_or_ac_schmidt_exceeds_r},
           {"conclusion", v.conclusion}};
}

void to_json(json& j, const OptConfig& c) {
  j = json{{"restarts", c.restarts}, {"max_iters", c.max_iters}, {"tol", c.tol},
           {"fd_step", c.fd_step},   {"seed", c.seed}};
}

void from_json(const json& j, OptConfig& c) {
  c.restarts = j.value("restarts", c.restarts);
  c.max_iters = j.value("max_iters", c.max_iters);
  c.tol = j.value("tol", c.tol);
  c.fd_step = j.value("fd_step", c.fd_step);
  c.seed = j.value("seed", c.seed);
  if (c.restarts < 1 || c.max_iters < 0 || !(c.fd_step > 0.0))
    throw ValidationError("invalid optimizer config");
}

namespace {

json flatten(const Matrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      a.push_back(m(r, c).real());
      a.push_back(m(r, c).imag());
    }
  return a;
}

Matrix unflatten(const json& a, int dim) {
  if (!a.is_array() || a.size() != static_cast<std::size_t>(2 * dim * dim))
    throw DimensionError("record: unitary has the wrong number of entries");
  Matrix m(dim, dim);
  std::size_t k = 0;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c, k += 2) m(r, c) = {a[k].get<double>(), a[k + 1].get<double>()};
  return m;
}

json count_map(const std::vector<std::int64_t>& counts) {
  json m = json::object();
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] != 0) m[std::to_string(i)] = counts[i];
  return m;
}

std::vector<std::int64_t> dense_counts(const json& m, std::size_t outcomes, std::int64_t shots) {
  std::vector<std::int64_t> out(outcomes, 0);
  std::int64_t total = 0;
  for (const auto& [k, v] : m.items()) {
    const auto idx = std::stoull(k);
    if (idx >= outcomes) throw DimensionError("record: outcome index out of range");
    out[idx] = v.get<std::int64_t>();
    total += out[idx];
  }
  if (total != shots) throw ValidationError("record: counts do not sum to shots");
  return out;
}

}  // namespace

json record_to_json(const MeasurementRecord& r) {
  json u = json::array();
  for (const auto& m : r.unitaries) u.push_back(flatten(m));
  json j{{"setting", r.setting}, {"unitaries", u}, {"shots", r.shots}};
  if (r.shots == 0) {
    j["prob_rho"] = r.prob_rho;
    j["prob_sigma"] = r.prob_sigma;
  } else {
    j["counts_rho"] = count_map(r.counts_rho);
    j["counts_sigma"] = count_map(r.counts_sigma);
  }
  return j;
}

MeasurementRecord record_from_json(const json& j, int local_dim) {
  MeasurementRecord r;
  r.setting = j.at("setting").get<int>();
  r.shots = j.value("shots", std::int64_t{0});
  for (const auto& u : j.at("unitaries")) r.unitaries.push_back(unflatten(u, local_dim));
  std::size_t outcomes = 1;
  for (std::size_t i = 0; i < r.unitaries.size(); ++i) outcomes *= local_dim;
  if (r.shots == 0) {
    r.prob_rho = j.at("prob_rho").get<std::vector<double>>();
    r.prob_sigma = j.at("prob_sigma").get<std::vector<double>>();
    if (r.prob_rho.size() != outcomes || r.prob_sigma.size() != outcomes)
      throw DimensionError("record: probability vector has the wrong length");
  } else {
    r.counts_rho = dense_counts(j.at("counts_rho"), outcomes, r.shots);
    r.counts_sigma = dense_counts(j.at("counts_sigma"), outcomes, r.shots);
  }
  return r;
}

void write_records(std::ostream& out, const std::vector<MeasurementRecord>& records) {
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

std::vector<MeasurementRecord> read_records(std::istream& in, int local_dim) {
  std::vector<MeasurementRecord> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(record_from_json(json::parse(line), local_dim));
  return out;
}

}  // namespace ipc
