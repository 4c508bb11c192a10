#pragma once

// JSON forms of the configuration and result types, and the JSON-lines record format.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ipc/criteria.hpp"
#include "ipc/multipartite.hpp"
#include "ipc/randomized.hpp"
#include "ipc/states.hpp"
#include "ipc/variational.hpp"

namespace ipc {

using nlohmann::json;

void to_json(json& j, const StateSpec& s);
void from_json(const json& j, StateSpec& s);

void to_json(json& j, const CriterionVerdict& v);

/// shots_per_setting is a positive integer or the string "exact".
void to_json(json& j, const ProtocolConfig& c);
void from_json(const json& j, ProtocolConfig& c);

void to_json(json& j, const Estimate& e);
void to_json(json& j, const OverlapEstimate& e);

void to_json(json& j, const MultiVerdict& v);
void to_json(json& j, const LambdaVerdict& v);

void to_json(json& j, const OptConfig& c);
void from_json(const json& j, OptConfig& c);

/// Unitaries as [re, im, re, im, ...] row-major; outcomes as {"index": count} maps in
/// finite-shot mode, probability arrays in exact mode.
json record_to_json(const MeasurementRecord& r);
MeasurementRecord record_from_json(const json& j, int local_dim);

void write_records(std::ostream& out, const std::vector<MeasurementRecord>& records);
std::vector<MeasurementRecord> read_records(std::istream& in, int local_dim);

}  // namespace ipc
