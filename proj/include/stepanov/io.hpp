#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "stepanov/bochner.hpp"
#include "stepanov/grid.hpp"
#include "stepanov/integrability.hpp"
#include "stepanov/nemytskii.hpp"
#include "stepanov/periodicity.hpp"

namespace stepanov::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Reals are written with the shortest round-trip decimal form; non-finite
// values become null.

json to_json(const GridSpec& spec);
json to_json(const GridFunction& u);
json to_json(const BochnerSequence& seq);
json to_json(const BochnerFunction& v);
json to_json(const NormBracket& b);
json to_json(const DefectCurve& c);
json to_json(const APCertificate& c);
json to_json(const SequenceAPCertificate& c);
json to_json(const AACheckReport& r);
json to_json(const ConsistencyReport& r);
json to_json(const TightnessReport& r);
json to_json(const UIModulusReport& r);
json to_json(const MeasureDefect& d);
json to_json(const ConvergenceReport& r);
json to_json(const HypothesisReport& r);
json to_json(const ModulusCurve& c);
json to_json(const ProbeTable& t);

GridFunction grid_function_from_json(const json& j);
BochnerSequence bochner_sequence_from_json(const json& j);
BochnerFunction bochner_function_from_json(const json& j);

/// Adds schema_version and type to a payload.
json envelope(std::string type, json payload);

/// CSV with header t,x_1..x_d. Rows must start at an integer, be spaced 1/m
/// apart and cover whole unit intervals. When m is not given it is inferred
/// from the first spacing.
GridFunction read_csv(std::istream& in, std::optional<int> m = std::nullopt, NormKind kind = NormKind::L2);
void write_csv(std::ostream& out, const GridFunction& u);
void write_csv(std::ostream& out, const DefectCurve& c);
void write_csv(std::ostream& out, const UIModulusReport& r);
void write_csv(std::ostream& out, const ProbeTable& t);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Loads a GridFunction from .json or .csv by extension.
GridFunction load_function(const std::string& path, std::optional<int> m = std::nullopt, NormKind kind = NormKind::L2);

}  // namespace stepanov::io
