// JSON encoding and decoding for the core value types.
#pragma once

#include <string>

#include "json.hpp"
#include "spancalc/spanqc.hpp"
#include "spancalc/spans.hpp"

namespace spancalc {

nlohmann::json to_json(const FinSet& s);
nlohmann::json to_json(const SetMap& m);
nlohmann::json to_json(const Span1& s);
nlohmann::json to_json(const SpanCell& f);
nlohmann::json to_json(const NatMatrix& m);

FinSet finset_from_json(const nlohmann::json& j);
SetMap map_from_json(const nlohmann::json& j);
Span1 span_from_json(const nlohmann::json& j);
SpanCell cell_from_json(const nlohmann::json& j);
NatMatrix matrix_from_json(const nlohmann::json& j);

// Parses text, converting syntax errors into errc::invalid.
nlohmann::json parse_json_text(const std::string& text);

// Canonical rendering: two-space indent and a trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace spancalc
