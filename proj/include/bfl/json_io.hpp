#pragma once

#include "bfl/config.hpp"
#include "bfl/liecirc.hpp"

#include <json.hpp>

#include <string>

namespace bfl {

/// Graded element serialization:
///   { "ring": "circle-trig", "parts": { "<degree>": { "<freq>":
///       [cos_num, cos_den, sin_num, sin_den] } } }
/// Interval ring entries carry [num, den] pairs keyed by power. A naked
/// parts object (no wrapper) is accepted on input as circle-trig.
nlohmann::json element_to_json(const GradedElement& e);
GradedElement element_from_json(const nlohmann::json& j);

nlohmann::json membership_to_json(const OddConstraintReport& rep);

/// Resolved configuration embedded in every report for reproducibility.
nlohmann::json config_to_json(const KeyValueConfig& cfg);

void write_json(const nlohmann::json& j, const std::string& path);
void write_text(const std::string& text, const std::string& path);

}  // namespace bfl
