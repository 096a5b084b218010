#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "jode/core/decision.hpp"

namespace jode {

/// Decimal text with 17 significant digits; "inf", "-inf", "nan" for non-finite.
[[nodiscard]] std::string format_real(double v);
[[nodiscard]] double parse_real(std::string_view text);

// JSON record layout: field names follow the struct members, every real is a
// string produced by format_real so values round-trip bit-exactly.
[[nodiscard]] nlohmann::json to_json(const PosteriorSummary& s);
[[nodiscard]] nlohmann::json to_json(const ThresholdSet& t);
[[nodiscard]] PosteriorSummary posterior_summary_from_json(const nlohmann::json& j);
[[nodiscard]] ThresholdSet threshold_set_from_json(const nlohmann::json& j);

}  // namespace jode
