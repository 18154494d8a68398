#pragma once

// Internal JSON helpers shared by the core translation units; not installed.

#include <nlohmann/json.hpp>
#include <string_view>

#include "hnl/expr.hpp"
#include "hnl/measure.hpp"

namespace hnl::detail {

nlohmann::json parse_json(std::string_view text);
void require_schema(const nlohmann::json& j, const char* what);

nlohmann::ordered_json measure_to_json_obj(const SpectralMeasure& mu);
SpectralMeasure measure_from_json_obj(const nlohmann::json& j);

nlohmann::ordered_json expr_to_json_obj(const ExprPtr& f);
ExprPtr expr_from_json_obj(const nlohmann::json& j, int depth = 0);

}  // namespace hnl::detail
