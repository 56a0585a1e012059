#pragma once

#include <nlohmann/json.hpp>

#include "wcop/types.hpp"

namespace wcop {

/// Complex numbers travel as [re, im]; a bare number is accepted as real.
nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

/// Round to 12 significant digits, the precision of all user-facing output.
double round12(double x);
nlohmann::json rounded(const nlohmann::json& j);

}  // namespace wcop
