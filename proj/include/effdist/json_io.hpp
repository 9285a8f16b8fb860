#pragma once

#include "effdist/test_functions.hpp"

#include <json.hpp>

namespace effdist {

/// {"m": mantissa, "e": exponent}; the mantissa becomes a decimal string when
/// it does not fit in 64 bits.
nlohmann::json to_json(const Dyadic& d);
/// Accepts the object form, a JSON integer, or a string understood by Dyadic::parse.
Dyadic dyadic_from_json(const nlohmann::json& j);

/// Array of [x, y] pairs.
nlohmann::json to_json(const TestFunction& f);
TestFunction test_function_from_json(const nlohmann::json& j);

} // namespace effdist
