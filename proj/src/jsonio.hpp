// nlohmann helpers shared by the window format and the CLI.

#pragma once

#include "flatcurve/mat2.hpp"
#include "flatcurve/numeric.hpp"

#include <json.hpp>

namespace flatcurve::detail {

using json = nlohmann::ordered_json;

json rational_json(const Rational& q, Mode mode);
json point_json(const ZPoint& z, Mode mode);
json matrix_json(const Mat2& m, Mode mode);

/// Accepts a "p/q" string or a number (converted exactly).
Rational rational_from_json(const json& j);
ZPoint point_from_json(const json& j);

}  // namespace flatcurve::detail
