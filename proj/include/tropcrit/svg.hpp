#pragma once

#include <string>

#include "tropcrit/tropical.hpp"

namespace tropcrit {

// 2d picture of a complex inside its polytope: black outline, red cells,
// hollow circles on excluded cell endpoints. unsupported_dimension unless n == 2.
std::string render_svg(const PolyhedralComplex& pc, const Polytope& p);

} // namespace tropcrit
