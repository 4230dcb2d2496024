#pragma once

#include <string>
#include <string_view>

#include "piezobeam/section.hpp"

namespace piezobeam {

/// Layup document: {"width_mm", "wiring", "layers": [{"material", "thickness_mm",
/// "poling": "+z" | "-z" | "none", "electroded"}]}, bottom to top.
LayupSpec parse_layup(std::string_view json_text);
LayupSpec load_layup(const std::string& path);

enum class Quantity { Length, Voltage, CapacitancePerLength, Curvature };

/// Parses "<number><suffix>" into SI. A bare number is taken as SI.
/// Accepted suffixes:
///   Length                 m, cm, mm, um
///   Voltage                V, kV, mV
///   CapacitancePerLength   F/m, nF/m, pF/m, uF/m, nF/mm, pF/mm
///   Curvature              1/m, 1/mm
/// Throws InputError on anything else.
double parse_quantity(std::string_view text, Quantity kind);

} // namespace piezobeam
