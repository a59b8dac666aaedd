#pragma once

#include <optional>
#include <string>

#include "uncross/instance.hpp"

namespace uncross {

// Straight-line/arc SVG drawing from Tutte barycentric placement on the
// designated outer face. Cosmetic only.
std::string render_svg(const Instance& inst, const Multiflow* flow = nullptr);

}  // namespace uncross
