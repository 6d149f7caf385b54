#ifndef QUIPU_RENDER_HPP
#define QUIPU_RENDER_HPP

#include <string>

#include "quipu/tas.hpp"

namespace quipu {

/// SVG of an assembly: unit squares with the tile name centered, glue labels
/// on bonded edges, the seed outlined. The y axis points up.
std::string render_svg(const Assembly& a, const TAS& tas, const Window& window);

}  // namespace quipu

#endif
