#pragma once

#include <string>
#include <vector>

#include "apf/engine.hpp"

namespace apf {

enum class RenderStyle { Ascii, Svg };

// Frame sequence over the replayed trace, one frame per `stride` events
// (state after 0, stride, 2*stride, ... events). Robots render as role glyphs
// H/T/o with a light suffix in ASCII, or as colored circles in SVG.
std::vector<std::string> render_frames(const Trace &trace, RenderStyle style,
                                       std::int64_t stride = 1);

}  // namespace apf
