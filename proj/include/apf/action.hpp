#pragma once

#include <optional>

#include "apf/grid.hpp"

namespace apf {

// Per-robot light. The oblivious algorithm never leaves Off; the luminous one
// uses all three colors.
enum class Light : std::uint8_t { Off = 0, Head = 1, Line = 2 };

inline const char *light_name(Light l) {
  switch (l) {
    case Light::Head: return "head";
    case Light::Line: return "line";
    default: return "off";
  }
}

// One activation's output: stay put or step to one of the four neighbors,
// optionally changing the light. A single activation never both moves and
// switches the light.
struct Action {
  bool move = false;
  Vec dir{0, 0};
  std::optional<Light> set_light;

  static Action stay() { return {}; }
  static Action step(Vec d) { return {true, d, std::nullopt}; }
  static Action light(Light l) { return {false, {0, 0}, l}; }

  friend bool operator==(const Action &a, const Action &b) {
    return a.move == b.move && a.dir == b.dir && a.set_light == b.set_light;
  }
};

}  // namespace apf
