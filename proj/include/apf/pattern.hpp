#pragma once

#include <vector>

#include "apf/grid.hpp"

namespace apf {

// Target pattern in canonical coordinates: anchored so the elected corner sits
// at the origin with the maximal occupancy string running along +x, +y. Ties
// in the election are broken by the fixed candidate enumeration order, since a
// target pattern may be symmetric.
struct TargetPattern {
  Configuration points;   // canonical: min_x = min_y = 0
  std::size_t k = 0;
  Rect rect;              // {0..width} x {0..height}
  Vec head_target;        // first set bit of the maximal string
  Vec tail_target;        // last set bit of the maximal string
  std::vector<Vec> order; // fill order used by the owning algorithm
  ScanSide side = ScanSide::Short;

  std::int64_t width() const { return rect.width(); }
  std::int64_t height() const { return rect.height(); }
  bool is_target(const Vec &p) const { return points.contains(p); }
  std::vector<Vec> targets_on_line(std::int64_t y) const;  // sorted by x
  std::int64_t line_count(std::int64_t y) const;           // n_i
};

// Re-expresses a raw point set in canonical coordinates. ScanSide::Short keeps
// the taller side vertical (oblivious algorithm), ScanSide::Long keeps the
// longer side horizontal (luminous algorithm).
TargetPattern normalize_target(const Configuration &raw, ScanSide side);

// Bottom line left-to-right, every higher line right-to-left, the last raster
// position (tail target) excluded from the per-line walk and appended last.
std::vector<Vec> order_targets_moveopt(const TargetPattern &pattern);

// Plain raster order of the canonical scan: each line left-to-right, bottom
// line first. Element 0 is the head target, element k-1 the tail target.
std::vector<Vec> order_targets_fastapf(const TargetPattern &pattern);

// Per-line robot/target balance. A line is saturated when the robots strictly
// above and strictly below it match the target counts strictly above and
// below. All robots count, head and tail included.
struct LineStats {
  std::int64_t robots_above = 0;   // a_i
  std::int64_t robots_below = 0;   // b_i
  std::int64_t targets_above = 0;  // a'_i
  std::int64_t targets_below = 0;  // b'_i
};

LineStats line_stats(const std::vector<Vec> &local_config, const TargetPattern &pattern,
                     std::int64_t line);

bool saturated(const std::vector<Vec> &local_config, const TargetPattern &pattern,
               std::int64_t line);

}  // namespace apf
