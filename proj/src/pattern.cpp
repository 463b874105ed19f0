#include "apf/pattern.hpp"

#include <algorithm>

namespace apf {

std::vector<Vec> TargetPattern::targets_on_line(std::int64_t y) const {
  std::vector<Vec> out;
  for (const Vec &p : points.points())
    if (p.y == y) out.push_back(p);
  std::sort(out.begin(), out.end(), [](const Vec &a, const Vec &b) { return a.x < b.x; });
  return out;
}

std::int64_t TargetPattern::line_count(std::int64_t y) const {
  std::int64_t n = 0;
  for (const Vec &p : points.points())
    if (p.y == y) ++n;
  return n;
}

TargetPattern normalize_target(const Configuration &raw, ScanSide side) {
  if (raw.empty()) throw std::invalid_argument("empty target pattern");

  std::vector<BitString> cands = candidate_strings(raw, side);
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (cands[best] < cands[i]) best = i;  // first maximum wins on ties
  const BitString &m = cands[best];

  Rect r = smallest_enclosing_rect(raw);
  bool line = raw.size() > 1 && (r.width() == 0 || r.height() == 0);
  Frame f{m.corner, m.scan_dir, m.sweep_dir};
  if (line && side == ScanSide::Short) {
    // Keep a degenerate pattern along the taller axis: the line becomes the
    // local y-axis and the scan string reads bottom to top.
    f = Frame{m.corner, m.sweep_dir, m.scan_dir};
  }

  std::vector<Vec> local;
  local.reserve(raw.size());
  for (const Vec &p : raw.points()) local.push_back(f.to_local(p));

  TargetPattern t;
  t.points = Configuration(std::move(local));
  t.k = t.points.size();
  t.rect = smallest_enclosing_rect(t.points);
  t.side = side;
  if (t.rect.min_x != 0 || t.rect.min_y != 0)
    throw std::logic_error("normalization did not anchor at the origin");

  Frame canonical{{0, 0}, {1, 0}, {0, 1}};
  auto ht = head_tail(t.points, canonical);
  t.head_target = ht.first;
  t.tail_target = ht.second;
  t.order = side == ScanSide::Short ? order_targets_moveopt(t) : order_targets_fastapf(t);
  return t;
}

std::vector<Vec> order_targets_moveopt(const TargetPattern &pattern) {
  std::vector<Vec> out;
  out.reserve(pattern.k);
  for (std::int64_t y = 0; y <= pattern.height(); ++y) {
    std::vector<Vec> line = pattern.targets_on_line(y);
    if (y > 0) std::reverse(line.begin(), line.end());
    for (const Vec &p : line)
      if (p != pattern.tail_target) out.push_back(p);
  }
  out.push_back(pattern.tail_target);
  return out;
}

std::vector<Vec> order_targets_fastapf(const TargetPattern &pattern) {
  std::vector<Vec> out;
  out.reserve(pattern.k);
  for (std::int64_t y = 0; y <= pattern.height(); ++y) {
    std::vector<Vec> line = pattern.targets_on_line(y);
    out.insert(out.end(), line.begin(), line.end());
  }
  return out;
}

LineStats line_stats(const std::vector<Vec> &local_config, const TargetPattern &pattern,
                     std::int64_t line) {
  LineStats s;
  for (const Vec &p : local_config) {
    if (p.y > line) ++s.robots_above;
    if (p.y < line) ++s.robots_below;
  }
  for (const Vec &p : pattern.points.points()) {
    if (p.y > line) ++s.targets_above;
    if (p.y < line) ++s.targets_below;
  }
  return s;
}

bool saturated(const std::vector<Vec> &local_config, const TargetPattern &pattern,
               std::int64_t line) {
  LineStats s = line_stats(local_config, pattern, line);
  return s.robots_above == s.targets_above && s.robots_below == s.targets_below;
}

}  // namespace apf
