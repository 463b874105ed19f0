#include "apf/grid.hpp"

#include <algorithm>

namespace apf {

Configuration::Configuration(std::vector<Vec> pts) : points_(std::move(pts)) {
  std::sort(points_.begin(), points_.end());
  auto dup = std::adjacent_find(points_.begin(), points_.end());
  if (dup != points_.end())
    throw std::invalid_argument("duplicate point (" + std::to_string(dup->x) + "," +
                                std::to_string(dup->y) + ")");
}

bool Configuration::contains(const Vec &p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

Configuration Configuration::without(const Vec &p) const {
  std::vector<Vec> pts;
  pts.reserve(points_.size());
  for (const Vec &q : points_)
    if (q != p) pts.push_back(q);
  Configuration c;
  c.points_ = std::move(pts);  // already sorted
  return c;
}

Configuration Configuration::with(const Vec &p) const {
  Configuration c = *this;
  auto it = std::lower_bound(c.points_.begin(), c.points_.end(), p);
  if (it != c.points_.end() && *it == p)
    throw std::invalid_argument("point already present");
  c.points_.insert(it, p);
  return c;
}

Rect smallest_enclosing_rect(const Configuration &config) {
  if (config.empty()) throw std::invalid_argument("empty configuration");
  Rect r{config.points()[0].x, config.points()[0].x, config.points()[0].y,
         config.points()[0].y};
  for (const Vec &p : config.points()) {
    r.min_x = std::min(r.min_x, p.x);
    r.max_x = std::max(r.max_x, p.x);
    r.min_y = std::min(r.min_y, p.y);
    r.max_y = std::max(r.max_y, p.y);
  }
  return r;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

static bool is_unit_axis(const Vec &v) {
  return (v.x == 0 && (v.y == 1 || v.y == -1)) || (v.y == 0 && (v.x == 1 || v.x == -1));
}

BitString scan_string(const Configuration &config, const Vec &corner, const Vec &scan_dir,
                      const Vec &sweep_dir) {
  Rect r = smallest_enclosing_rect(config);
  if (!r.is_corner(corner)) throw std::invalid_argument("corner not on enclosing rectangle");
  if (!is_unit_axis(scan_dir) || !is_unit_axis(sweep_dir) ||
      scan_dir.x * sweep_dir.x + scan_dir.y * sweep_dir.y != 0)
    throw std::invalid_argument("scan/sweep must be perpendicular unit grid vectors");

  auto extent = [&](const Vec &d) { return d.x != 0 ? r.width() : r.height(); };
  std::int64_t scan_len = extent(scan_dir) + 1;
  std::int64_t sweep_len = extent(sweep_dir) + 1;

  BitString out;
  out.corner = corner;
  out.scan_dir = scan_dir;
  out.sweep_dir = sweep_dir;
  out.bits.reserve(static_cast<std::size_t>(scan_len * sweep_len));
  for (std::int64_t j = 0; j < sweep_len; ++j)
    for (std::int64_t i = 0; i < scan_len; ++i)
      out.bits.push_back(config.contains(corner + scan_dir * i + sweep_dir * j) ? 1 : 0);
  return out;
}

namespace {

struct Cand {
  Vec corner, scan, sweep;
};

// Fixed enumeration order; it doubles as the tie-break order for target
// normalization, where the maximum need not be unique.
std::vector<Cand> enumerate_candidates(const Rect &r, std::size_t size, ScanSide side,
                                       bool *line_out) {
  std::int64_t w = r.width(), h = r.height();
  if (line_out) *line_out = false;
  if (w == 0 && h == 0) return {{Vec{r.min_x, r.min_y}, {1, 0}, {0, 1}}};
  if (w == 0 || h == 0) {
    // Degenerate line: one scan from each endpoint, running along the line.
    // The perpendicular sweep never advances.
    if (line_out) *line_out = size > 1;
    Vec along = w == 0 ? Vec{0, 1} : Vec{1, 0};
    Vec perp = w == 0 ? Vec{1, 0} : Vec{0, 1};
    return {{Vec{r.min_x, r.min_y}, along, perp},
            {Vec{r.max_x, r.max_y}, along * -1, perp}};
  }
  Vec a{r.min_x, r.min_y}, b{r.max_x, r.min_y}, c{r.min_x, r.max_y}, d{r.max_x, r.max_y};
  std::vector<Cand> all = {
      {a, {1, 0}, {0, 1}},  {b, {-1, 0}, {0, 1}}, {c, {1, 0}, {0, -1}}, {d, {-1, 0}, {0, -1}},
      {a, {0, 1}, {1, 0}},  {b, {0, 1}, {-1, 0}}, {c, {0, -1}, {1, 0}}, {d, {0, -1}, {-1, 0}},
  };
  if (w == h) return all;
  bool scan_horizontal = (side == ScanSide::Short) == (w < h);
  std::size_t base = scan_horizontal ? 0 : 4;
  return {all.begin() + base, all.begin() + base + 4};
}

// Sorted raster indices of the occupied cells under one candidate scan.
// Two candidates' occupancy strings compare exactly as these vectors do,
// with the smaller vector denoting the lexicographically larger string.
std::vector<std::int64_t> raster_indices(const std::vector<Vec> &pts, const Cand &c,
                                         std::int64_t scan_len) {
  std::vector<std::int64_t> idx;
  idx.reserve(pts.size());
  for (const Vec &p : pts) {
    Vec d = p - c.corner;
    std::int64_t lx = d.x * c.scan.x + d.y * c.scan.y;
    std::int64_t ly = d.x * c.sweep.x + d.y * c.sweep.y;
    idx.push_back(ly * scan_len + lx);
  }
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

std::vector<BitString> candidate_strings(const Configuration &config, ScanSide side) {
  Rect r = smallest_enclosing_rect(config);
  std::vector<Cand> cands = enumerate_candidates(r, config.size(), side, nullptr);
  std::vector<BitString> out;
  out.reserve(cands.size());
  for (const Cand &c : cands) out.push_back(scan_string(config, c.corner, c.scan, c.sweep));
  return out;
}

Election agree_frame(const Configuration &config, ScanSide side) {
  Rect r = smallest_enclosing_rect(config);
  bool line = false;
  std::vector<Cand> cands = enumerate_candidates(r, config.size(), side, &line);

  std::vector<std::vector<std::int64_t>> keys;
  keys.reserve(cands.size());
  for (const Cand &c : cands) {
    std::int64_t scan_len = (c.scan.x != 0 ? r.width() : r.height()) + 1;
    keys.push_back(raster_indices(config.points(), c, scan_len));
  }
  std::size_t best = 0;
  bool tie = false;
  std::size_t other = 0;
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i] < keys[best]) {
      best = i;
      tie = false;
    } else if (keys[i] == keys[best]) {
      tie = true;
      other = i;
    }
  }

  Election e;
  if (tie) {
    e.symmetric = true;
    e.witness = std::make_pair(
        scan_string(config, cands[best].corner, cands[best].scan, cands[best].sweep),
        scan_string(config, cands[other].corner, cands[other].scan, cands[other].sweep));
    return e;
  }
  const Cand &m = cands[best];
  e.frame = Frame{m.corner, m.scan, m.sweep};
  e.provisional_y = line;
  std::int64_t scan_len = (m.scan.x != 0 ? r.width() : r.height()) + 1;
  auto at = [&](std::int64_t idx) {
    return m.corner + m.scan * (idx % scan_len) + m.sweep * (idx / scan_len);
  };
  e.head_pos = at(keys[best].front());
  e.tail_pos = at(keys[best].back());
  return e;
}

std::pair<Vec, Vec> head_tail(const Configuration &config, const Frame &frame) {
  Rect r = smallest_enclosing_rect(config);
  if (!r.is_corner(frame.origin) && config.size() > 1)
    throw std::invalid_argument("frame inconsistent with configuration");
  BitString s = scan_string(config, frame.origin, frame.x_dir, frame.y_dir);
  std::int64_t scan_len = (frame.x_dir.x != 0 ? r.width() : r.height()) + 1;
  std::int64_t first = -1, last = -1;
  for (std::size_t i = 0; i < s.bits.size(); ++i) {
    if (!s.bits[i]) continue;
    if (first < 0) first = static_cast<std::int64_t>(i);
    last = static_cast<std::int64_t>(i);
  }
  if (first < 0) throw std::invalid_argument("frame inconsistent with configuration");
  auto at = [&](std::int64_t idx) {
    return frame.origin + frame.x_dir * (idx % scan_len) + frame.y_dir * (idx / scan_len);
  };
  return {at(first), at(last)};
}

std::optional<std::int64_t> vertical_reflection_axis2(const Configuration &config,
                                                      const Frame &frame) {
  if (config.empty()) return std::nullopt;
  std::vector<Vec> local;
  local.reserve(config.size());
  for (const Vec &p : config.points()) local.push_back(frame.to_local(p));
  std::sort(local.begin(), local.end());
  std::int64_t lo = local[0].x, hi = local[0].x;
  for (const Vec &p : local) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  // A mirror must swap the extreme columns, so the midline is the only
  // candidate axis.
  std::int64_t axis2 = lo + hi;
  for (const Vec &p : local) {
    Vec q{axis2 - p.x, p.y};
    if (!std::binary_search(local.begin(), local.end(), q)) return std::nullopt;
  }
  return axis2;
}

}  // namespace apf
