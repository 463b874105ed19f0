#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Grid geometry, configuration strings, lexicographic frame election,
// head/tail identification and mirror detection. Everything here is a pure
// function of its inputs; values are immutable once built and safe to share
// across simulation workers.

namespace apf {

struct Vec {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Vec &a, const Vec &b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Vec &a, const Vec &b) { return !(a == b); }
  friend bool operator<(const Vec &a, const Vec &b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
  friend Vec operator+(const Vec &a, const Vec &b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec operator-(const Vec &a, const Vec &b) { return {a.x - b.x, a.y - b.y}; }
  Vec operator*(std::int64_t s) const { return {x * s, y * s}; }
};

using GridPoint = Vec;

inline std::int64_t manhattan(const Vec &a, const Vec &b) {
  std::int64_t dx = a.x - b.x, dy = a.y - b.y;
  return (dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy);
}

// Smallest grid-aligned rectangle around a point set. Width/height are
// measured in grid edges; the rectangle holds (width+1)*(height+1) points.
struct Rect {
  std::int64_t min_x = 0, max_x = 0, min_y = 0, max_y = 0;

  std::int64_t width() const { return max_x - min_x; }
  std::int64_t height() const { return max_y - min_y; }
  std::int64_t point_count() const { return (width() + 1) * (height() + 1); }
  bool contains(const Vec &p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  bool is_corner(const Vec &p) const {
    return (p.x == min_x || p.x == max_x) && (p.y == min_y || p.y == max_y);
  }
  friend bool operator==(const Rect &a, const Rect &b) {
    return a.min_x == b.min_x && a.max_x == b.max_x && a.min_y == b.min_y && a.max_y == b.max_y;
  }
};

// A finite set of distinct grid points, kept sorted for set semantics and
// deterministic iteration.
class Configuration {
public:
  Configuration() = default;
  explicit Configuration(std::vector<Vec> pts);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(const Vec &p) const;
  const std::vector<Vec> &points() const { return points_; }

  Configuration without(const Vec &p) const;
  Configuration with(const Vec &p) const;

  friend bool operator==(const Configuration &a, const Configuration &b) {
    return a.points_ == b.points_;
  }
  friend bool operator!=(const Configuration &a, const Configuration &b) { return !(a == b); }

private:
  std::vector<Vec> points_;  // sorted, unique
};

Rect smallest_enclosing_rect(const Configuration &config);

// Occupancy string read off a boustrophedon-free raster scan of the enclosing
// rectangle: all points of the corner's line in scan_dir, then the next line
// toward sweep_dir in the same direction, and so on.
struct BitString {
  std::vector<std::uint8_t> bits;
  Vec corner;
  Vec scan_dir;
  Vec sweep_dir;

  friend bool operator==(const BitString &a, const BitString &b) { return a.bits == b.bits; }
  // Candidate strings always share a length, so plain lexicographic order.
  friend bool operator<(const BitString &a, const BitString &b) { return a.bits < b.bits; }
  std::string to_string() const;
};

// Agreed coordinate system: origin corner plus two perpendicular axis-aligned
// unit vectors.
struct Frame {
  Vec origin;
  Vec x_dir{1, 0};
  Vec y_dir{0, 1};

  Vec to_local(const Vec &p) const {
    Vec d = p - origin;
    return {d.x * x_dir.x + d.y * x_dir.y, d.x * y_dir.x + d.y * y_dir.y};
  }
  Vec to_global(const Vec &p) const { return origin + x_dir * p.x + y_dir * p.y; }
  friend bool operator==(const Frame &a, const Frame &b) {
    return a.origin == b.origin && a.x_dir == b.x_dir && a.y_dir == b.y_dir;
  }
  friend bool operator!=(const Frame &a, const Frame &b) { return !(a == b); }
};

struct SymmetryReport {
  bool symmetric = false;
  std::optional<std::pair<BitString, BitString>> witness;
};

// Which side family the raster scan runs along. The oblivious algorithm scans
// along the short side of the rectangle, the luminous one along the long side.
enum class ScanSide { Short, Long };

struct Election {
  bool symmetric = false;
  Frame frame;                  // valid iff !symmetric
  Vec head_pos;                 // first set bit of the maximal string (global)
  Vec tail_pos;                 // last set bit of the maximal string (global)
  bool provisional_y = false;   // line configurations: y picked by convention
  std::optional<std::pair<BitString, BitString>> witness;  // tie, iff symmetric
};

// All corner/direction candidate strings for the configuration: 4 for a
// proper rectangle, 8 for a square, 2 for a line, 1 for a single point.
std::vector<BitString> candidate_strings(const Configuration &config,
                                         ScanSide side = ScanSide::Short);

BitString scan_string(const Configuration &config, const Vec &corner, const Vec &scan_dir,
                      const Vec &sweep_dir);

// Elects the frame whose candidate string is the strict lexicographic
// maximum. A tie is reported as symmetry, not as a failure.
Election agree_frame(const Configuration &config, ScanSide side = ScanSide::Short);

// Positions of the first and last set bit of the frame's maximal string.
std::pair<Vec, Vec> head_tail(const Configuration &config, const Frame &frame);

// Vertical mirror line mapping the set to itself, as twice the local
// x-coordinate of the axis (axes may sit on half-integer columns). The only
// possible axis is the midline of the bounding box.
std::optional<std::int64_t> vertical_reflection_axis2(const Configuration &config,
                                                      const Frame &frame);

}  // namespace apf
