#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "apf/grid.hpp"

using namespace apf;

namespace {

Configuration cfg(std::vector<Vec> pts) { return Configuration(std::move(pts)); }

// ---------------------------------------------------------------------------
// Brute-force oracle, independent of the library's election path: enumerate
// every corner/direction occupancy string with plain loops and pick the max.
// ---------------------------------------------------------------------------

struct OracleCand {
  std::string bits;
  Vec corner, scan, sweep;
};

std::string oracle_bits(const std::vector<Vec> &pts, Vec corner, Vec scan, Vec sweep,
                        std::int64_t scan_len, std::int64_t sweep_len) {
  std::string s;
  for (std::int64_t j = 0; j < sweep_len; ++j)
    for (std::int64_t i = 0; i < scan_len; ++i) {
      Vec p{corner.x + scan.x * i + sweep.x * j, corner.y + scan.y * i + sweep.y * j};
      s.push_back(std::count(pts.begin(), pts.end(), p) ? '1' : '0');
    }
  return s;
}

std::vector<OracleCand> oracle_candidates(const std::vector<Vec> &pts, bool scan_short) {
  std::int64_t lx = pts[0].x, hx = pts[0].x, ly = pts[0].y, hy = pts[0].y;
  for (const Vec &p : pts) {
    lx = std::min(lx, p.x);
    hx = std::max(hx, p.x);
    ly = std::min(ly, p.y);
    hy = std::max(hy, p.y);
  }
  std::int64_t w = hx - lx, h = hy - ly;
  std::vector<OracleCand> out;
  auto add = [&](Vec corner, Vec scan, Vec sweep) {
    std::int64_t sl = (scan.x != 0 ? w : h) + 1;
    std::int64_t wl = (sweep.x != 0 ? w : h) + 1;
    out.push_back({oracle_bits(pts, corner, scan, sweep, sl, wl), corner, scan, sweep});
  };
  Vec a{lx, ly}, b{hx, ly}, c{lx, hy}, d{hx, hy};
  if (w == 0 && h == 0) {
    add(a, {1, 0}, {0, 1});
    return out;
  }
  if (w == 0 || h == 0) {
    Vec along = w == 0 ? Vec{0, 1} : Vec{1, 0};
    Vec perp = w == 0 ? Vec{1, 0} : Vec{0, 1};
    add(a, along, perp);
    add(d, along * -1, perp);
    return out;
  }
  bool horiz[2] = {true, false};
  for (bool hz : horiz) {
    if (w != h && (scan_short ? (hz != (w < h)) : (hz != (w > h)))) continue;
    if (hz) {
      add(a, {1, 0}, {0, 1});
      add(b, {-1, 0}, {0, 1});
      add(c, {1, 0}, {0, -1});
      add(d, {-1, 0}, {0, -1});
    } else {
      add(a, {0, 1}, {1, 0});
      add(b, {0, 1}, {-1, 0});
      add(c, {0, -1}, {1, 0});
      add(d, {0, -1}, {-1, 0});
    }
  }
  return out;
}

struct OracleElection {
  bool symmetric;
  Vec corner, scan, sweep;
  Vec head, tail;
};

OracleElection oracle_elect(const std::vector<Vec> &pts, bool scan_short) {
  std::vector<OracleCand> cands = oracle_candidates(pts, scan_short);
  std::size_t best = 0;
  bool tie = false;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (cands[best].bits < cands[i].bits) {
      best = i;
      tie = false;
    } else if (cands[i].bits == cands[best].bits) {
      tie = true;
    }
  }
  OracleElection e{tie, cands[best].corner, cands[best].scan, cands[best].sweep, {}, {}};
  if (tie) return e;
  const OracleCand &m = cands[best];
  std::int64_t sl = static_cast<std::int64_t>(
      m.bits.find('1', 1) == std::string::npos ? m.bits.size() : 0);
  (void)sl;
  std::int64_t scan_len = 0;
  {
    std::int64_t lx = pts[0].x, hx = pts[0].x, ly = pts[0].y, hy = pts[0].y;
    for (const Vec &p : pts) {
      lx = std::min(lx, p.x);
      hx = std::max(hx, p.x);
      ly = std::min(ly, p.y);
      hy = std::max(hy, p.y);
    }
    scan_len = (m.scan.x != 0 ? hx - lx : hy - ly) + 1;
  }
  std::size_t first = m.bits.find('1');
  std::size_t last = m.bits.rfind('1');
  auto at = [&](std::size_t idx) {
    std::int64_t i = static_cast<std::int64_t>(idx) % scan_len;
    std::int64_t j = static_cast<std::int64_t>(idx) / scan_len;
    return Vec{m.corner.x + m.scan.x * i + m.sweep.x * j,
               m.corner.y + m.scan.y * i + m.sweep.y * j};
  };
  e.head = at(first);
  e.tail = at(last);
  return e;
}

bool oracle_mirror(const std::vector<Vec> &pts) {
  // Exhaust every half-integer axis across the bounding box.
  std::int64_t lx = pts[0].x, hx = pts[0].x;
  for (const Vec &p : pts) {
    lx = std::min(lx, p.x);
    hx = std::max(hx, p.x);
  }
  for (std::int64_t axis2 = 2 * lx; axis2 <= 2 * hx; ++axis2) {
    bool ok = true;
    for (const Vec &p : pts)
      if (!std::count(pts.begin(), pts.end(), Vec{axis2 - p.x, p.y})) ok = false;
    if (ok) return true;
  }
  return false;
}

std::vector<Vec> local_view(const Configuration &c, ScanSide side) {
  Election e = agree_frame(c, side);
  REQUIRE(!e.symmetric);
  std::vector<Vec> v;
  for (const Vec &p : c.points()) v.push_back(e.frame.to_local(p));
  std::sort(v.begin(), v.end());
  return v;
}

struct SplitMix {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

}  // namespace

TEST_CASE("smallest enclosing rectangle") {
  CHECK(smallest_enclosing_rect(cfg({{0, 0}})) == Rect{0, 0, 0, 0});
  CHECK(smallest_enclosing_rect(cfg({{0, 0}, {1, 0}, {1, 2}})) == Rect{0, 1, 0, 2});
  CHECK(smallest_enclosing_rect(cfg({{-3, 4}, {2, -1}})) == Rect{-3, 2, -1, 4});
  CHECK_THROWS_WITH(smallest_enclosing_rect(Configuration{}), "empty configuration");
}

TEST_CASE("scan strings follow the raster") {
  Configuration c = cfg({{0, 0}, {1, 0}, {1, 2}});
  CHECK(scan_string(c, {0, 0}, {1, 0}, {0, 1}).to_string() == "110001");
  CHECK(scan_string(c, {1, 0}, {-1, 0}, {0, 1}).to_string() == "110010");
  CHECK(scan_string(cfg({{0, 0}}), {0, 0}, {1, 0}, {0, 1}).to_string() == "1");
  CHECK_THROWS(scan_string(c, {5, 5}, {1, 0}, {0, 1}));
}

TEST_CASE("scan string length and popcount") {
  SplitMix rng{7};
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Vec> pts;
    std::int64_t k = 2 + static_cast<std::int64_t>(rng.next() % 8);
    while (static_cast<std::int64_t>(pts.size()) < k) {
      Vec p{static_cast<std::int64_t>(rng.next() % 6),
            static_cast<std::int64_t>(rng.next() % 6)};
      if (!std::count(pts.begin(), pts.end(), p)) pts.push_back(p);
    }
    Configuration c = cfg(pts);
    Rect r = smallest_enclosing_rect(c);
    for (const BitString &s : candidate_strings(c)) {
      CHECK(static_cast<std::int64_t>(s.bits.size()) == r.point_count());
      CHECK(std::count(s.bits.begin(), s.bits.end(), 1) == static_cast<std::int64_t>(k));
    }
  }
}

TEST_CASE("candidate families by shape") {
  CHECK(candidate_strings(cfg({{0, 0}})).size() == 1);
  CHECK(candidate_strings(cfg({{0, 0}, {2, 0}})).size() == 2);
  // 3x2-point rectangle: four strings, scanned along the 2-point side.
  Configuration rect = cfg({{0, 0}, {2, 0}, {1, 1}});
  auto strings = candidate_strings(rect, ScanSide::Short);
  CHECK(strings.size() == 4);
  for (const BitString &s : strings) CHECK(s.scan_dir.x == 0);  // short side is vertical
  // Full 2x2-point square: eight strings, all ones.
  auto sq = candidate_strings(cfg({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(sq.size() == 8);
  for (const BitString &s : sq) CHECK(s.to_string() == "1111");
}

TEST_CASE("frame election") {
  SUBCASE("bent triple elects the corner of the maximal string") {
    Election e = agree_frame(cfg({{0, 0}, {1, 0}, {1, 2}}));
    REQUIRE(!e.symmetric);
    CHECK(e.frame.origin == Vec{1, 0});
    CHECK(e.frame.x_dir == Vec{-1, 0});
    CHECK(e.frame.y_dir == Vec{0, 1});
  }
  SUBCASE("L in a square ties") {
    Election e = agree_frame(cfg({{0, 0}, {1, 0}, {1, 1}}));
    CHECK(e.symmetric);
    REQUIRE(e.witness.has_value());
    CHECK(e.witness->first.to_string() == "1110");
    CHECK(e.witness->first.bits == e.witness->second.bits);
  }
  SUBCASE("mirror-symmetric line ties") {
    Election e = agree_frame(cfg({{0, 0}, {2, 0}}));
    CHECK(e.symmetric);
  }
  SUBCASE("asymmetric line is provisional in y") {
    Election e = agree_frame(cfg({{0, 0}, {1, 0}, {3, 0}}));
    REQUIRE(!e.symmetric);
    CHECK(e.provisional_y);
    CHECK(e.frame.x_dir.y == 0);  // x runs along the line
  }
}

TEST_CASE("head and tail sit at the string extremes") {
  Configuration c = cfg({{0, 0}, {1, 0}, {1, 2}});
  Election e = agree_frame(c);
  REQUIRE(!e.symmetric);
  auto ht = head_tail(c, e.frame);
  CHECK(ht.first == Vec{1, 0});
  CHECK(ht.second == Vec{1, 2});
  CHECK(e.head_pos == ht.first);
  CHECK(e.tail_pos == ht.second);

  auto single = head_tail(cfg({{4, 4}}), Frame{{4, 4}, {1, 0}, {0, 1}});
  CHECK(single.first == single.second);
}

TEST_CASE("vertical reflection axis") {
  Frame id{};
  CHECK(vertical_reflection_axis2(cfg({{0, 0}, {2, 0}, {1, 3}}), id) == 2);  // axis x=1
  CHECK(!vertical_reflection_axis2(cfg({{0, 0}, {1, 0}, {1, 2}}), id).has_value());
  CHECK(vertical_reflection_axis2(cfg({{0, 0}}), id) == 0);
}

TEST_CASE("coordinate maps invert each other") {
  Frame f{{1, 0}, {-1, 0}, {0, 1}};
  CHECK(f.to_local({1, 0}) == Vec{0, 0});
  CHECK(f.to_local({0, 2}) == Vec{1, 2});
  SplitMix rng{3};
  for (int i = 0; i < 100; ++i) {
    Frame g{{static_cast<std::int64_t>(rng.next() % 21) - 10,
             static_cast<std::int64_t>(rng.next() % 21) - 10},
            {0, 0},
            {0, 0}};
    int o = static_cast<int>(rng.next() % 4);
    const Vec dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    g.x_dir = dirs[o];
    g.y_dir = (o < 2) ? Vec{0, 1} : Vec{1, 0};
    Vec p{static_cast<std::int64_t>(rng.next() % 41) - 20,
          static_cast<std::int64_t>(rng.next() % 41) - 20};
    CHECK(g.to_global(g.to_local(p)) == p);
    CHECK(g.to_local(g.origin) == Vec{0, 0});
  }
}

TEST_CASE("election is intrinsic under grid isometries") {
  SplitMix rng{11};
  auto transform = [](const std::vector<Vec> &pts, int which, Vec shift) {
    std::vector<Vec> out;
    for (const Vec &p : pts) {
      Vec q = p;
      switch (which % 4) {  // rotations
        case 1: q = {-p.y, p.x}; break;
        case 2: q = {-p.x, -p.y}; break;
        case 3: q = {p.y, -p.x}; break;
        default: break;
      }
      if (which >= 4) q = {-q.x, q.y};  // reflection
      out.push_back(q + shift);
    }
    return out;
  };
  int tested = 0;
  for (int iter = 0; iter < 200 && tested < 60; ++iter) {
    std::vector<Vec> pts;
    std::int64_t k = 3 + static_cast<std::int64_t>(rng.next() % 4);
    while (static_cast<std::int64_t>(pts.size()) < k) {
      Vec p{static_cast<std::int64_t>(rng.next() % 5),
            static_cast<std::int64_t>(rng.next() % 5)};
      if (!std::count(pts.begin(), pts.end(), p)) pts.push_back(p);
    }
    Configuration c = cfg(pts);
    if (agree_frame(c).symmetric) continue;
    ++tested;
    std::vector<Vec> base = local_view(c, ScanSide::Short);
    for (int which = 0; which < 8; ++which) {
      Vec shift{static_cast<std::int64_t>(rng.next() % 9) - 4,
                static_cast<std::int64_t>(rng.next() % 9) - 4};
      Configuration t = cfg(transform(pts, which, shift));
      CHECK(local_view(t, ScanSide::Short) == base);
    }
  }
  CHECK(tested >= 50);
}

TEST_CASE("election and mirror agree with the brute-force oracle on small boxes") {
  // 3x3-point box, k in [3,5]; the full 4x4 sweep runs in the acceptance
  // suite.
  std::vector<Vec> cells;
  for (std::int64_t y = 0; y < 3; ++y)
    for (std::int64_t x = 0; x < 3; ++x) cells.push_back({x, y});
  const std::size_t n = cells.size();
  int checked = 0;
  for (std::size_t mask = 0; mask < (1u << n); ++mask) {
    int bits = __builtin_popcount(static_cast<unsigned>(mask));
    if (bits < 3 || bits > 5) continue;
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) pts.push_back(cells[i]);
    Configuration c = cfg(pts);

    for (ScanSide side : {ScanSide::Short, ScanSide::Long}) {
      OracleElection oe = oracle_elect(pts, side == ScanSide::Short);
      Election e = agree_frame(c, side);
      REQUIRE(e.symmetric == oe.symmetric);
      if (!e.symmetric) {
        CHECK(e.frame.origin == oe.corner);
        CHECK(e.frame.x_dir == oe.scan);
        CHECK(e.frame.y_dir == oe.sweep);
        CHECK(e.head_pos == oe.head);
        CHECK(e.tail_pos == oe.tail);
        auto ht = head_tail(c, e.frame);
        CHECK(ht.first == oe.head);
        CHECK(ht.second == oe.tail);
      }
    }
    CHECK(vertical_reflection_axis2(c, Frame{}).has_value() == oracle_mirror(pts));
    ++checked;
  }
  CHECK(checked == 84 + 126 + 126);
}

TEST_CASE("head and tail are raster extremal") {
  SplitMix rng{23};
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<Vec> pts;
    std::int64_t k = 3 + static_cast<std::int64_t>(rng.next() % 5);
    while (static_cast<std::int64_t>(pts.size()) < k) {
      Vec p{static_cast<std::int64_t>(rng.next() % 7),
            static_cast<std::int64_t>(rng.next() % 7)};
      if (!std::count(pts.begin(), pts.end(), p)) pts.push_back(p);
    }
    Configuration c = cfg(pts);
    Election e = agree_frame(c);
    if (e.symmetric) continue;
    BitString s = scan_string(c, e.frame.origin, e.frame.x_dir, e.frame.y_dir);
    std::string str = s.to_string();
    std::size_t first = str.find('1'), last = str.rfind('1');
    Rect r = smallest_enclosing_rect(c);
    std::int64_t scan_len = (e.frame.x_dir.x != 0 ? r.width() : r.height()) + 1;
    Vec head_l = e.frame.to_local(e.head_pos);
    Vec tail_l = e.frame.to_local(e.tail_pos);
    CHECK(head_l.y * scan_len + head_l.x == static_cast<std::int64_t>(first));
    CHECK(tail_l.y * scan_len + tail_l.x == static_cast<std::int64_t>(last));
  }
}
