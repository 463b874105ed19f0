#include "doctest.h"

#include <algorithm>

#include "apf/pattern.hpp"

using namespace apf;

namespace {

Configuration cfg(std::vector<Vec> pts) { return Configuration(std::move(pts)); }

TargetPattern manual_pattern(std::vector<Vec> pts, ScanSide side) {
  TargetPattern t;
  t.points = cfg(std::move(pts));
  t.k = t.points.size();
  t.rect = smallest_enclosing_rect(t.points);
  auto ht = head_tail(t.points, Frame{});
  t.head_target = ht.first;
  t.tail_target = ht.second;
  t.side = side;
  t.order = side == ScanSide::Short ? order_targets_moveopt(t) : order_targets_fastapf(t);
  return t;
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

std::vector<Vec> random_points(SplitMix &rng, std::int64_t k, std::int64_t span) {
  std::vector<Vec> pts;
  while (static_cast<std::int64_t>(pts.size()) < k) {
    Vec p{static_cast<std::int64_t>(rng.next() % (span + 1)),
          static_cast<std::int64_t>(rng.next() % (span + 1))};
    if (!std::count(pts.begin(), pts.end(), p)) pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_CASE("normalization anchors at the origin") {
  SUBCASE("translation only when already canonical") {
    TargetPattern t = normalize_target(cfg({{5, 5}, {6, 5}, {5, 6}}), ScanSide::Short);
    CHECK(t.points == cfg({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(t.head_target == Vec{0, 0});
  }
  SUBCASE("single point") {
    TargetPattern t = normalize_target(cfg({{7, -3}}), ScanSide::Short);
    CHECK(t.points == cfg({{0, 0}}));
    CHECK(t.head_target == t.tail_target);
  }
  SUBCASE("lines re-orient to the required long axis") {
    Configuration line = cfg({{4, 1}, {4, 2}, {4, 3}});
    TargetPattern mo = normalize_target(line, ScanSide::Short);
    CHECK(mo.width() == 0);   // taller side vertical
    CHECK(mo.height() == 2);
    TargetPattern fa = normalize_target(line, ScanSide::Long);
    CHECK(fa.width() == 2);   // longer side horizontal
    CHECK(fa.height() == 0);
  }
  SUBCASE("anchored with every side touched") {
    SplitMix rng{17};
    for (int i = 0; i < 40; ++i) {
      TargetPattern t = normalize_target(cfg(random_points(rng, 5, 8)),
                                         i % 2 ? ScanSide::Short : ScanSide::Long);
      CHECK(t.rect.min_x == 0);
      CHECK(t.rect.min_y == 0);
      if (i % 2)
        CHECK(t.height() >= t.width());
      else
        CHECK(t.width() >= t.height());
    }
  }
}

TEST_CASE("fill order: bottom line left to right, upper lines right to left") {
  // Two targets on the bottom line, two above, tail target top-right.
  TargetPattern t = manual_pattern({{0, 0}, {2, 0}, {1, 1}, {3, 1}}, ScanSide::Short);
  REQUIRE(t.tail_target == Vec{3, 1});
  std::vector<Vec> want{{0, 0}, {2, 0}, {1, 1}, {3, 1}};
  CHECK(t.order == want);

  SUBCASE("all on the bottom line") {
    TargetPattern flat = manual_pattern({{0, 0}, {1, 0}, {3, 0}}, ScanSide::Short);
    std::vector<Vec> w{{0, 0}, {1, 0}, {3, 0}};
    CHECK(flat.order == w);
  }
  SUBCASE("one target per line") {
    TargetPattern tall = manual_pattern({{0, 0}, {0, 1}, {0, 2}}, ScanSide::Short);
    std::vector<Vec> w{{0, 0}, {0, 1}, {0, 2}};
    CHECK(tall.order == w);
  }
  SUBCASE("upper line enumerates right to left") {
    TargetPattern t2 = manual_pattern({{0, 0}, {0, 1}, {2, 1}, {1, 2}}, ScanSide::Short);
    REQUIRE(t2.tail_target == Vec{1, 2});
    std::vector<Vec> w{{0, 0}, {2, 1}, {0, 1}, {1, 2}};
    CHECK(t2.order == w);
  }
}

TEST_CASE("raster order for the luminous algorithm") {
  TargetPattern t = manual_pattern({{0, 0}, {2, 0}, {1, 1}}, ScanSide::Long);
  std::vector<Vec> want{{0, 0}, {2, 0}, {1, 1}};
  CHECK(t.order == want);
  CHECK(t.order.front() == t.head_target);
  CHECK(t.order.back() == t.tail_target);

  SUBCASE("single line is left to right") {
    TargetPattern flat = manual_pattern({{0, 0}, {1, 0}, {4, 0}}, ScanSide::Long);
    std::vector<Vec> w{{0, 0}, {1, 0}, {4, 0}};
    CHECK(flat.order == w);
  }
}

TEST_CASE("orderings are permutations and respect the rank formula") {
  SplitMix rng{29};
  for (int iter = 0; iter < 30; ++iter) {
    std::int64_t k = 4 + static_cast<std::int64_t>(rng.next() % 8);
    TargetPattern mo = normalize_target(cfg(random_points(rng, k, 9)), ScanSide::Short);
    TargetPattern fa = normalize_target(cfg(random_points(rng, k, 9)), ScanSide::Long);

    for (const TargetPattern *t : {&mo, &fa}) {
      std::vector<Vec> sorted = t->order;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == t->points.points());
    }
    // Raster rank: index = targets strictly below + targets left on the line.
    for (std::size_t i = 0; i < fa.order.size(); ++i) {
      const Vec &t = fa.order[i];
      std::int64_t rank = 0;
      for (const Vec &p : fa.points.points()) {
        if (p.y < t.y) ++rank;
        if (p.y == t.y && p.x < t.x) ++rank;
      }
      CHECK(rank == static_cast<std::int64_t>(i));
    }
  }
}

TEST_CASE("saturated lines balance robots against targets") {
  TargetPattern t = manual_pattern({{0, 0}, {1, 0}, {0, 1}, {0, 2}}, ScanSide::Short);
  // n_0 = 2, n_1 = 1, n_2 = 1.
  std::vector<Vec> config{{0, 0}, {2, 0}, {1, 1}, {3, 2}};
  std::sort(config.begin(), config.end());
  CHECK(saturated(config, t, 1));  // two below, one above, matching the targets
  std::vector<Vec> skew{{0, 0}, {1, 0}, {2, 0}, {3, 2}};
  CHECK(!saturated(skew, t, 1));  // three robots below the middle line, targets say two

  SUBCASE("a formed configuration saturates every line") {
    std::vector<Vec> formed = t.points.points();
    for (std::int64_t i = 0; i <= t.height(); ++i) CHECK(saturated(formed, t, i));
  }
  SUBCASE("everything below with short counts is unsaturated") {
    std::vector<Vec> low{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    CHECK(!saturated(low, t, 2));
  }
  SUBCASE("saturation everywhere plus per-line counts means formed line profile") {
    SplitMix rng{41};
    for (int iter = 0; iter < 20; ++iter) {
      TargetPattern p = normalize_target(cfg(random_points(rng, 6, 6)), ScanSide::Long);
      std::vector<Vec> conf = random_points(rng, 6, 6);
      std::sort(conf.begin(), conf.end());
      bool all_sat = true, counts_match = true;
      for (std::int64_t i = 0; i <= std::max<std::int64_t>(p.height(), 6); ++i) {
        if (!saturated(conf, p, i)) all_sat = false;
        std::int64_t robots = 0;
        for (const Vec &q : conf)
          if (q.y == i) ++robots;
        if (robots != p.line_count(i)) counts_match = false;
      }
      CHECK((all_sat && counts_match) == (all_sat && counts_match));
      if (all_sat) CHECK(counts_match);  // saturation everywhere forces the profile
    }
  }
}
