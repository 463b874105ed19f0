#include "apf/moveopt.hpp"

#include <algorithm>

namespace apf {

const char *phase_name(PhaseId p) {
  switch (p) {
    case PhaseId::Done: return "done";
    case PhaseId::P1: return "p1";
    case PhaseId::P2: return "p2";
    case PhaseId::P3: return "p3";
    case PhaseId::P4: return "p4";
    case PhaseId::P5: return "p5";
    case PhaseId::P6: return "p6";
    case PhaseId::P7: return "p7";
    case PhaseId::P8: return "p8";
  }
  return "?";
}

namespace {

bool has(const std::vector<Vec> &sorted, const Vec &p) {
  return std::binary_search(sorted.begin(), sorted.end(), p);
}

std::vector<Vec> erase_one(const std::vector<Vec> &sorted, const Vec &p) {
  std::vector<Vec> out;
  out.reserve(sorted.size());
  for (const Vec &q : sorted)
    if (q != p) out.push_back(q);
  return out;
}

bool set_equal_minus(const std::vector<Vec> &a, const Vec &drop_a, const std::vector<Vec> &b,
                     const Vec &drop_b) {
  return erase_one(a, drop_a) == erase_one(b, drop_b);
}

std::int64_t sgn(std::int64_t v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

struct Extent {
  std::int64_t w = 0, h = 0;
};

Extent extent_of(const std::vector<Vec> &pts) {
  Extent e;
  if (pts.empty()) return e;
  std::int64_t lx = pts[0].x, hx = pts[0].x, ly = pts[0].y, hy = pts[0].y;
  for (const Vec &p : pts) {
    lx = std::min(lx, p.x);
    hx = std::max(hx, p.x);
    ly = std::min(ly, p.y);
    hy = std::max(hy, p.y);
  }
  e.w = hx - lx;
  e.h = hy - ly;
  return e;
}

}  // namespace

FillState fill_state(const std::vector<Vec> &local, const TargetPattern &pattern,
                     const Vec &tail_local) {
  const std::vector<Vec> &order = pattern.order;
  std::int64_t k = static_cast<std::int64_t>(order.size());
  std::vector<Vec> rest = erase_one(local, tail_local);

  FillState fs;
  fs.fill = k - 1;
  for (std::int64_t j = k - 2; j >= 1; --j) {
    if (has(rest, order[j]))
      fs.fill = j;
    else
      break;
  }

  std::vector<Vec> suffix(order.begin() + fs.fill, order.begin() + (k - 1));
  std::sort(suffix.begin(), suffix.end());
  std::vector<Vec> unplaced;
  for (const Vec &p : rest)
    if (!has(suffix, p)) unplaced.push_back(p);

  if (static_cast<std::int64_t>(unplaced.size()) != fs.fill) return fs;

  std::int64_t prefix_hits = 0;
  const Vec *leftover = nullptr;
  for (const Vec &p : unplaced) {
    if (p.y == 0 && p.x >= 0 && p.x <= fs.fill - 2)
      ++prefix_hits;
    else
      leftover = &p;
  }
  if (prefix_hits != fs.fill - 1 || leftover == nullptr) return fs;

  fs.s10 = true;
  fs.mover = *leftover;
  if (fs.fill >= 2) fs.next_target = order[fs.fill - 1];
  return fs;
}

PredicateVector eval_predicates(const std::vector<Vec> &local, const TargetPattern &pattern,
                                const Vec &head_local, const Vec &tail_local) {
  PredicateVector sv;
  sv.k = static_cast<std::int64_t>(local.size());

  Extent cur = extent_of(local);
  sv.n = cur.w;
  sv.m = cur.h;
  sv.N = pattern.width();
  sv.M = pattern.height();

  std::vector<Vec> cprime = erase_one(local, tail_local);
  Extent ce = extent_of(cprime);
  sv.V = ce.h;
  sv.H = ce.w;

  const std::vector<Vec> &tpts = pattern.points.points();
  sv.s0 = local == tpts;
  sv.s1 = cprime == erase_one(tpts, pattern.tail_target);
  sv.s2 = tail_local.x == pattern.tail_target.x;
  sv.s3 = sv.m >= std::max(sv.N, sv.n) + 2;
  sv.s4 = sv.m >= 2 * std::max(sv.M, sv.V);
  sv.s5 = head_local == Vec{0, 0};
  sv.s6 = sv.n >= std::max({sv.N + 1, sv.H + 1, sv.k});
  sv.s7 = set_equal_minus(cprime, head_local, erase_one(tpts, pattern.tail_target),
                          pattern.head_target);
  sv.s8 = vertical_reflection_axis2(Configuration(cprime), Frame{}).has_value();
  sv.s9 = set_equal_minus(local, head_local, tpts, pattern.head_target);
  sv.s10 = fill_state(local, pattern, tail_local).s10;
  return sv;
}

PhaseId classify_phase(const PredicateVector &sv) {
  if (sv.s0) return PhaseId::Done;
  if (sv.s1 && sv.s2) return PhaseId::P8;
  if (sv.s1) return PhaseId::P6;
  if (sv.s7 && !sv.s2 && !sv.s5) return PhaseId::P2;
  if (sv.s7 && !sv.s2 && sv.s5) return PhaseId::P6;
  if (sv.s7 && sv.s2) return PhaseId::P7;
  if (!(sv.s3 && sv.s4)) return PhaseId::P1;
  if (!sv.s5) return PhaseId::P2;
  if (!sv.s6) return PhaseId::P3;
  if (!sv.s10) return PhaseId::P4;
  return PhaseId::P5;
}

Action phase4_action(const std::vector<Vec> &local, const Vec &self_local,
                     const Vec &tail_local) {
  if (self_local == tail_local) return Action::stay();

  std::vector<Vec> axis, off;
  for (const Vec &p : local) {
    if (p == tail_local) continue;
    (p.y == 0 ? axis : off).push_back(p);
  }

  if (self_local.y == 0) {
    bool left_empty = !has(local, {self_local.x - 1, 0});
    bool someone_left = false;
    for (const Vec &p : axis)
      if (p.x < self_local.x) someone_left = true;
    if (left_empty && someone_left) return Action::step({-1, 0});
    return Action::stay();
  }

  if (off.size() < 2) return Action::stay();  // last inner robot waits

  std::int64_t lowest = off.front().y;
  std::int64_t rightmost = off.front().x;
  for (const Vec &p : off) lowest = std::min(lowest, p.y);
  for (const Vec &p : off)
    if (p.y == lowest) rightmost = std::max(rightmost, p.x);
  if (self_local.y != lowest || self_local.x != rightmost) return Action::stay();

  bool compact = true;
  for (std::size_t i = 0; i < axis.size(); ++i)
    if (axis[i] != Vec{static_cast<std::int64_t>(i), 0}) compact = false;
  if (!compact) return Action::stay();

  if (self_local.x < static_cast<std::int64_t>(axis.size())) return Action::step({1, 0});
  return Action::step({0, -1});
}

Action phase5_action(const std::vector<Vec> &local, const TargetPattern &pattern,
                     const Vec &self_local, const Vec &tail_local) {
  FillState fs = fill_state(local, pattern, tail_local);
  if (!fs.s10 || fs.fill < 2 || self_local != fs.mover) return Action::stay();

  const Vec &t = fs.next_target;
  if (self_local == t) return Action::stay();
  if (self_local.y == 0) {
    if (t.x > self_local.x) return Action::step({1, 0});
    return Action::step({0, 1});
  }
  if (self_local.x != t.x) return Action::step({sgn(t.x - self_local.x), 0});
  return Action::step({0, sgn(t.y - self_local.y)});
}

Action compute_moveopt(const Configuration &snapshot, const TargetPattern &pattern,
                       const Vec &self, bool transit_visible) {
  // Movement is treated as non-instantaneous in transit-visibility mode: a
  // robot that sees another robot on an edge waits.
  if (transit_visible) return Action::stay();

  Election e = agree_frame(snapshot, ScanSide::Short);
  if (e.symmetric) throw std::runtime_error("unresolvable symmetry in snapshot");
  const Frame &f = e.frame;

  std::vector<Vec> local;
  local.reserve(snapshot.size());
  for (const Vec &p : snapshot.points()) local.push_back(f.to_local(p));
  std::sort(local.begin(), local.end());

  Vec self_local = f.to_local(self);
  if (!has(local, self_local)) throw std::invalid_argument("executing robot not in snapshot");
  Vec head_local = f.to_local(e.head_pos);
  Vec tail_local = f.to_local(e.tail_pos);

  PredicateVector sv = eval_predicates(local, pattern, head_local, tail_local);
  PhaseId phase = classify_phase(sv);

  Action a = Action::stay();
  switch (phase) {
    case PhaseId::Done:
      break;
    case PhaseId::P1:
      if (self_local == tail_local) a = Action::step({0, 1});
      break;
    case PhaseId::P2:
      if (self_local == head_local) a = Action::step({-1, 0});
      break;
    case PhaseId::P3:
      if (self_local == tail_local) {
        auto axis2 = vertical_reflection_axis2(Configuration(erase_one(local, tail_local)),
                                               Frame{});
        if (sv.s8 && axis2 && 2 * tail_local.x < *axis2)
          a = Action::step({-1, 0});  // exit left; the election hands over
        else
          a = Action::step({1, 0});
      }
      break;
    case PhaseId::P4:
      a = phase4_action(local, self_local, tail_local);
      break;
    case PhaseId::P5:
      a = phase5_action(local, pattern, self_local, tail_local);
      break;
    case PhaseId::P6:
      if (self_local == tail_local)
        a = Action::step({sgn(pattern.tail_target.x - tail_local.x), 0});
      break;
    case PhaseId::P7:
      if (self_local == head_local)
        a = Action::step({sgn(pattern.head_target.x - head_local.x), 0});
      break;
    case PhaseId::P8:
      if (self_local == tail_local)
        a = Action::step({0, sgn(pattern.tail_target.y - tail_local.y)});
      break;
  }

  if (!a.move || (a.dir.x == 0 && a.dir.y == 0)) return Action::stay();
  return Action::step(f.x_dir * a.dir.x + f.y_dir * a.dir.y);
}

}  // namespace apf
