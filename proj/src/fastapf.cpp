#include "apf/fastapf.hpp"

#include <algorithm>

namespace apf {

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

std::int64_t sgn(std::int64_t v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

}  // namespace

const char *procedure_name(ProcedureId p) {
  switch (p) {
    case ProcedureId::Done: return "done";
    case ProcedureId::I: return "proc1";
    case ProcedureId::II: return "proc2";
    case ProcedureId::III: return "proc3";
    case ProcedureId::IV: return "proc4";
    case ProcedureId::V: return "proc5";
    case ProcedureId::VI: return "proc6";
  }
  return "?";
}

Configuration LitSnapshot::config() const {
  std::vector<Vec> pts;
  pts.reserve(entries.size());
  for (const LitEntry &e : entries) pts.push_back(e.pos);
  return Configuration(std::move(pts));
}

Light LitSnapshot::light_at(const Vec &p) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), p,
                             [](const LitEntry &e, const Vec &q) { return e.pos < q; });
  if (it == entries.end() || it->pos != p)
    throw std::invalid_argument("no robot at queried position");
  return it->light;
}

std::vector<Vec> LitSnapshot::head_positions() const {
  std::vector<Vec> out;
  for (const LitEntry &e : entries)
    if (e.light == Light::Head) out.push_back(e.pos);
  return out;
}

Frame frame_fastapf(const LitSnapshot &snap) {
  std::vector<Vec> heads = snap.head_positions();
  Configuration cfg = snap.config();
  if (heads.empty()) {
    Election e = agree_frame(cfg, ScanSide::Long);
    if (e.symmetric) throw std::runtime_error("unresolvable symmetry in snapshot");
    return e.frame;
  }
  if (heads.size() > 1) throw std::runtime_error("more than one head light");

  const Vec h = heads[0];
  Rect r = smallest_enclosing_rect(cfg);
  bool on_x_side = h.y == r.min_y || h.y == r.max_y;
  bool on_y_side = h.x == r.min_x || h.x == r.max_x;
  if (!on_x_side && !on_y_side) throw std::runtime_error("invalid head placement");

  if (r.is_corner(h)) {
    Vec dx{h.x == r.min_x ? 1 : -1, 0};
    Vec dy{0, h.y == r.min_y ? 1 : -1};
    std::int64_t lx = r.width(), ly = r.height();
    if (lx > ly) return Frame{h, dx, dy};
    if (ly > lx) return Frame{h, dy, dx};
    // Square corner: the strictly larger of the two scans from the head
    // decides the axis.
    BitString s1 = scan_string(cfg, h, dx, dy);
    BitString s2 = scan_string(cfg, h, dy, dx);
    return s2 < s1 ? Frame{h, dx, dy} : Frame{h, dy, dx};
  }

  // Head strictly inside one side: the origin is the nearer corner of that
  // side, broken by the larger scan when the head sits dead center.
  Vec c1, c2, along;
  if (on_x_side) {
    c1 = {r.min_x, h.y};
    c2 = {r.max_x, h.y};
    along = {1, 0};
  } else {
    c1 = {h.x, r.min_y};
    c2 = {h.x, r.max_y};
    along = {0, 1};
  }
  std::int64_t d1 = manhattan(h, c1), d2 = manhattan(h, c2);
  Vec corner, scan;
  if (d1 != d2) {
    corner = d1 < d2 ? c1 : c2;
    scan = d1 < d2 ? along : along * -1;
  } else {
    Vec in1 = on_x_side ? Vec{0, h.y == r.min_y ? 1 : -1} : Vec{h.x == r.min_x ? 1 : -1, 0};
    BitString s1 = scan_string(cfg, c1, along, in1);
    BitString s2 = scan_string(cfg, c2, along * -1, in1);
    corner = s2 < s1 ? c1 : c2;
    scan = s2 < s1 ? along : along * -1;
  }
  Vec sweep = on_x_side ? Vec{0, corner.y == r.min_y ? 1 : -1}
                        : Vec{corner.x == r.min_x ? 1 : -1, 0};
  return Frame{corner, scan, sweep};
}

Vec tail_fastapf(const LitSnapshot &snap, const Frame &frame) {
  if (snap.head_positions().empty()) {
    Election e = agree_frame(snap.config(), ScanSide::Long);
    if (e.symmetric) throw std::runtime_error("unresolvable symmetry in snapshot");
    return e.tail_pos;
  }
  // Rightmost robot of the topmost horizontal line, in frame coordinates.
  bool found = false;
  Vec best;
  for (const LitEntry &e : snap.entries) {
    Vec l = frame.to_local(e.pos);
    if (!found || l.y > best.y || (l.y == best.y && l.x > best.x)) {
      best = l;
      found = true;
    }
  }
  return frame.to_global(best);
}

FastView resolve_view(const LitSnapshot &snap) {
  FastView v;
  std::vector<Vec> heads = snap.head_positions();
  v.head_lit = !heads.empty();
  if (v.head_lit) {
    v.frame = frame_fastapf(snap);
    v.head = heads[0];
  } else {
    Election e = agree_frame(snap.config(), ScanSide::Long);
    if (e.symmetric) throw std::runtime_error("unresolvable symmetry in snapshot");
    v.frame = e.frame;
    v.head = e.head_pos;
  }
  v.tail = tail_fastapf(snap, v.frame);
  return v;
}

ConditionVector eval_conditions(const LitSnapshot &snap, const TargetPattern &pattern,
                                const FastView &view) {
  ConditionVector cv;
  cv.k = static_cast<std::int64_t>(snap.entries.size());

  std::vector<Vec> local;
  local.reserve(snap.entries.size());
  for (const LitEntry &e : snap.entries) local.push_back(view.frame.to_local(e.pos));
  std::sort(local.begin(), local.end());

  Vec head_l = view.frame.to_local(view.head);
  Vec tail_l = view.frame.to_local(view.tail);
  const std::vector<Vec> &tpts = pattern.points.points();
  const Vec &t_first = pattern.order.front();
  const Vec &t_last = pattern.order.back();

  cv.c0 = local == tpts;
  cv.c1 = erase_one(local, head_l) == erase_one(tpts, t_first);
  cv.c2 = erase_one(local, tail_l) == erase_one(tpts, t_last);
  cv.c3 = erase_one(erase_one(local, head_l), tail_l) ==
          erase_one(erase_one(tpts, t_first), t_last);
  cv.c4 = view.head_lit;

  Configuration cfg = snap.config();
  Rect r = smallest_enclosing_rect(cfg);
  cv.c5 = view.head_lit && r.is_corner(view.head);

  cv.c6 = true;
  for (const LitEntry &e : snap.entries) {
    if (e.pos == view.head || e.pos == view.tail) continue;
    Vec l = view.frame.to_local(e.pos);
    if (e.light != Light::Line && !saturated(local, pattern, l.y)) cv.c6 = false;
  }

  std::vector<Vec> rest = erase_one(local, tail_l);
  for (const Vec &p : rest) {
    cv.rest_max_x = std::max(cv.rest_max_x, p.x);
    cv.rest_max_y = std::max(cv.rest_max_y, p.y);
  }
  cv.staging = {std::max({cv.rest_max_x + 1, pattern.width() + 1, cv.k}),
                std::max(cv.rest_max_y, pattern.height())};
  cv.c7 = tail_l.x >= cv.staging.x && tail_l.y >= cv.staging.y;
  return cv;
}

ProcedureId dispatch(const ConditionVector &cv) {
  if (cv.c0) return ProcedureId::Done;
  if (cv.c1 && !cv.c2) return ProcedureId::II;
  if ((cv.c2 && !cv.c1) || (cv.c4 && cv.c5 && cv.c3)) return ProcedureId::III;
  if (!(cv.c4 && cv.c5) && (!cv.c3 || (cv.c3 && !cv.c1 && !cv.c2))) return ProcedureId::I;
  if (cv.c4 && cv.c5 && !cv.c3 && !cv.c7) return ProcedureId::IV;
  if (cv.c4 && cv.c5 && !cv.c3 && cv.c7 && !cv.c6) return ProcedureId::V;
  if (cv.c4 && cv.c5 && !cv.c3 && cv.c7 && cv.c6) return ProcedureId::VI;
  throw std::logic_error("dispatcher hole");
}

Action compute_fastapf(const LitSnapshot &snap, const TargetPattern &pattern, const Vec &self) {
  FastView view = resolve_view(snap);
  const Frame &f = view.frame;

  std::vector<Vec> local;
  local.reserve(snap.entries.size());
  for (const LitEntry &e : snap.entries) local.push_back(f.to_local(e.pos));
  std::sort(local.begin(), local.end());

  Vec self_l = f.to_local(self);
  if (!has(local, self_l)) throw std::invalid_argument("executing robot not in snapshot");
  Light self_light = snap.light_at(self);

  bool is_head = self == view.head;
  bool is_tail = self == view.tail;
  bool inner = !is_head && !is_tail;

  // A spent line light goes off as soon as the robot's line is saturated, in
  // whichever procedure the rest of the swarm has moved on to.
  if (inner && self_light == Light::Line && saturated(local, pattern, self_l.y))
    return Action::light(Light::Off);

  ConditionVector cv = eval_conditions(snap, pattern, view);
  ProcedureId proc = dispatch(cv);

  Action a = Action::stay();
  switch (proc) {
    case ProcedureId::Done:
      if (is_head && self_light == Light::Head) return Action::light(Light::Off);
      break;

    case ProcedureId::I:
      if (!is_head) break;
      if (self_light != Light::Head) return Action::light(Light::Head);
      if (self_l != Vec{0, 0}) a = Action::step({-1, 0});
      break;

    case ProcedureId::II: {
      if (!is_head) break;
      const Vec &t1 = pattern.order.front();
      if (self_l == t1) {
        if (self_light != Light::Off) return Action::light(Light::Off);
        break;
      }
      if (self_l.y != t1.y)
        a = Action::step({0, sgn(t1.y - self_l.y)});
      else
        a = Action::step({sgn(t1.x - self_l.x), 0});
      break;
    }

    case ProcedureId::III: {
      if (!is_tail) break;
      const Vec &tk = pattern.order.back();
      if (self_l == tk) break;
      if (self_l.y == tk.y)
        a = Action::step({sgn(tk.x - self_l.x), 0});
      else if (self_l.y < tk.y)
        a = Action::step({0, 1});
      else if (self_l.x != tk.x)
        a = Action::step({sgn(tk.x - self_l.x), 0});
      else
        a = Action::step({0, -1});
      break;
    }

    case ProcedureId::IV:
      if (!is_tail) break;
      if (self_l.x < cv.staging.x)
        a = Action::step({1, 0});
      else if (self_l.y < cv.staging.y)
        a = Action::step({0, 1});
      break;

    case ProcedureId::V: {
      if (!inner || self_light != Light::Off) break;
      if (saturated(local, pattern, self_l.y)) break;
      std::int64_t below = 0, left = 0;
      for (const Vec &p : local) {
        if (p.y < self_l.y) ++below;
        if (p.y == self_l.y && p.x < self_l.x) ++left;
      }
      std::int64_t column = below + left;  // v-th vertical line is x = v-1
      if (self_l.x == column) return Action::light(Light::Line);
      std::int64_t d = sgn(column - self_l.x);
      if (!has(local, {self_l.x + d, self_l.y})) a = Action::step({d, 0});
      break;
    }

    case ProcedureId::VI: {
      if (!inner) break;
      if (saturated(local, pattern, self_l.y)) {
        if (self_light == Light::Line) return Action::light(Light::Off);
        std::int64_t rank = 0;
        for (const Vec &p : local)
          if (p.y == self_l.y && p.x < self_l.x) ++rank;
        std::vector<Vec> line_targets = pattern.targets_on_line(self_l.y);
        if (rank >= static_cast<std::int64_t>(line_targets.size())) break;
        const Vec &t = line_targets[static_cast<std::size_t>(rank)];
        if (self_l == t) break;
        std::int64_t d = sgn(t.x - self_l.x);
        if (!has(local, {self_l.x + d, self_l.y})) a = Action::step({d, 0});
      } else {
        if (self_light != Light::Line) break;
        std::int64_t column_rank = self_l.x;  // t_{x+1}, 0-based index x
        if (column_rank >= static_cast<std::int64_t>(pattern.order.size())) break;
        const Vec &t = pattern.order[static_cast<std::size_t>(column_rank)];
        if (self_l.y == t.y) break;
        std::int64_t d = sgn(t.y - self_l.y);
        if (!has(local, {self_l.x, self_l.y + d})) a = Action::step({0, d});
      }
      break;
    }
  }

  if (!a.move || (a.dir.x == 0 && a.dir.y == 0)) return Action::stay();
  return Action::step(f.x_dir * a.dir.x + f.y_dir * a.dir.y);
}

}  // namespace apf
