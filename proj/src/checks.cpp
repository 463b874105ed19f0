#include "apf/checks.hpp"

#include <algorithm>
#include <map>

#include "apf/fastapf.hpp"
#include "apf/moveopt.hpp"

namespace apf {

namespace {

struct Replay {
  std::vector<Vec> pos;
  std::vector<Light> light;

  explicit Replay(const Trace &t) : pos(t.initial), light(t.initial.size(), Light::Off) {}

  bool occupied(const Vec &p) const {
    return std::find(pos.begin(), pos.end(), p) != pos.end();
  }
  void apply(const Event &e) {
    std::size_t r = static_cast<std::size_t>(e.robot);
    if (e.kind == Event::Kind::MoveApplied) pos[r] = e.pos;
    if (e.kind == Event::Kind::LightSet) light[r] = e.light;
  }
  Configuration config() const { return Configuration(std::vector<Vec>(pos)); }
  LitSnapshot lit() const {
    LitSnapshot s;
    for (std::size_t i = 0; i < pos.size(); ++i) s.entries.push_back({pos[i], light[i]});
    std::sort(s.entries.begin(), s.entries.end(),
              [](const LitEntry &a, const LitEntry &b) { return a.pos < b.pos; });
    return s;
  }
};

void issue(CheckReport &r, std::int64_t idx, std::string what) {
  r.issues.push_back({std::move(what), idx});
}

std::string pt(const Vec &v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

}  // namespace

CheckReport check_replay(const Trace &trace) {
  CheckReport rep{"replay", {}};
  Replay st(trace);
  std::int64_t prev_step = -1;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const Event &e = trace.events[i];
    std::size_t r = static_cast<std::size_t>(e.robot);
    std::int64_t idx = static_cast<std::int64_t>(i);
    if (r >= st.pos.size()) {
      issue(rep, idx, "unknown robot id " + std::to_string(e.robot));
      continue;
    }
    if (e.step <= prev_step) issue(rep, idx, "event steps not strictly increasing");
    prev_step = e.step;
    switch (e.kind) {
      case Event::Kind::Look:
      case Event::Kind::Noop:
        if (e.pos != st.pos[r] || e.light != st.light[r])
          issue(rep, idx, "recorded state differs from replayed state");
        break;
      case Event::Kind::MoveApplied:
        if (manhattan(st.pos[r], e.pos) != 1)
          issue(rep, idx, "move is not a unit grid step " + pt(st.pos[r]) + "->" + pt(e.pos));
        st.apply(e);
        break;
      case Event::Kind::LightSet:
        if (e.pos != st.pos[r]) issue(rep, idx, "light event moved the robot");
        st.apply(e);
        break;
    }
  }
  if (!trace.final_pos.empty() && trace.final_pos != st.pos)
    issue(rep, static_cast<std::int64_t>(trace.events.size()) - 1,
          "recorded final positions differ from replayed final positions");
  return rep;
}

CheckReport check_collisions(const Trace &trace) {
  CheckReport rep{"collisions", {}};
  Replay st(trace);

  // Decision-to-application edge occupancy, for transit-visibility checks.
  struct EdgeUse {
    Vec a, b;  // normalized endpoints
    std::int64_t from_step, to_step;
    int robot;
  };
  std::vector<EdgeUse> uses;
  std::vector<std::int64_t> open_look(st.pos.size(), -1);

  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const Event &e = trace.events[i];
    std::size_t r = static_cast<std::size_t>(e.robot);
    std::int64_t idx = static_cast<std::int64_t>(i);
    if (r >= st.pos.size()) continue;
    if (e.kind == Event::Kind::Look) {
      open_look[r] = e.step;
      continue;
    }
    if (e.kind == Event::Kind::MoveApplied) {
      if (st.occupied(e.pos))
        issue(rep, idx,
              "robot " + std::to_string(e.robot) + " moved onto occupied point " + pt(e.pos));
      if (trace.transit_mode && open_look[r] >= 0) {
        Vec a = st.pos[r], b = e.pos;
        if (b < a) std::swap(a, b);
        uses.push_back({a, b, open_look[r], e.step, e.robot});
      }
    }
    if (e.kind != Event::Kind::Look) open_look[r] = -1;
    st.apply(e);
  }

  if (trace.transit_mode) {
    std::sort(uses.begin(), uses.end(), [](const EdgeUse &x, const EdgeUse &y) {
      if (x.a != y.a) return x.a < y.a;
      if (x.b != y.b) return x.b < y.b;
      return x.from_step < y.from_step;
    });
    for (std::size_t i = 1; i < uses.size(); ++i) {
      const EdgeUse &p = uses[i - 1], &q = uses[i];
      if (p.a == q.a && p.b == q.b && q.from_step < p.to_step)
        issue(rep, -1,
              "robots " + std::to_string(p.robot) + " and " + std::to_string(q.robot) +
                  " overlap on edge " + pt(p.a) + "-" + pt(p.b));
    }
  }
  return rep;
}

CheckReport check_frame_stability(const Trace &trace, const TargetPattern &pattern) {
  CheckReport rep{"frame_stability", {}};
  Replay st(trace);

  if (trace.algo == Algo::MoveOpt) {
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const Event &e = trace.events[i];
      std::int64_t idx = static_cast<std::int64_t>(i);
      if (e.kind != Event::Kind::MoveApplied) {
        st.apply(e);
        continue;
      }
      Election pre = agree_frame(st.config(), ScanSide::Short);
      if (pre.symmetric) {
        issue(rep, idx, "asymmetry lost before applied move");
        st.apply(e);
        continue;
      }
      std::vector<Vec> local;
      for (const Vec &p : st.pos) local.push_back(pre.frame.to_local(p));
      std::sort(local.begin(), local.end());
      Vec head_l = pre.frame.to_local(pre.head_pos);
      Vec tail_l = pre.frame.to_local(pre.tail_pos);
      PredicateVector sv = eval_predicates(local, pattern, head_l, tail_l);
      PhaseId phase = classify_phase(sv);

      std::size_t r = static_cast<std::size_t>(e.robot);
      bool mover_is_tail = st.pos[r] == pre.tail_pos;
      Vec old_rect_far = pre.frame.to_global({sv.n, 0});  // far corner of the bottom side
      bool handover = phase == PhaseId::P3 && sv.s8 && mover_is_tail && tail_l.x == 0 &&
                      pre.frame.to_local(e.pos) == Vec{-1, 0} + Vec{0, tail_l.y};

      st.apply(e);
      Election post = agree_frame(st.config(), ScanSide::Short);
      if (post.symmetric) {
        issue(rep, idx, "asymmetry lost after applied move");
        continue;
      }
      if (phase != PhaseId::P1 && phase != PhaseId::P2 && phase != PhaseId::P3) continue;
      if (pre.provisional_y) continue;  // line frame: the y-axis is determined by this move
      if (handover) {
        if (post.frame.origin != old_rect_far)
          issue(rep, idx, "mirror hand-over did not re-elect the far corner");
      } else if (post.frame != pre.frame) {
        issue(rep, idx, "frame changed across " + std::string(phase_name(phase)) + " move");
      }
    }
    return rep;
  }

  // Luminous runs: the frame must not change while the head light is on.
  bool head_on = false;
  int head_robot = -1;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const Event &e = trace.events[i];
    std::int64_t idx = static_cast<std::int64_t>(i);
    if (e.kind == Event::Kind::LightSet && e.light == Light::Head) {
      head_on = true;
      head_robot = e.robot;
      st.apply(e);
      continue;
    }
    if (e.kind == Event::Kind::LightSet && head_on && e.robot == head_robot &&
        e.light == Light::Off) {
      head_on = false;
      st.apply(e);
      continue;
    }
    if (e.kind != Event::Kind::MoveApplied || !head_on) {
      st.apply(e);
      continue;
    }
    Frame pre = frame_fastapf(st.lit());
    st.apply(e);
    Frame post = frame_fastapf(st.lit());
    if (post != pre) issue(rep, idx, "frame changed while head light on");
  }
  return rep;
}

CheckReport check_formation(const Trace &trace, const TargetPattern &pattern) {
  CheckReport rep{"formation", {}};
  Replay st(trace);
  for (const Event &e : trace.events) st.apply(e);

  Election e = agree_frame(st.config(),
                           trace.algo == Algo::MoveOpt ? ScanSide::Short : ScanSide::Long);
  if (e.symmetric) {
    issue(rep, -1, "final configuration is symmetric");
    return rep;
  }
  std::vector<Vec> local;
  for (const Vec &p : st.pos) local.push_back(e.frame.to_local(p));
  std::sort(local.begin(), local.end());
  if (local != pattern.points.points())
    issue(rep, -1, "final configuration differs from the target pattern");
  if (trace.algo == Algo::FastApf)
    for (std::size_t i = 0; i < st.light.size(); ++i)
      if (st.light[i] != Light::Off)
        issue(rep, -1, "robot " + std::to_string(i) + " finished with its light on");
  return rep;
}

CheckReport check_light_discipline(const Trace &trace) {
  CheckReport rep{"light_discipline", {}};
  Replay st(trace);
  int head_on_events = 0, head_off_events = 0;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const Event &e = trace.events[i];
    std::int64_t idx = static_cast<std::int64_t>(i);
    if (e.kind == Event::Kind::LightSet) {
      std::size_t r = static_cast<std::size_t>(e.robot);
      Light before = st.light[r];
      if (e.light == Light::Head) ++head_on_events;
      if (before == Light::Head && e.light == Light::Off) ++head_off_events;
      if ((before == Light::Head && e.light == Light::Line) ||
          (before == Light::Line && e.light == Light::Head))
        issue(rep, idx, "robot switched directly between head and line");
      if (trace.algo == Algo::MoveOpt) issue(rep, idx, "light event in an oblivious run");
    }
    st.apply(e);
    int heads = 0;
    for (Light l : st.light)
      if (l == Light::Head) ++heads;
    if (heads > 1) issue(rep, idx, "more than one head light at once");
  }
  if (head_on_events > 1) issue(rep, -1, "head light turned on more than once");
  if (head_off_events > 1) issue(rep, -1, "head light turned off more than once");
  return rep;
}

std::vector<CheckReport> check_all(const Trace &trace, const TargetPattern &pattern) {
  return {check_replay(trace), check_collisions(trace), check_frame_stability(trace, pattern),
          check_formation(trace, pattern), check_light_discipline(trace)};
}

}  // namespace apf
