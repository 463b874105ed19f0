#include "apf/engine.hpp"

#include <algorithm>
#include <sstream>

#include "apf/fastapf.hpp"
#include "apf/moveopt.hpp"

namespace apf {

const char *algo_name(Algo a) { return a == Algo::MoveOpt ? "moveopt" : "fastapf"; }

const char *policy_kind_name(SchedulerPolicy::Kind k) {
  switch (k) {
    case SchedulerPolicy::Kind::FSync: return "fsync";
    case SchedulerPolicy::Kind::RoundRobin: return "round_robin";
    case SchedulerPolicy::Kind::RandomAsync: return "random_async";
    case SchedulerPolicy::Kind::AdversarialLag: return "adversarial_lag";
  }
  return "?";
}

SchedulerPolicy::Kind parse_policy_kind(const std::string &name) {
  if (name == "fsync") return SchedulerPolicy::Kind::FSync;
  if (name == "round_robin") return SchedulerPolicy::Kind::RoundRobin;
  if (name == "random_async") return SchedulerPolicy::Kind::RandomAsync;
  if (name == "adversarial_lag") return SchedulerPolicy::Kind::AdversarialLag;
  throw std::invalid_argument("unknown scheduler kind '" + name + "'");
}

namespace {

// Portable deterministic generator (splitmix64).
struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(next() % n); }
};

struct Engine {
  const TargetPattern &pattern;
  Algo algo;
  bool transit_mode;
  bool fsync = false;  // synchronous rounds never expose mid-move state
  std::int64_t k;

  std::vector<Vec> pos;
  std::vector<Light> light;
  struct Pending {
    bool has = false;
    Action action;
  };
  std::vector<Pending> pending;
  std::vector<std::int64_t> last_cycle_done;  // step of last applied action
  std::int64_t step = 0;
  Trace trace;

  Engine(const Configuration &initial, const TargetPattern &pat, Algo a, bool transit)
      : pattern(pat), algo(a), transit_mode(transit),
        k(static_cast<std::int64_t>(initial.size())) {
    pos = initial.points();  // sorted; index = robot id
    light.assign(pos.size(), Light::Off);
    pending.resize(pos.size());
    last_cycle_done.assign(pos.size(), 0);
    trace.algo = a;
    trace.transit_mode = transit;
    trace.initial = pos;
  }

  bool occupied(const Vec &p) const {
    return std::find(pos.begin(), pos.end(), p) != pos.end();
  }

  bool any_pending_move() const {
    for (const Pending &p : pending)
      if (p.has && p.action.move) return true;
    return false;
  }

  void record(Event::Kind kind, int r) {
    trace.events.push_back({step, r, kind, pos[static_cast<std::size_t>(r)],
                            light[static_cast<std::size_t>(r)]});
  }

  Action compute(int r) {
    std::size_t i = static_cast<std::size_t>(r);
    if (algo == Algo::MoveOpt) {
      Configuration snap{std::vector<Vec>(pos)};
      bool transit = transit_mode && !fsync && any_pending_move();
      return compute_moveopt(snap, pattern, pos[i], transit);
    }
    LitSnapshot snap;
    snap.entries.reserve(pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j) snap.entries.push_back({pos[j], light[j]});
    std::sort(snap.entries.begin(), snap.entries.end(),
              [](const LitEntry &a, const LitEntry &b) { return a.pos < b.pos; });
    return compute_fastapf(snap, pattern, pos[i]);
  }

  // One scheduler activation: an idle robot looks and computes, a robot with
  // a pending action applies it atomically.
  void activate(int r) {
    std::size_t i = static_cast<std::size_t>(r);
    ++step;
    if (!pending[i].has) {
      pending[i] = {true, compute(r)};
      record(Event::Kind::Look, r);
      return;
    }
    Action a = pending[i].action;
    pending[i].has = false;
    last_cycle_done[i] = step;
    if (a.set_light) {
      light[i] = *a.set_light;
      record(Event::Kind::LightSet, r);
      return;
    }
    if (a.move) {
      Vec to = pos[i] + a.dir;
      if (occupied(to)) {
        record(Event::Kind::Noop, r);
        fail("collision: robot " + std::to_string(r) + " moving into occupied (" +
             std::to_string(to.x) + "," + std::to_string(to.y) + ")");
      }
      pos[i] = to;
      record(Event::Kind::MoveApplied, r);
      return;
    }
    record(Event::Kind::Noop, r);
  }

  [[noreturn]] void fail(const std::string &msg) {
    trace.final_pos = pos;
    throw RunError(msg, trace);
  }

  bool formed() const {
    Configuration cfg{std::vector<Vec>(pos)};
    Election e = agree_frame(cfg, algo == Algo::MoveOpt ? ScanSide::Short : ScanSide::Long);
    if (e.symmetric) return false;
    std::vector<Vec> local;
    local.reserve(pos.size());
    for (const Vec &p : pos) local.push_back(e.frame.to_local(p));
    std::sort(local.begin(), local.end());
    return local == pattern.points.points();
  }

  bool terminated() const {
    for (const Pending &p : pending)
      if (p.has && (p.action.move || p.action.set_light)) return false;
    if (algo == Algo::FastApf)
      for (Light l : light)
        if (l != Light::Off) return false;
    return formed();
  }
};

}  // namespace

RunResult run(const Configuration &initial, const TargetPattern &pattern, Algo algo,
              const SchedulerPolicy &policy, RunLimits limits, bool transit_mode) {
  if (initial.size() < 3) throw std::invalid_argument("need at least 3 robots");
  if (initial.size() != pattern.k)
    throw std::invalid_argument("robot count differs from target count");
  {
    Election e = agree_frame(initial, algo == Algo::MoveOpt ? ScanSide::Short : ScanSide::Long);
    if (e.symmetric) throw std::invalid_argument("symmetric initial configuration");
  }

  Engine eng(initial, pattern, algo, transit_mode);
  eng.fsync = policy.kind == SchedulerPolicy::Kind::FSync;
  std::int64_t k = eng.k;
  std::int64_t max_lag = policy.max_lag > 0 ? policy.max_lag : 8 * k;
  if (max_lag < 4 * k) throw std::invalid_argument("max_lag must be at least 4k");

  Metrics pre = compute_metrics(eng.trace, initial, pattern);  // for the step cap
  std::int64_t cap = limits.step_cap > 0 ? limits.step_cap : 64 * k * pre.Dprime * max_lag;

  SplitMix rng(policy.seed ^ 0xa5a5a5a5a5a5a5a5ull);

  // Adversarial-lag episode state: one victim holds a stale action while the
  // rest of the swarm churns full cycles under it.
  std::int64_t victim = -1;
  std::int64_t churn_left = 0;
  std::int64_t churn_robot = 0;
  std::int64_t episode = 0;

  auto pick = [&]() -> int {
    switch (policy.kind) {
      case SchedulerPolicy::Kind::FSync:
      case SchedulerPolicy::Kind::RoundRobin:
        return 0;  // handled by the drivers below
      case SchedulerPolicy::Kind::RandomAsync: {
        // Fairness backstop: whoever is about to breach the window goes first.
        std::int64_t oldest = 0;
        for (std::int64_t r = 1; r < k; ++r)
          if (eng.last_cycle_done[r] < eng.last_cycle_done[oldest]) oldest = r;
        if (eng.step - eng.last_cycle_done[oldest] >= max_lag - 2 * k)
          return static_cast<int>(oldest);
        return static_cast<int>(rng.below(k));
      }
      case SchedulerPolicy::Kind::AdversarialLag: {
        if (victim < 0) {
          victim = episode % k;
          ++episode;
          churn_left = std::max<std::int64_t>(2 * k, max_lag - 2 * k - 2 - rng.below(k));
          churn_robot = 0;
          return static_cast<int>(victim);  // victim looks (or applies leftovers)
        }
        if (churn_left > 0) {
          std::int64_t r = churn_robot / 2 % (k - 1);
          std::int64_t id = r >= victim ? r + 1 : r;
          ++churn_robot;
          --churn_left;
          return static_cast<int>(id);
        }
        std::int64_t v = victim;
        victim = -1;
        return static_cast<int>(v);  // victim applies its stale action
      }
    }
    return 0;
  };

  bool done = eng.terminated();
  while (!done) {
    if (eng.step >= cap) eng.fail("step cap exceeded (liveness failure)");
    switch (policy.kind) {
      case SchedulerPolicy::Kind::FSync:
        for (std::int64_t r = 0; r < k; ++r) eng.activate(static_cast<int>(r));
        for (std::int64_t r = 0; r < k; ++r) eng.activate(static_cast<int>(r));
        break;
      case SchedulerPolicy::Kind::RoundRobin:
        for (std::int64_t r = 0; r < k && !eng.terminated(); ++r) {
          eng.activate(static_cast<int>(r));
          eng.activate(static_cast<int>(r));
        }
        break;
      default:
        eng.activate(pick());
        break;
    }
    done = eng.terminated();
  }

  eng.trace.final_pos = eng.pos;
  RunResult res;
  res.trace = std::move(eng.trace);
  res.metrics = compute_metrics(res.trace, initial, pattern);
  return res;
}

std::int64_t count_epochs(const Trace &trace, std::size_t k) {
  if (trace.events.empty()) return 0;
  std::vector<int> stage(k, 0);  // 0 awaiting look, 1 awaiting apply, 2 done
  std::int64_t epochs = 0;
  std::size_t done_count = 0;
  for (const Event &e : trace.events) {
    std::size_t r = static_cast<std::size_t>(e.robot);
    if (e.kind == Event::Kind::Look) {
      if (stage[r] == 0) stage[r] = 1;
    } else if (stage[r] == 1) {
      stage[r] = 2;
      ++done_count;
    }
    if (done_count == k) {
      ++epochs;
      std::fill(stage.begin(), stage.end(), 0);
      done_count = 0;
    }
  }
  bool partial = false;
  for (int s : stage)
    if (s != 0) partial = true;
  return epochs + (partial ? 1 : 0);
}

Metrics compute_metrics(const Trace &trace, const Configuration &initial,
                        const TargetPattern &pattern) {
  Metrics m;
  m.k = static_cast<std::int64_t>(initial.size());
  m.per_robot_moves.assign(initial.size(), 0);
  for (const Event &e : trace.events) {
    if (e.kind != Event::Kind::MoveApplied) continue;
    ++m.total_moves;
    ++m.per_robot_moves[static_cast<std::size_t>(e.robot)];
  }
  m.epochs = count_epochs(trace, initial.size());

  // Smallest square holding both the start (in its agreed frame) and the
  // target pattern.
  ScanSide side = trace.algo == Algo::MoveOpt ? ScanSide::Short : ScanSide::Long;
  Election e = agree_frame(initial, side);
  std::vector<Vec> pts;
  for (const Vec &p : initial.points())
    pts.push_back(e.symmetric ? p : e.frame.to_local(p));
  for (const Vec &p : pattern.points.points()) pts.push_back(p);
  std::int64_t lx = pts[0].x, hx = pts[0].x, ly = pts[0].y, hy = pts[0].y;
  for (const Vec &p : pts) {
    lx = std::min(lx, p.x);
    hx = std::max(hx, p.x);
    ly = std::min(ly, p.y);
    hy = std::max(hy, p.y);
  }
  m.D = std::max(hx - lx, hy - ly);
  m.Dprime = std::max(m.D, m.k);
  if (m.Dprime > 0) {
    m.moves_per_dprime = static_cast<double>(m.total_moves) / static_cast<double>(m.Dprime);
    m.epochs_per_dprime = static_cast<double>(m.epochs) / static_cast<double>(m.Dprime);
  }
  return m;
}

static const char *event_kind_name(Event::Kind k) {
  switch (k) {
    case Event::Kind::Look: return "look";
    case Event::Kind::MoveApplied: return "move";
    case Event::Kind::LightSet: return "light";
    case Event::Kind::Noop: return "noop";
  }
  return "?";
}

std::string events_to_text(const Trace &trace) {
  std::ostringstream os;
  for (const Event &e : trace.events)
    os << e.step << ' ' << e.robot << ' ' << event_kind_name(e.kind) << ' ' << e.pos.x << ' '
       << e.pos.y << ' ' << light_name(e.light) << '\n';
  return os.str();
}

std::string write_trace(const Trace &trace) {
  std::ostringstream os;
  os << "# apf-trace 1\n";
  os << "# algo " << algo_name(trace.algo) << "\n";
  os << "# transit " << (trace.transit_mode ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < trace.initial.size(); ++i)
    os << "# init " << i << ' ' << trace.initial[i].x << ' ' << trace.initial[i].y << "\n";
  os << events_to_text(trace);
  return os.str();
}

Trace read_trace(const std::string &text) {
  Trace t;
  std::istringstream is(text);
  std::string line, body;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') {
      body += line;
      body += '\n';
      continue;
    }
    std::istringstream ls(line);
    std::string hash, key;
    ls >> hash >> key;
    if (key == "algo") {
      std::string a;
      ls >> a;
      if (a == "moveopt")
        t.algo = Algo::MoveOpt;
      else if (a == "fastapf")
        t.algo = Algo::FastApf;
      else
        throw std::invalid_argument("unknown algo in trace header: " + a);
    } else if (key == "transit") {
      int v = 0;
      ls >> v;
      t.transit_mode = v != 0;
    } else if (key == "init") {
      std::size_t id;
      Vec p;
      if (!(ls >> id >> p.x >> p.y)) throw std::invalid_argument("bad init line: " + line);
      if (t.initial.size() != id) throw std::invalid_argument("init lines out of order");
      t.initial.push_back(p);
    }
  }
  t.events = events_from_text(body);

  std::vector<Vec> pos = t.initial;
  for (const Event &e : t.events)
    if (e.kind == Event::Kind::MoveApplied) pos[static_cast<std::size_t>(e.robot)] = e.pos;
  t.final_pos = pos;
  return t;
}

std::vector<Event> events_from_text(const std::string &text) {
  std::vector<Event> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Event e;
    std::string kind, light;
    if (!(ls >> e.step >> e.robot >> kind >> e.pos.x >> e.pos.y >> light))
      throw std::invalid_argument("malformed trace line: " + line);
    if (kind == "look")
      e.kind = Event::Kind::Look;
    else if (kind == "move")
      e.kind = Event::Kind::MoveApplied;
    else if (kind == "light")
      e.kind = Event::Kind::LightSet;
    else if (kind == "noop")
      e.kind = Event::Kind::Noop;
    else
      throw std::invalid_argument("unknown event kind: " + kind);
    if (light == "off")
      e.light = Light::Off;
    else if (light == "head")
      e.light = Light::Head;
    else if (light == "line")
      e.light = Light::Line;
    else
      throw std::invalid_argument("unknown light: " + light);
    out.push_back(e);
  }
  return out;
}

}  // namespace apf
