#include "apf/instance.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "apf/pattern.hpp"

namespace apf {

using nlohmann::json;

TargetPattern Instance::pattern() const {
  return normalize_target(Configuration(std::vector<Vec>(targets)),
                          model == Algo::MoveOpt ? ScanSide::Short : ScanSide::Long);
}

std::vector<std::string> validate_instance(const Instance &inst) {
  std::vector<std::string> errors;
  auto dupes = [&](const std::vector<Vec> &pts, const char *what) {
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (const Vec &p : pts)
      if (!seen.insert({p.x, p.y}).second)
        errors.push_back(std::string("duplicate ") + what + " position [" +
                         std::to_string(p.x) + "," + std::to_string(p.y) + "]");
  };
  dupes(inst.robots, "robot");
  dupes(inst.targets, "target");
  if (inst.robots.size() != inst.targets.size())
    errors.push_back("robots: count " + std::to_string(inst.robots.size()) +
                     " differs from targets count " + std::to_string(inst.targets.size()));
  if (inst.robots.size() < 3)
    errors.push_back("robots: need at least 3, got " + std::to_string(inst.robots.size()));
  if (errors.empty()) {
    Election e = agree_frame(inst.robot_config(),
                             inst.model == Algo::MoveOpt ? ScanSide::Short : ScanSide::Long);
    if (e.symmetric) errors.push_back("robots: symmetric initial configuration");
  }
  if (inst.scheduler.max_lag != 0 &&
      inst.scheduler.max_lag < 4 * static_cast<std::int64_t>(inst.robots.size()))
    errors.push_back("scheduler.max_lag: must be 0 (default) or at least 4k");
  return errors;
}

InstanceParse parse_instance(const std::string &json_text) {
  InstanceParse out;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception &e) {
    out.errors.push_back(std::string("json: ") + e.what());
    return out;
  }

  Instance inst;
  try {
    std::string model = j.value("model", "oblot");
    if (model == "oblot")
      inst.model = Algo::MoveOpt;
    else if (model == "lumi")
      inst.model = Algo::FastApf;
    else
      out.errors.push_back("model: expected \"oblot\" or \"lumi\", got \"" + model + "\"");

    auto read_points = [&](const char *field, std::vector<Vec> &dst) {
      if (!j.contains(field)) {
        out.errors.push_back(std::string(field) + ": missing");
        return;
      }
      for (const auto &e : j.at(field)) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
          out.errors.push_back(std::string(field) + ": entries must be [x,y] integer pairs");
          return;
        }
        dst.push_back({e[0].get<std::int64_t>(), e[1].get<std::int64_t>()});
      }
    };
    read_points("robots", inst.robots);
    read_points("targets", inst.targets);

    if (j.contains("scheduler")) {
      const auto &s = j.at("scheduler");
      inst.scheduler.kind = parse_policy_kind(s.value("kind", "fsync"));
      inst.scheduler.seed = s.value("seed", std::uint64_t{1});
      inst.scheduler.max_lag = s.value("max_lag", std::int64_t{0});
    }
    inst.transit_visibility = j.value("transit_visibility", false);
    inst.note = j.value("note", "");
  } catch (const std::exception &e) {
    out.errors.push_back(e.what());
    return out;
  }

  if (out.errors.empty()) {
    std::vector<std::string> sem = validate_instance(inst);
    out.errors.insert(out.errors.end(), sem.begin(), sem.end());
  }
  if (out.errors.empty()) out.instance = std::move(inst);
  return out;
}

std::string serialize_instance(const Instance &inst) {
  json j;
  j["model"] = inst.model == Algo::MoveOpt ? "oblot" : "lumi";
  json robots = json::array(), targets = json::array();
  for (const Vec &p : inst.robots) robots.push_back({p.x, p.y});
  for (const Vec &p : inst.targets) targets.push_back({p.x, p.y});
  j["robots"] = robots;
  j["targets"] = targets;
  j["scheduler"] = {{"kind", policy_kind_name(inst.scheduler.kind)},
                    {"seed", inst.scheduler.seed},
                    {"max_lag", inst.scheduler.max_lag}};
  j["transit_visibility"] = inst.transit_visibility;
  if (!inst.note.empty()) j["note"] = inst.note;
  return j.dump(2) + "\n";
}

namespace {

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

std::vector<Vec> sample_distinct(SplitMix &rng, std::int64_t k, std::int64_t span) {
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::vector<Vec> pts;
  while (static_cast<std::int64_t>(pts.size()) < k) {
    Vec p{rng.below(span + 1), rng.below(span + 1)};
    if (seen.insert({p.x, p.y}).second) pts.push_back(p);
  }
  return pts;
}

}  // namespace

Instance gen_random_asymmetric(std::int64_t k, std::int64_t span, std::uint64_t seed) {
  if (k < 3) throw std::invalid_argument("k must be at least 3");
  if (span < 2) throw std::invalid_argument("span must be at least 2");
  if ((span + 1) * (span + 1) < k) throw std::invalid_argument("span too small for k points");

  SplitMix rng(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Vec> robots = sample_distinct(rng, k, span);
    Election e = agree_frame(Configuration(std::vector<Vec>(robots)), ScanSide::Short);
    if (e.symmetric) continue;
    Instance inst;
    inst.robots = std::move(robots);
    inst.targets = sample_distinct(rng, k, span);
    inst.scheduler = {SchedulerPolicy::Kind::RandomAsync, seed, 0};
    return inst;
  }
  throw std::runtime_error("rejection budget exhausted generating an asymmetric start");
}

std::int64_t lowerbound_distance(std::int64_t n) { return (n * n - n) / 2; }

Instance gen_lowerbound(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  Instance inst;
  for (std::int64_t y = 0; y < n; ++y)
    for (std::int64_t x = 0; x < n; ++x)
      if (!(x == 1 && y == 0)) inst.robots.push_back({x, y});
  inst.robots.push_back({n, 0});  // relocated corner-row point; breaks all symmetries
  std::int64_t k = n * n;
  for (std::int64_t x = 0; x < k; ++x) inst.targets.push_back({x, 0});
  inst.scheduler = {SchedulerPolicy::Kind::FSync, 1, 0};
  inst.note = "block with [1,0] relocated to [" + std::to_string(n) + ",0]; line target";

  Election e = agree_frame(inst.robot_config(), ScanSide::Short);
  if (e.symmetric) throw std::logic_error("lower-bound start unexpectedly symmetric");
  return inst;
}

}  // namespace apf
