#pragma once

#include <optional>
#include <string>

#include "apf/engine.hpp"

namespace apf {

// One experiment input: robots, targets, scheduler, mode flags. Serialized as
// a single JSON document.
struct Instance {
  Algo model = Algo::MoveOpt;
  std::vector<Vec> robots;
  std::vector<Vec> targets;
  SchedulerPolicy scheduler;
  bool transit_visibility = false;
  std::string note;

  Configuration robot_config() const { return Configuration(std::vector<Vec>(robots)); }
  TargetPattern pattern() const;
};

struct InstanceParse {
  std::optional<Instance> instance;       // set iff errors is empty
  std::vector<std::string> errors;
};

InstanceParse parse_instance(const std::string &json_text);
std::string serialize_instance(const Instance &inst);

// Semantic validation shared by the parser and the generators; each failure
// names the offending field and value.
std::vector<std::string> validate_instance(const Instance &inst);

// Rejection-samples k distinct robots and k distinct targets inside a
// span-by-span box until the robots elect a strict maximal string.
Instance gen_random_asymmetric(std::int64_t k, std::int64_t span, std::uint64_t seed);

// Worst-case family: an n-by-n block of k = n^2 robots (one point relocated
// to break symmetry) and a compact-line target, so some robot must travel at
// least k/2 - sqrt(k)/2 steps.
Instance gen_lowerbound(std::int64_t n);

std::int64_t lowerbound_distance(std::int64_t n);  // k/2 - sqrt(k)/2 = (n*n - n) / 2

}  // namespace apf
