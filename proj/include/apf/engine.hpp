#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "apf/action.hpp"
#include "apf/pattern.hpp"

// Asynchronous Look-Compute-Move execution: two-stage robot cycles (an atomic
// snapshot at one scheduler step, the computed action applied atomically at a
// later step), fair schedulers, trace recording and metrics. One simulation is
// single-threaded and deterministic; independent simulations may run
// concurrently with no shared state.

namespace apf {

enum class Algo { MoveOpt, FastApf };

const char *algo_name(Algo a);

struct SchedulerPolicy {
  enum class Kind { FSync, RoundRobin, RandomAsync, AdversarialLag };
  Kind kind = Kind::FSync;
  std::uint64_t seed = 1;
  // Fairness bound: every robot completes at least one full cycle within any
  // window of max_lag scheduler steps. 0 picks the default 8k.
  std::int64_t max_lag = 0;
};

const char *policy_kind_name(SchedulerPolicy::Kind k);
SchedulerPolicy::Kind parse_policy_kind(const std::string &name);

struct Event {
  enum class Kind { Look, MoveApplied, LightSet, Noop };
  std::int64_t step = 0;
  int robot = 0;
  Kind kind = Kind::Noop;
  Vec pos;               // position after the event
  Light light = Light::Off;  // light after the event
};

struct Trace {
  Algo algo = Algo::MoveOpt;
  bool transit_mode = false;
  std::vector<Vec> initial;  // by robot id (robot ids sort the start set)
  std::vector<Vec> final_pos;
  std::vector<Event> events;
};

struct Metrics {
  std::int64_t total_moves = 0;
  std::vector<std::int64_t> per_robot_moves;
  std::int64_t epochs = 0;
  std::int64_t D = 0;       // side of the smallest square holding start and target
  std::int64_t k = 0;
  std::int64_t Dprime = 0;  // max(D, k)
  double moves_per_dprime = 0.0;
  double epochs_per_dprime = 0.0;
};

struct RunLimits {
  std::int64_t step_cap = 0;  // 0: 64 * k * D' * effective max_lag
};

// A failed run still carries everything recorded so far; liveness failures
// are test failures, not crashes.
class RunError : public std::runtime_error {
public:
  RunError(const std::string &msg, Trace partial)
      : std::runtime_error(msg), trace_(std::move(partial)) {}
  const Trace &trace() const { return trace_; }

private:
  Trace trace_;
};

struct RunResult {
  Trace trace;
  Metrics metrics;
};

RunResult run(const Configuration &initial, const TargetPattern &pattern, Algo algo,
              const SchedulerPolicy &policy, RunLimits limits = {}, bool transit_mode = false);

// Greedy minimal epoch partition: an epoch closes at the earliest prefix in
// which every robot finished a full look-then-apply cycle since it opened.
std::int64_t count_epochs(const Trace &trace, std::size_t k);

Metrics compute_metrics(const Trace &trace, const Configuration &initial,
                        const TargetPattern &pattern);

// Stable line format, one event per line: step robot kind x y light.
std::string events_to_text(const Trace &trace);
std::vector<Event> events_from_text(const std::string &text);

// Self-contained trace file: `#`-prefixed header (algo, transit flag, initial
// positions by robot id) followed by the event lines.
std::string write_trace(const Trace &trace);
Trace read_trace(const std::string &text);

}  // namespace apf
