#pragma once

#include <string>
#include <vector>

#include "apf/engine.hpp"
#include "apf/pattern.hpp"

// Offline trace verification. Every checker replays the event log from the
// recorded start state and reports violations with the offending event index;
// an empty report means the property held at every event time.

namespace apf {

struct CheckIssue {
  std::string what;
  std::int64_t event_index = -1;
};

struct CheckReport {
  std::string name;
  std::vector<CheckIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Replay soundness: recorded post-states match re-application, moves are unit
// grid steps, positions stay pairwise distinct.
CheckReport check_replay(const Trace &trace);

// Applied moves always land on empty points. In transit mode, additionally no
// two robots share a grid edge with overlapping decision-to-application
// intervals (either direction).
CheckReport check_collisions(const Trace &trace);

// Frame stability windows. Oblivious runs: across every move applied while
// the classifier is in the first three phases, with the documented mirror
// hand-over exempted and separately required to re-elect the old far corner.
// Luminous runs: from the head light turning on until it turns off.
CheckReport check_frame_stability(const Trace &trace, const TargetPattern &pattern);

// Final configuration equals the target pattern (set equality in the agreed
// frame); luminous runs additionally end with all lights off.
CheckReport check_formation(const Trace &trace, const TargetPattern &pattern);

// Light discipline: at most one head light at any time, the head light rises
// and falls at most once, and no robot ever trades head for line directly.
CheckReport check_light_discipline(const Trace &trace);

std::vector<CheckReport> check_all(const Trace &trace, const TargetPattern &pattern);

}  // namespace apf
