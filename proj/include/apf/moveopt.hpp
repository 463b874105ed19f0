#pragma once

#include "apf/action.hpp"
#include "apf/pattern.hpp"

// The oblivious move-optimal formation algorithm: guard predicates, the total
// phase classifier, and the per-robot compute function. Every function is a
// pure function of the snapshot, as an oblivious robot requires.

namespace apf {

enum class PhaseId { Done, P1, P2, P3, P4, P5, P6, P7, P8 };

const char *phase_name(PhaseId p);

// Guard predicates over one snapshot, evaluated in the elected frame.
// m/n are the current enclosing-rectangle edge lengths (m vertical), M/N the
// target's (M >= N, M vertical), V/H the edge lengths of the rectangle around
// the configuration without its tail.
struct PredicateVector {
  bool s0 = false;   // configuration equals the target
  bool s1 = false;   // equal after dropping tail / tail target
  bool s2 = false;   // tail shares the tail target's column
  bool s3 = false;   // m >= max(N, n) + 2
  bool s4 = false;   // m >= 2 * max(M, V)
  bool s5 = false;   // head at the origin
  bool s6 = false;   // n >= max(N+1, H+1, k)
  bool s7 = false;   // equal after dropping head+tail / their targets
  bool s8 = false;   // tail-less configuration has a vertical mirror
  bool s9 = false;   // equal after dropping head / head target
  bool s10 = false;  // line-and-fill invariant (see fill_state)
  std::int64_t m = 0, n = 0, M = 0, N = 0, V = 0, H = 0;
  std::int64_t k = 0;
};

// Progress of the line-then-fill machinery of phases 4 and 5, recomputed from
// scratch on every snapshot. Targets fill from the back of the order; `fill`
// is the least index j such that targets j..k-2 are all occupied (k-1 when
// nothing is). s10 holds when, after removing the tail and the occupied
// suffix, the remaining robots are the head, a solid row (1,0)..(fill-2,0),
// and exactly one leftover robot (the current mover) anywhere.
struct FillState {
  std::int64_t fill = 0;
  bool s10 = false;
  Vec mover;       // valid iff s10
  Vec next_target; // valid iff s10 and fill >= 2
};

FillState fill_state(const std::vector<Vec> &local, const TargetPattern &pattern,
                     const Vec &tail_local);

PredicateVector eval_predicates(const std::vector<Vec> &local, const TargetPattern &pattern,
                                const Vec &head_local, const Vec &tail_local);

// Total, mutually exclusive priority decision list over the predicates.
PhaseId classify_phase(const PredicateVector &sv);

// Full per-robot decision: elect the frame, classify, act. `self` is the
// executing robot's global position (must be in `snapshot`). Throws if the
// snapshot has no strict string maximum.
Action compute_moveopt(const Configuration &snapshot, const TargetPattern &pattern,
                       const Vec &self, bool transit_visible = false);

// Exposed pieces of compute_moveopt, in frame-local coordinates.
Action phase4_action(const std::vector<Vec> &local, const Vec &self_local,
                     const Vec &tail_local);
Action phase5_action(const std::vector<Vec> &local, const TargetPattern &pattern,
                     const Vec &self_local, const Vec &tail_local);

}  // namespace apf
