#pragma once

#include "apf/action.hpp"
#include "apf/pattern.hpp"

// The luminous time-optimal formation algorithm: light-aware frame setup,
// conditions c0..c7, the flow-chart dispatcher and procedures I-VI. All pure
// functions of one robot's snapshot.

namespace apf {

struct LitEntry {
  Vec pos;
  Light light = Light::Off;
};

// One robot's view: all positions with their lights, sorted by position.
struct LitSnapshot {
  std::vector<LitEntry> entries;

  Configuration config() const;
  Light light_at(const Vec &p) const;
  std::vector<Vec> head_positions() const;
};

enum class ProcedureId { Done, I, II, III, IV, V, VI };

const char *procedure_name(ProcedureId p);

// Frame, head and tail as every robot derives them from a snapshot. Before
// any head light is lit these come from the string election along the long
// side; afterwards from the lit robot's boundary position.
struct FastView {
  Frame frame;
  Vec head;  // global
  Vec tail;  // global
  bool head_lit = false;
};

FastView resolve_view(const LitSnapshot &snap);

Frame frame_fastapf(const LitSnapshot &snap);
Vec tail_fastapf(const LitSnapshot &snap, const Frame &frame);

struct ConditionVector {
  bool c0 = false;  // configuration equals the target
  bool c1 = false;  // equal after dropping head / first target
  bool c2 = false;  // equal after dropping tail / last target
  bool c3 = false;  // equal after dropping both
  bool c4 = false;  // a head light is on
  bool c5 = false;  // the lit head sits on a corner of the enclosing rectangle
  bool c6 = false;  // inner robots all lit or on saturated lines
  bool c7 = false;  // tail parked at or beyond the staging corner
  std::int64_t rest_max_x = 0;  // rightmost non-tail robot column
  std::int64_t rest_max_y = 0;  // topmost non-tail robot row
  Vec staging;                  // (max{rest_max_x+1, width+1, k}, max{rest_max_y, height})
  std::int64_t k = 0;
};

ConditionVector eval_conditions(const LitSnapshot &snap, const TargetPattern &pattern,
                                const FastView &view);

// Flow-chart decision list; throws on an unmatched condition combination.
ProcedureId dispatch(const ConditionVector &cv);

Action compute_fastapf(const LitSnapshot &snap, const TargetPattern &pattern, const Vec &self);

}  // namespace apf
