#pragma once

#include "apf/instance.hpp"

namespace apf {

// Complexity-ratio sweep: for each nominal size, run `trials` generated
// instances and record move and epoch counts relative to the measured D'.
// Results are aggregated in (size, trial) order, so tables are byte-identical
// for identical arguments regardless of the worker count.

struct StatsCell {
  std::int64_t size = 0;
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  std::int64_t k = 0;
  std::int64_t dprime = 0;
  std::int64_t moves = 0;
  std::int64_t epochs = 0;
};

struct StatsRow {
  std::int64_t size = 0;
  std::int64_t trials = 0;
  double max_moves_ratio = 0, mean_moves_ratio = 0;
  double max_epochs_ratio = 0, mean_epochs_ratio = 0;
};

struct StatsTable {
  Algo algo = Algo::MoveOpt;
  SchedulerPolicy::Kind policy = SchedulerPolicy::Kind::RandomAsync;
  std::uint64_t seed_base = 0;
  std::vector<StatsCell> cells;
  std::vector<StatsRow> rows;
  double moves_ratio_slope = 0;   // least-squares slope of max ratio over size
  double epochs_ratio_slope = 0;

  std::string to_text() const;
  std::string to_csv() const;
};

// threads <= 1 is the serial reference; larger values fan the independent
// runs out across OpenMP workers.
StatsTable batch_stats(const std::vector<std::int64_t> &sizes, std::int64_t trials, Algo algo,
                       SchedulerPolicy::Kind policy, std::uint64_t seed_base, int threads = 1);

}  // namespace apf
