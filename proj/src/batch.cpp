#include "apf/batch.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace apf {

namespace {

std::uint64_t cell_seed(std::uint64_t base, std::int64_t size, std::int64_t trial) {
  return base * 1000003ull + static_cast<std::uint64_t>(size) * 1009ull +
         static_cast<std::uint64_t>(trial) + 1ull;
}

StatsCell run_cell(std::int64_t size, std::int64_t trial, Algo algo,
                   SchedulerPolicy::Kind policy, std::uint64_t seed_base) {
  StatsCell cell;
  cell.size = size;
  cell.trial = trial;
  cell.seed = cell_seed(seed_base, size, trial);
  cell.k = std::clamp<std::int64_t>(size / 2, 3, 25);

  Instance inst = gen_random_asymmetric(cell.k, size, cell.seed);
  inst.model = algo;
  inst.scheduler.kind = policy;
  inst.scheduler.seed = cell.seed;

  try {
    RunResult res = run(inst.robot_config(), inst.pattern(), algo, inst.scheduler);
    cell.dprime = res.metrics.Dprime;
    cell.moves = res.metrics.total_moves;
    cell.epochs = res.metrics.epochs;
  } catch (const std::exception &e) {
    throw std::runtime_error("run failed (size=" + std::to_string(size) +
                             " trial=" + std::to_string(trial) +
                             " seed=" + std::to_string(cell.seed) + "): " + e.what());
  }
  return cell;
}

double slope_of(const std::vector<std::pair<double, double>> &pts) {
  if (pts.size() < 2) return 0.0;
  double mx = 0, my = 0;
  for (auto &p : pts) {
    mx += p.first;
    my += p.second;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double num = 0, den = 0;
  for (auto &p : pts) {
    num += (p.first - mx) * (p.second - my);
    den += (p.first - mx) * (p.first - mx);
  }
  return den == 0 ? 0.0 : num / den;
}

}  // namespace

StatsTable batch_stats(const std::vector<std::int64_t> &sizes, std::int64_t trials, Algo algo,
                       SchedulerPolicy::Kind policy, std::uint64_t seed_base, int threads) {
  StatsTable table;
  table.algo = algo;
  table.policy = policy;
  table.seed_base = seed_base;

  std::int64_t total = static_cast<std::int64_t>(sizes.size()) * trials;
  table.cells.resize(static_cast<std::size_t>(total));
  std::string first_error;

#if defined(_OPENMP)
  if (threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < total; ++i) {
      std::int64_t si = i / trials, ti = i % trials;
      try {
        table.cells[static_cast<std::size_t>(i)] =
            run_cell(sizes[static_cast<std::size_t>(si)], ti, algo, policy, seed_base);
      } catch (const std::exception &e) {
#pragma omp critical
        if (first_error.empty()) first_error = e.what();
      }
    }
  } else
#endif
  {
    (void)threads;
    for (std::int64_t i = 0; i < total && first_error.empty(); ++i) {
      std::int64_t si = i / trials, ti = i % trials;
      try {
        table.cells[static_cast<std::size_t>(i)] =
            run_cell(sizes[static_cast<std::size_t>(si)], ti, algo, policy, seed_base);
      } catch (const std::exception &e) {
        first_error = e.what();
      }
    }
  }
  if (!first_error.empty()) throw std::runtime_error(first_error);

  std::vector<std::pair<double, double>> move_pts, epoch_pts;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    StatsRow row;
    row.size = sizes[si];
    row.trials = trials;
    for (std::int64_t ti = 0; ti < trials; ++ti) {
      const StatsCell &c = table.cells[si * static_cast<std::size_t>(trials) +
                                       static_cast<std::size_t>(ti)];
      double dm = static_cast<double>(std::max<std::int64_t>(c.dprime, 1));
      double mr = static_cast<double>(c.moves) / dm;
      double er = static_cast<double>(c.epochs) / dm;
      row.max_moves_ratio = std::max(row.max_moves_ratio, mr);
      row.max_epochs_ratio = std::max(row.max_epochs_ratio, er);
      row.mean_moves_ratio += mr;
      row.mean_epochs_ratio += er;
    }
    row.mean_moves_ratio /= static_cast<double>(trials);
    row.mean_epochs_ratio /= static_cast<double>(trials);
    table.rows.push_back(row);
    move_pts.push_back({static_cast<double>(row.size), row.max_moves_ratio});
    epoch_pts.push_back({static_cast<double>(row.size), row.max_epochs_ratio});
  }
  table.moves_ratio_slope = slope_of(move_pts);
  table.epochs_ratio_slope = slope_of(epoch_pts);
  return table;
}

std::string StatsTable::to_text() const {
  std::ostringstream os;
  os << "# algo=" << algo_name(algo) << " policy=" << policy_kind_name(policy)
     << " seed_base=" << seed_base << "\n";
  os << std::fixed << std::setprecision(4);
  os << std::setw(6) << "size" << std::setw(8) << "trials" << std::setw(12) << "moves/D'"
     << std::setw(12) << "mean" << std::setw(12) << "epochs/D'" << std::setw(12) << "mean"
     << "\n";
  for (const StatsRow &r : rows)
    os << std::setw(6) << r.size << std::setw(8) << r.trials << std::setw(12)
       << r.max_moves_ratio << std::setw(12) << r.mean_moves_ratio << std::setw(12)
       << r.max_epochs_ratio << std::setw(12) << r.mean_epochs_ratio << "\n";
  os << "# slope moves/D' per size: " << moves_ratio_slope << "\n";
  os << "# slope epochs/D' per size: " << epochs_ratio_slope << "\n";
  return os.str();
}

std::string StatsTable::to_csv() const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  os << "size,trial,seed,k,dprime,moves,epochs,moves_per_dprime,epochs_per_dprime\n";
  for (const StatsCell &c : cells) {
    double dm = static_cast<double>(std::max<std::int64_t>(c.dprime, 1));
    os << c.size << ',' << c.trial << ',' << c.seed << ',' << c.k << ',' << c.dprime << ','
       << c.moves << ',' << c.epochs << ',' << static_cast<double>(c.moves) / dm << ','
       << static_cast<double>(c.epochs) / dm << "\n";
  }
  return os.str();
}

}  // namespace apf
