#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "apf/batch.hpp"
#include "apf/checks.hpp"
#include "apf/instance.hpp"
#include "apf/render.hpp"

namespace {

// Exit codes by failure class.
enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kLiveness = 2,
  kCollision = 3,
  kFrame = 4,
  kFormation = 5,
  kReplay = 6,
  kLights = 7,
};

int check_class(const std::string &name) {
  if (name == "collisions") return kCollision;
  if (name == "frame_stability") return kFrame;
  if (name == "formation") return kFormation;
  if (name == "replay") return kReplay;
  if (name == "light_discipline") return kLights;
  return kUsage;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

apf::Instance load_instance(const std::string &path) {
  apf::InstanceParse parsed = apf::parse_instance(slurp(path));
  if (!parsed.instance) {
    for (const std::string &e : parsed.errors) std::cerr << "error: " << e << "\n";
    throw CLI::RuntimeError(kUsage);
  }
  return *parsed.instance;
}

int report_checks(const std::vector<apf::CheckReport> &reports) {
  int rc = kOk;
  for (const apf::CheckReport &r : reports) {
    std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name;
    if (!r.ok()) {
      std::cout << " (" << r.issues.size() << " issue" << (r.issues.size() == 1 ? "" : "s")
                << ")";
      for (std::size_t i = 0; i < r.issues.size() && i < 5; ++i)
        std::cout << "\n  [" << r.issues[i].event_index << "] " << r.issues[i].what;
      if (rc == kOk) rc = check_class(r.name);
    }
    std::cout << "\n";
  }
  return rc;
}

int run_error_class(const std::string &what) {
  if (what.find("collision") != std::string::npos) return kCollision;
  return kLiveness;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Grid pattern-formation simulator and verifier"};
  app.require_subcommand(1);

  // ---- run ----------------------------------------------------------------
  auto *cmd_run = app.add_subcommand("run", "simulate one instance and verify the trace");
  std::string run_instance, run_algo, run_policy, run_trace_out;
  std::uint64_t run_seed = 0;
  std::int64_t run_max_lag = -1, run_steps = 0;
  bool run_transit = false, run_quiet = false;
  cmd_run->add_option("instance", run_instance, "instance JSON file")->required();
  cmd_run->add_option("--algo", run_algo, "moveopt|fastapf (default: instance model)");
  cmd_run->add_option("--policy", run_policy,
                      "fsync|round_robin|random_async|adversarial_lag");
  cmd_run->add_option("--seed", run_seed, "scheduler seed override");
  cmd_run->add_option("--max-lag", run_max_lag, "fairness window override");
  cmd_run->add_option("--steps", run_steps, "step cap override");
  cmd_run->add_option("--trace", run_trace_out, "write the trace to this file");
  cmd_run->add_flag("--transit", run_transit, "transit-visibility mode");
  cmd_run->add_flag("-q,--quiet", run_quiet, "suppress the metrics summary");

  // ---- check --------------------------------------------------------------
  auto *cmd_check = app.add_subcommand("check", "replay a trace file against an instance");
  std::string check_trace, check_instance;
  cmd_check->add_option("trace", check_trace, "trace file")->required();
  cmd_check->add_option("instance", check_instance, "instance JSON file")->required();

  // ---- gen ----------------------------------------------------------------
  auto *cmd_gen = app.add_subcommand("gen", "generate instances");
  auto *gen_random = cmd_gen->add_subcommand("random", "random asymmetric instance");
  std::int64_t gr_k = 5, gr_span = 10;
  std::uint64_t gr_seed = 1;
  std::string gr_model = "oblot", gr_out;
  gen_random->add_option("--k", gr_k, "number of robots")->required();
  gen_random->add_option("--span", gr_span, "box side")->required();
  gen_random->add_option("--seed", gr_seed, "generator seed");
  gen_random->add_option("--model", gr_model, "oblot|lumi");
  gen_random->add_option("-o,--out", gr_out, "output file (default stdout)");
  auto *gen_lb = cmd_gen->add_subcommand("lowerbound", "worst-case block-to-line instance");
  std::int64_t lb_n = 4;
  std::string lb_out, lb_model = "oblot";
  gen_lb->add_option("--n", lb_n, "block side (k = n^2)")->required();
  gen_lb->add_option("--model", lb_model, "oblot|lumi");
  gen_lb->add_option("-o,--out", lb_out, "output file (default stdout)");
  cmd_gen->require_subcommand(1);

  // ---- render -------------------------------------------------------------
  auto *cmd_render = app.add_subcommand("render", "render a trace as frames");
  std::string rd_trace, rd_style = "ascii", rd_out;
  std::int64_t rd_every = 1;
  cmd_render->add_option("trace", rd_trace, "trace file")->required();
  cmd_render->add_option("--style", rd_style, "ascii|svg");
  cmd_render->add_option("--every", rd_every, "event stride between frames");
  cmd_render->add_option("-o,--out", rd_out, "output directory (default stdout, ascii only)");

  // ---- stats --------------------------------------------------------------
  auto *cmd_stats = app.add_subcommand("stats", "complexity-ratio sweep");
  std::vector<std::int64_t> st_sizes{10, 20, 40, 80};
  std::int64_t st_trials = 20;
  std::string st_algo = "moveopt", st_policy = "random_async", st_csv;
  std::uint64_t st_seed_base = 1;
  int st_threads = 1;
  cmd_stats->add_option("--sizes", st_sizes, "nominal D' sizes");
  cmd_stats->add_option("--trials", st_trials, "trials per size");
  cmd_stats->add_option("--algo", st_algo, "moveopt|fastapf");
  cmd_stats->add_option("--policy", st_policy, "scheduler kind");
  cmd_stats->add_option("--seed-base", st_seed_base, "seed base");
  cmd_stats->add_option("--threads", st_threads, "worker threads (1 = serial)");
  cmd_stats->add_option("--csv", st_csv, "write per-run rows to this CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_run) {
      apf::Instance inst = load_instance(run_instance);
      if (!run_algo.empty())
        inst.model = run_algo == "fastapf" ? apf::Algo::FastApf : apf::Algo::MoveOpt;
      if (!run_policy.empty()) inst.scheduler.kind = apf::parse_policy_kind(run_policy);
      if (run_seed != 0) inst.scheduler.seed = run_seed;
      if (run_max_lag >= 0) inst.scheduler.max_lag = run_max_lag;
      if (run_transit) inst.transit_visibility = true;

      apf::TargetPattern pattern = inst.pattern();
      apf::RunResult res;
      try {
        res = apf::run(inst.robot_config(), pattern, inst.model, inst.scheduler,
                       {run_steps}, inst.transit_visibility);
      } catch (const apf::RunError &e) {
        if (!run_trace_out.empty()) spill(run_trace_out, apf::write_trace(e.trace()));
        std::cerr << "run failed: " << e.what() << "\n";
        return run_error_class(e.what());
      }
      if (!run_trace_out.empty()) spill(run_trace_out, apf::write_trace(res.trace));
      if (!run_quiet) {
        const apf::Metrics &m = res.metrics;
        std::cout << "algo=" << apf::algo_name(inst.model)
                  << " policy=" << apf::policy_kind_name(inst.scheduler.kind)
                  << " k=" << m.k << " D=" << m.D << " D'=" << m.Dprime
                  << " moves=" << m.total_moves << " epochs=" << m.epochs
                  << " moves/D'=" << m.moves_per_dprime
                  << " epochs/D'=" << m.epochs_per_dprime << "\n";
      }
      return report_checks(apf::check_all(res.trace, pattern));
    }

    if (*cmd_check) {
      apf::Instance inst = load_instance(check_instance);
      apf::Trace trace = apf::read_trace(slurp(check_trace));
      std::vector<apf::Vec> expect = inst.robots;
      std::sort(expect.begin(), expect.end());
      if (trace.initial != expect) {
        std::cerr << "error: trace start state differs from the instance robots\n";
        return kUsage;
      }
      trace.algo = inst.model;
      trace.transit_mode = trace.transit_mode || inst.transit_visibility;
      return report_checks(apf::check_all(trace, inst.pattern()));
    }

    if (*gen_random) {
      apf::Instance inst = apf::gen_random_asymmetric(gr_k, gr_span, gr_seed);
      inst.model = gr_model == "lumi" ? apf::Algo::FastApf : apf::Algo::MoveOpt;
      std::string text = apf::serialize_instance(inst);
      if (gr_out.empty())
        std::cout << text;
      else
        spill(gr_out, text);
      return kOk;
    }
    if (*gen_lb) {
      apf::Instance inst = apf::gen_lowerbound(lb_n);
      inst.model = lb_model == "lumi" ? apf::Algo::FastApf : apf::Algo::MoveOpt;
      std::string text = apf::serialize_instance(inst);
      if (lb_out.empty())
        std::cout << text;
      else
        spill(lb_out, text);
      return kOk;
    }

    if (*cmd_render) {
      apf::Trace trace = apf::read_trace(slurp(rd_trace));
      apf::RenderStyle style =
          rd_style == "svg" ? apf::RenderStyle::Svg : apf::RenderStyle::Ascii;
      std::vector<std::string> frames = apf::render_frames(trace, style, rd_every);
      if (rd_out.empty()) {
        if (style == apf::RenderStyle::Svg) {
          std::cerr << "error: svg output needs --out DIR\n";
          return kUsage;
        }
        for (const std::string &f : frames) std::cout << f << "\n";
        return kOk;
      }
      std::filesystem::create_directories(rd_out);
      const char *ext = style == apf::RenderStyle::Svg ? ".svg" : ".txt";
      for (std::size_t i = 0; i < frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%05zu%s", i, ext);
        spill((std::filesystem::path(rd_out) / name).string(), frames[i]);
      }
      std::cout << frames.size() << " frames written to " << rd_out << "\n";
      return kOk;
    }

    if (*cmd_stats) {
      apf::Algo algo = st_algo == "fastapf" ? apf::Algo::FastApf : apf::Algo::MoveOpt;
      apf::StatsTable table = apf::batch_stats(st_sizes, st_trials, algo,
                                               apf::parse_policy_kind(st_policy),
                                               st_seed_base, st_threads);
      std::cout << table.to_text();
      if (!st_csv.empty()) spill(st_csv, table.to_csv());
      return kOk;
    }
  } catch (const CLI::RuntimeError &e) {
    return e.get_exit_code();
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
