// sparse-ising: fetch, inspect, verify, solve and benchmark Gset instances.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sparse_ising/sparse_ising.hpp"

namespace si = sparse_ising;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct SourceFlags {
  std::string cache_dir = si::default_cache_dir().string();
  std::string url = si::default_gset_url();
  bool offline = false;

  si::FetchOptions options() const {
    si::FetchOptions o;
    o.cache_dir = cache_dir;
    o.base_url = url;
    o.offline = offline;
    return o;
  }
};

void add_source_flags(CLI::App* cmd, SourceFlags& flags) {
  cmd->add_option("--cache-dir", flags.cache_dir, fmt::format("Instance cache directory (env {})", si::kCacheDirEnv))
      ->capture_default_str();
  cmd->add_option("--url", flags.url, fmt::format("Base URL for downloads (env {})", si::kGsetUrlEnv))
      ->capture_default_str();
  cmd->add_flag("--offline", flags.offline, "Never touch the network");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw si::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text, bool append = false) {
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw si::Error("cannot write '" + path + "'");
  out << text;
}

int cmd_fetch(const std::string& id, const SourceFlags& src) {
  const auto result = si::fetch_instance(id, src.options());
  fmt::print("{} n={} m={} sha256={} path={}{}\n", result.instance.id, result.instance.n, result.instance.m(),
             result.sha256, result.cached_file.string(), result.downloaded ? " (downloaded)" : "");
  return kExitOk;
}

int cmd_info(const std::string& ref, const SourceFlags& src) {
  const auto result = si::fetch_instance(ref, src.options());
  const auto& inst = result.instance;
  const auto stats = si::instance_stats(inst);
  fmt::print("instance     {}\n", inst.id);
  fmt::print("source       {}\n", inst.source_path);
  fmt::print("sha256       {}\n", result.sha256);
  fmt::print("n            {}\n", stats.n);
  fmt::print("m            {}\n", stats.m);
  fmt::print("total weight {}\n", stats.total_weight);
  fmt::print("degree       min={} max={} mean={:.4f}\n", stats.min_degree, stats.max_degree, stats.mean_degree);
  std::string hist;
  for (const auto& [w, count] : stats.weight_histogram) hist += fmt::format(" {}:{}", w, count);
  fmt::print("weights     {}\n", hist);
  if (auto meta = si::find_meta(inst.id)) {
    fmt::print("type         {}\n", si::to_string(meta->problem_type));
    fmt::print("best known   {} ({})\n", meta->best_known, meta->best_known_source);
    fmt::print("sweeps/run   {} (default)\n", meta->default_sweeps_per_run);
  }
  return kExitOk;
}

int cmd_verify(const std::string& ref, const std::string& solution, std::optional<si::CutValue> claimed,
               const SourceFlags& src) {
  si::SolutionFile file;
  if (fs::is_regular_file(solution)) {
    file = si::read_solution_file(solution);
  } else if (auto bundled = si::bundled_solution(solution)) {
    file = si::parse_solution_file(*bundled);
  } else {
    throw si::Error("no solution file or bundled asset named '" + solution + "'");
  }
  const auto inst = si::fetch_instance(ref, src.options()).instance;
  const si::SpinConfig cfg = file.decode(static_cast<std::size_t>(inst.n));
  if (!claimed) claimed = file.claimed;
  const auto report = si::certify(inst, cfg, claimed);

  std::string line = fmt::format("{} cut={}", inst.id, report.cut);
  if (report.quality) line += fmt::format(" quality={:.2f}%", 100.0 * *report.quality);
  if (report.claimed) line += report.matches_claim ? " MATCH" : fmt::format(" MISMATCH (claimed {})", *report.claimed);
  fmt::print("{}\n", line);
  return report.matches_claim ? kExitOk : kExitMismatch;
}

struct RunFlags {
  std::string solver;
  std::string config;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::uint32_t trials = 1;
  std::uint32_t threads = 1;
  std::uint64_t seed = 1;
  std::optional<si::CutValue> target;
  std::string out;
  std::string csv;
  std::string solution_out;
};

// Config file first, then every flag given on the command line.
si::SolverParams resolve_params(const RunFlags& flags, const si::ProblemInstance& inst) {
  si::SolverParams params;
  if (auto meta = si::find_meta(inst.id)) params.sweeps_per_run = meta->default_sweeps_per_run;
  if (!flags.config.empty()) {
    for (const auto& [k, v] : si::parse_settings(read_text(flags.config))) params.set(k, v);
  }
  if (!flags.solver.empty()) params.set("solver", flags.solver);
  for (const auto& [k, v] : flags.overrides) params.set(k, v);
  params.validate();
  return params;
}

int cmd_run(RunFlags& flags, const std::string& ref, const SourceFlags& src, bool bench) {
  const auto inst = si::fetch_instance(ref, src.options()).instance;
  const si::SolverParams params = resolve_params(flags, inst);
  const auto record = si::run_trials(inst, params, flags.trials, flags.target, flags.threads, flags.seed);
  const auto report = si::make_report(inst, params, record, flags.threads, flags.seed);

  if (!flags.out.empty()) write_text(flags.out, si::to_json(report).dump(2) + "\n");
  if (!flags.csv.empty()) {
    const bool fresh = !fs::exists(flags.csv) || fs::file_size(flags.csv) == 0;
    write_text(flags.csv, (fresh ? si::csv_header() + "\n" : std::string()) + si::csv_row(report) + "\n", true);
  }
  if (!flags.solution_out.empty()) {
    const auto& best = report.trials[report.best_trial];
    write_text(flags.solution_out,
               si::format_solution_file(best.best_config, inst.id, best.best_value,
                                        fmt::format("{} trial {} seed {}", si::to_string(params.kind),
                                                    best.trial_index, best.seed)));
  }
  fmt::print("{}\n", si::summary_line(report));
  if (!bench) {
    const auto& best = report.trials[report.best_trial];
    fmt::print("best trial {} reached {} at sweep {} of {}\n", best.trial_index, best.best_value, best.sweep_at_best,
               best.sweeps_executed);
  }
  return kExitOk;
}

int cmd_project_bls(double avg_time_per_success, std::int64_t successes, std::int64_t runs) {
  const auto p = si::metrics::bls_projection(avg_time_per_success, successes, runs);
  fmt::print("p_s={:.4f} time_per_run={:.6g}s projected_ttt={:.6g}s\n", p.p_s, p.time_per_run, p.projected_ttt);
  return kExitOk;
}

int cmd_report(const std::string& path, const std::string& format) {
  const auto j = nlohmann::json::parse(read_text(path));
  const auto report = si::report_from_json(j);
  if (format == "csv") {
    fmt::print("{}\n{}\n", si::csv_header(), si::csv_row(report));
  } else if (format == "json") {
    fmt::print("{}\n", si::to_json(report).dump(2));
  } else {
    fmt::print("{}\n", si::summary_line(report));
    fmt::print("{:>6} {:>20} {:>10} {:>10} {:>10} {:>10}\n", "trial", "seed", "best", "sweeps", "at_best",
               "wall_s");
    for (const auto& t : report.trials) {
      fmt::print("{:>6} {:>20} {:>10} {:>10} {:>10} {:>10.4f}\n", t.trial_index, t.seed, t.best_value,
                 t.sweeps_executed, t.sweep_at_best, t.wall_time);
    }
  }
  return kExitOk;
}

void add_run_flags(CLI::App* cmd, RunFlags& flags, std::uint32_t default_trials) {
  flags.trials = default_trials;
  cmd->add_option("--solver", flags.solver, "ls, sa, pt or pticm (default pticm)");
  cmd->add_option("--config", flags.config, "key = value settings file; command-line flags take precedence");
  cmd->add_option("--trials", flags.trials, "Number of independent trials")->capture_default_str();
  cmd->add_option("--threads", flags.threads, "Worker threads")->capture_default_str();
  cmd->add_option("--seed", flags.seed, "Master seed")->capture_default_str();
  cmd->add_option("--target", flags.target, "Cut value counted as a success");
  cmd->add_option("--out", flags.out, "Write the JSON report here");
  cmd->add_option("--csv", flags.csv, "Append a CSV summary row here");
  cmd->add_option("--solution-out", flags.solution_out, "Write the best configuration as a hex solution file");

  static constexpr std::array<std::pair<const char*, const char*>, 12> kSettings{{
      {"sweeps", "Sweeps per run (default: registry value, else 1000)"},
      {"restarts", "Restarts within a trial"},
      {"t-hot", "SA starting temperature, or 'auto'"},
      {"t-cold", "SA final temperature"},
      {"cooling", "SA per-sweep factor, or 'auto'"},
      {"target-acceptance", "SA acceptance used to calibrate T_hot"},
      {"calibration-probes", "SA probe flips for calibration"},
      {"replicas", "PT replica count"},
      {"beta-min", "PT smallest inverse temperature"},
      {"beta-max", "PT largest inverse temperature"},
      {"betas", "PT explicit comma-separated ladder"},
      {"icm-period", "Sweeps between cluster moves"},
  }};
  for (const auto& [key, help] : kSettings) {
    const std::string name = key;
    cmd->add_option_function<std::string>(
        "--" + name, [&flags, name](const std::string& v) { flags.overrides.emplace_back(name, v); }, help);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse Ising / weighted MaxCut workbench for Gset instances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(si::tool_version()));

  SourceFlags src;
  std::string id_or_path;

  auto* fetch = app.add_subcommand("fetch", "Download (or reuse) a registry instance and print its checksum");
  fetch->add_option("instance", id_or_path, "Registry id, e.g. G72")->required();
  add_source_flags(fetch, src);

  auto* info = app.add_subcommand("info", "Print instance statistics and registry metadata");
  info->add_option("instance", id_or_path, "Registry id or Gset file")->required();
  add_source_flags(info, src);

  std::string solution;
  std::optional<si::CutValue> claimed;
  auto* verify = app.add_subcommand("verify", "Certify the cut value of a hex solution");
  verify->add_option("instance", id_or_path, "Registry id or Gset file")->required();
  verify->add_option("solution", solution, "Solution file, or a bundled asset (g72_7008, g77_9940)")->required();
  verify->add_option("--claimed", claimed, "Expected cut value (overrides the file header)");
  add_source_flags(verify, src);

  RunFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Run a solver and report the best cut found");
  solve->add_option("instance", id_or_path, "Registry id or Gset file")->required();
  add_run_flags(solve, solve_flags, 1);
  add_source_flags(solve, src);

  RunFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Run a batch of trials and compute P_s, TTT and sweeps-to-target");
  bench->add_option("instance", id_or_path, "Registry id or Gset file")->required();
  add_run_flags(bench, bench_flags, 100);
  add_source_flags(bench, src);

  double avg_time = 0.0;
  std::int64_t successes = 0;
  std::int64_t runs = 0;
  auto* project = app.add_subcommand("project-bls", "Project a time-to-target from average time per success");
  project->add_option("--avg-time-per-success", avg_time, "Seconds")->required();
  project->add_option("--successes", successes, "Successful runs")->required();
  project->add_option("--runs", runs, "Total runs")->required();

  std::string report_path;
  std::string report_format = "table";
  auto* report = app.add_subcommand("report", "Re-render a JSON report");
  report->add_option("report", report_path, "JSON report from bench/solve")->required();
  report->add_option("--format", report_format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*fetch) return cmd_fetch(id_or_path, src);
    if (*info) return cmd_info(id_or_path, src);
    if (*verify) return cmd_verify(id_or_path, solution, claimed, src);
    if (*solve) return cmd_run(solve_flags, id_or_path, src, false);
    if (*bench) return cmd_run(bench_flags, id_or_path, src, true);
    if (*project) return cmd_project_bls(avg_time, successes, runs);
    if (*report) return cmd_report(report_path, report_format);
  } catch (const si::NetworkError& e) {
    std::cerr << "network error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const si::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const si::RegistryError& e) {
    std::cerr << "registry error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
