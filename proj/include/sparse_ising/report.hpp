#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sparse_ising/instance.hpp"
#include "sparse_ising/solvers.hpp"

namespace sparse_ising {

inline constexpr int kReportSchemaVersion = 1;
std::string_view tool_version();

/// Self-contained benchmark report: p_s, TTT and sweeps-to-target can be
/// recomputed from the per-trial records and the target.
struct BenchReport {
  int schema_version = kReportSchemaVersion;
  std::string tool_version;
  std::string rng_algorithm;
  std::string generated_at;  // UTC, ISO 8601

  std::string instance_id;
  std::int32_t n = 0;
  std::int64_t m = 0;
  SolverParams params;
  std::uint32_t num_trials = 0;
  std::uint32_t workers = 1;
  std::uint64_t master_seed = 0;

  std::optional<CutValue> target;
  std::int64_t successes = 0;
  double p_s = 0.0;
  double t_trial_mean = 0.0;
  double batch_wall_time = 0.0;
  /// Mean sweeps executed per trial.
  double sweeps_per_trial = 0.0;
  CutValue best_value_found = 0;
  std::uint32_t best_trial = 0;
  std::optional<CutValue> best_known;
  std::optional<double> quality;

  /// Absent when there is no target or no trial reached it.
  std::optional<double> r;
  std::optional<double> ttt;
  std::optional<double> sweeps_to_target;

  std::vector<TrialRecord> trials;
};

BenchReport make_report(const ProblemInstance& inst, const SolverParams& params, const BenchRecord& bench,
                        std::uint32_t workers, std::uint64_t master_seed);

/// Recomputes every aggregate field from `report.trials` and `report.target`.
BenchReport recompute_aggregates(const BenchReport& report);

nlohmann::json to_json(const BenchReport& report);
/// Throws Error for schema mismatches or missing fields.
BenchReport report_from_json(const nlohmann::json& j);

std::string csv_header();
std::string csv_row(const BenchReport& report);
/// One human-readable line: P_s, TTT and sweeps-to-target.
std::string summary_line(const BenchReport& report);

}  // namespace sparse_ising
