#pragma once

#include <cstdint>
#include <optional>

namespace sparse_ising::metrics {

/// Confidence level for time-to-target: reach the target with 99% probability.
inline constexpr double kTargetConfidence = 0.99;
/// Success probabilities at or above 1 - kCertainEpsilon count as certain.
inline constexpr double kCertainEpsilon = 1e-12;

/// r = max(1, ln(1 - 0.99) / ln(1 - p_s)). Throws MetricError when p_s is 0
/// (no successes) or outside [0, 1].
double repetitions(double p_s);

/// TTT = t_trial * r. Requires t_trial > 0.
double time_to_target(double t_trial, double p_s);

/// sweeps_per_run * r. Requires sweeps_per_run >= 1.
double sweeps_to_target(double sweeps_per_run, double p_s);

/// value / best_known. Requires best_known > 0.
double solution_quality(double value, double best_known);

/// ttt_reference / ttt_new. Both positive.
double speedup(double ttt_reference, double ttt_new);

/// Joules = seconds * watts. Both positive.
double energy_to_target(double ttt_seconds, double power_watts);

struct BlsProjection {
  double p_s = 0.0;
  double total_time = 0.0;
  double time_per_run = 0.0;
  double projected_ttt = 0.0;
};

/// Projects a time-to-target from published averages: total time is the
/// average time per success times the number of successes, spread over all
/// runs. Requires 0 < successes <= runs.
BlsProjection bls_projection(double avg_time_per_success, std::int64_t successes, std::int64_t runs);

struct TttEstimate {
  std::int64_t target = 0;
  double p_s = 0.0;
  std::optional<double> r;  // absent when p_s == 0
  double t_trial = 0.0;
  std::optional<double> ttt;
  std::optional<std::uint64_t> sweeps_per_run;
  std::optional<double> sweeps_to_target;

  bool reachable() const noexcept { return r.has_value(); }
};

/// Assembles an estimate; zero successes yields an unreachable estimate
/// instead of throwing.
TttEstimate estimate(std::int64_t target, std::int64_t successes, std::int64_t trials, double t_trial,
                     std::optional<std::uint64_t> sweeps_per_run = {});

}  // namespace sparse_ising::metrics
