#include "sparse_ising/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparse_ising/error.hpp"

namespace sparse_ising::metrics {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw MetricError(std::string(what) + " must be positive and finite, got " + std::to_string(value));
  }
}

}  // namespace

double repetitions(double p_s) {
  if (!(p_s >= 0.0 && p_s <= 1.0)) throw MetricError("success probability must lie in [0, 1]");
  if (p_s == 0.0) throw MetricError("no successes; TTT undefined");
  if (p_s >= 1.0 - kCertainEpsilon || p_s >= kTargetConfidence) return 1.0;
  return std::max(1.0, std::log(1.0 - kTargetConfidence) / std::log1p(-p_s));
}

double time_to_target(double t_trial, double p_s) {
  require_positive(t_trial, "t_trial");
  return t_trial * repetitions(p_s);
}

double sweeps_to_target(double sweeps_per_run, double p_s) {
  if (!(sweeps_per_run >= 1.0)) throw MetricError("sweeps_per_run must be at least 1");
  return sweeps_per_run * repetitions(p_s);
}

double solution_quality(double value, double best_known) {
  require_positive(best_known, "best_known");
  return value / best_known;
}

double speedup(double ttt_reference, double ttt_new) {
  require_positive(ttt_reference, "reference TTT");
  require_positive(ttt_new, "new TTT");
  return ttt_reference / ttt_new;
}

double energy_to_target(double ttt_seconds, double power_watts) {
  require_positive(ttt_seconds, "TTT");
  require_positive(power_watts, "power");
  return ttt_seconds * power_watts;
}

BlsProjection bls_projection(double avg_time_per_success, std::int64_t successes, std::int64_t runs) {
  if (successes <= 0) throw MetricError("zero successes; cannot project a time-to-target");
  if (runs < successes) throw MetricError("successes cannot exceed runs");
  require_positive(avg_time_per_success, "average time per success");
  BlsProjection out;
  out.p_s = static_cast<double>(successes) / static_cast<double>(runs);
  out.total_time = avg_time_per_success * static_cast<double>(successes);
  out.time_per_run = out.total_time / static_cast<double>(runs);
  out.projected_ttt = out.time_per_run * repetitions(out.p_s);
  return out;
}

TttEstimate estimate(std::int64_t target, std::int64_t successes, std::int64_t trials, double t_trial,
                     std::optional<std::uint64_t> sweeps_per_run) {
  if (trials <= 0) throw MetricError("need at least one trial");
  if (successes < 0 || successes > trials) throw MetricError("successes must lie in [0, trials]");
  TttEstimate est;
  est.target = target;
  est.p_s = static_cast<double>(successes) / static_cast<double>(trials);
  est.t_trial = t_trial;
  est.sweeps_per_run = sweeps_per_run;
  if (successes == 0) return est;
  est.r = repetitions(est.p_s);
  est.ttt = t_trial * *est.r;
  if (sweeps_per_run) est.sweeps_to_target = static_cast<double>(*sweeps_per_run) * *est.r;
  return est;
}

}  // namespace sparse_ising::metrics
