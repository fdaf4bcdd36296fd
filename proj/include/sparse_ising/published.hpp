#pragma once

#include <span>
#include <string_view>

#include "sparse_ising/instance.hpp"

// Published comparison data for the seven large Gset instances. These values
// are reference constants for reports; none of them is produced by the
// solvers in this library.
namespace sparse_ising::published {

/// Row of the "99.5 to 99.8% quality" comparison against the GPU simulated
/// bifurcation machine.
struct SpeedupRow {
  std::string_view id;
  CutValue sbm_attained;
  double printed_quality_percent;
  double sbm_ttt_seconds;
  std::uint64_t sweeps_per_run;
  double success_probability;
  double printed_sweeps_to_target;
  double ttt_seconds;
  double printed_speedup;
};

/// Row of the best-known-value table.
struct BestRow {
  std::string_view id;
  CutValue previous_best;
  CutValue new_best;
  double sweeps_per_run;  // absolute sweeps
  double success_probability;
  double printed_sweeps_to_target;
  double ttt_seconds;
};

/// Row of the Breakout Local Search projection table.
struct BlsRow {
  std::string_view id;
  CutValue attained;
  double avg_time_per_success;
  int successes;
  int runs;
  double printed_time_per_run;
  double printed_projected_ttt;
  double ttt_to_bls_target;
  double printed_speedup;
};

std::span<const SpeedupRow> speedup_table();
std::span<const BestRow> best_table();
std::span<const BlsRow> bls_table();

/// Thermal design power of the two reference machines, in watts.
inline constexpr double kLaptopCpuWatts = 45.0;
inline constexpr double kGpuWatts = 300.0;

}  // namespace sparse_ising::published
