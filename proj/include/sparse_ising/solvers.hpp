#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sparse_ising/instance.hpp"
#include "sparse_ising/model.hpp"
#include "sparse_ising/rng.hpp"

namespace sparse_ising {

enum class SolverKind { LocalSearch, SimulatedAnnealing, ParallelTempering, PtIcm };

std::string_view to_string(SolverKind kind);
/// Accepts "ls", "sa", "pt", "pticm" and the long names printed by to_string.
SolverKind parse_solver_kind(std::string_view name);

/// Solver knobs. Temperatures for simulated annealing are in cut units
/// (acceptance exp(gain / T)); inverse temperatures for parallel tempering are
/// in Ising energy units (acceptance exp(-beta * dH), dH = -2 * gain).
struct SolverParams {
  SolverKind kind = SolverKind::PtIcm;
  std::uint64_t sweeps_per_run = 1000;
  /// Independent restarts inside one trial; the trial keeps the best.
  std::uint32_t restarts = 1;

  // Simulated annealing.
  std::optional<double> t_hot;    ///< calibrated from probe flips when absent
  double t_cold = 0.05;
  std::optional<double> cooling;  ///< per-sweep factor; derived when absent
  double target_acceptance = 0.8;
  std::uint32_t calibration_probes = 100;

  // Parallel tempering.
  std::uint32_t replicas = 24;
  double beta_min = 0.2;
  double beta_max = 3.0;
  std::vector<double> betas;  ///< explicit ladder; overrides replicas/beta_min/beta_max
  std::uint32_t icm_period = 1;

  /// Throws InvalidParams.
  void validate() const;
  /// Strictly increasing inverse temperatures.
  std::vector<double> ladder() const;

  /// Applies one "key=value" setting (keys match the CLI flag names, e.g.
  /// "sweeps", "t-hot", "betas"). Throws InvalidParams for unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
  /// Every setting as key/value text, in a fixed order.
  std::vector<std::pair<std::string, std::string>> settings() const;
};

/// Reads "key = value" lines; '#' starts a comment. Throws InvalidParams.
std::vector<std::pair<std::string, std::string>> parse_settings(std::string_view text);

struct TrialRecord {
  std::uint32_t trial_index = 0;
  std::uint64_t seed = 0;
  CutValue best_value = 0;
  SpinConfig best_config;
  std::uint64_t sweeps_executed = 0;
  /// 1-based sweep at which best_value was first reached (0: initial state).
  std::uint64_t sweep_at_best = 0;
  double wall_time = 0.0;
};

/// Equality of everything except wall time.
bool same_outcome(const TrialRecord& a, const TrialRecord& b);

/// Seed of trial `trial` under `master_seed`.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint32_t trial);

/// First-improvement local search over a fresh random vertex order per pass,
/// until a full pass makes no improving flip. Returns the number of passes.
/// Afterwards every flip_gain is <= 0.
std::uint64_t local_search(IncrementalState& state, CounterRng& rng,
                           std::uint64_t max_passes = UINT64_MAX);
IncrementalState local_search(const ProblemInstance& inst, const SpinConfig& start, CounterRng& rng);

struct AnnealSchedule {
  double t_hot = 1.0;
  double t_cold = 0.05;
  double factor = 1.0;
  std::uint64_t sweeps = 1;
};

/// Temperature where the mean Metropolis acceptance over `state`'s probe flips
/// equals `target`.
double calibrate_t_hot(const IncrementalState& state, CounterRng& rng, std::uint32_t probes, double target);

/// Schedule from params for the given starting state (calibrating T_hot if needed).
AnnealSchedule make_schedule(const SolverParams& params, const IncrementalState& start, CounterRng& rng);

struct AnnealOutcome {
  CutValue best_value = 0;
  SpinConfig best_config;
  std::uint64_t sweep_at_best = 0;
};

/// Simulated annealing on `state`: each sweep visits the vertices in a fresh
/// random order; a flip with gain >= 0 is always taken, otherwise with
/// probability exp(gain / T). T starts at t_hot and is multiplied by factor
/// after each sweep. The best cut is sampled after every sweep.
AnnealOutcome anneal(IncrementalState& state, const AnnealSchedule& schedule, CounterRng& rng);

/// Replicas at increasing inverse temperatures. Swaps exchange which replica
/// sits at which temperature; configurations are never copied.
class ReplicaLadder {
public:
  ReplicaLadder(std::shared_ptr<const Graph> graph, std::vector<double> betas, std::uint64_t seed,
                std::uint32_t trial, std::uint32_t stream_base);

  std::size_t size() const noexcept { return betas_.size(); }
  double beta(std::size_t k) const noexcept { return betas_[k]; }
  /// Replica currently at temperature slot k.
  IncrementalState& at(std::size_t k) { return replicas_[slot_[k]]; }
  const IncrementalState& at(std::size_t k) const { return replicas_[slot_[k]]; }
  /// Replica by its permanent index (independent of temperature).
  const IncrementalState& replica(std::size_t r) const { return replicas_[r]; }
  std::size_t replica_at(std::size_t k) const noexcept { return slot_[k]; }

  /// One Metropolis sweep (vertices in index order) of every replica at its temperature.
  void sweep_all();
  /// Swap test for slots k and k+1: accept with min(1, exp(dBeta * dH)),
  /// dBeta = beta_k - beta_{k+1}, dH = H_k - H_{k+1}. Returns acceptance.
  bool attempt_swap(std::size_t k, CounterRng& rng);
  /// Attempts swaps for all pairs (k, k+1) with k % 2 == parity.
  std::size_t swap_round(unsigned parity, CounterRng& rng);

  std::vector<CutValue> energies_by_slot() const;

private:
  void sweep(IncrementalState& state, std::size_t slot, CounterRng& rng);

  std::vector<double> betas_;
  std::vector<IncrementalState> replicas_;
  std::vector<CounterRng> rngs_;
  std::vector<std::size_t> slot_;
  std::vector<std::vector<double>> accept_tables_;
};

/// Isoenergetic cluster move on two replicas of the same graph: seeds a
/// cluster at a uniformly random site where the replicas disagree, grows it
/// through edges joining disagreeing sites and flips it in both replicas.
/// H_a + H_b is unchanged. Returns the cluster size (0 when the replicas
/// agree everywhere). Throws InvalidParams if the replicas use different graphs.
std::size_t icm_move(IncrementalState& a, IncrementalState& b, CounterRng& rng);

/// One trial of `params.kind`. The trial's random streams are keyed by
/// (seed, trial_index, stream).
TrialRecord run_trial(const std::shared_ptr<const Graph>& graph, const SolverParams& params, std::uint64_t seed,
                      std::uint32_t trial_index = 0);

TrialRecord simulated_annealing(const ProblemInstance& inst, const SolverParams& params, std::uint64_t seed);
TrialRecord parallel_tempering(const ProblemInstance& inst, const SolverParams& params, std::uint64_t seed);

struct BenchRecord {
  std::vector<TrialRecord> trials;  ///< ordered by trial_index
  std::optional<CutValue> target;
  std::int64_t successes = 0;
  double p_s = 0.0;
  /// Mean of the per-trial wall times.
  double t_trial = 0.0;
  /// Elapsed time of the whole batch, including worker start-up.
  double batch_wall_time = 0.0;
  CutValue best_value = 0;
  std::uint32_t best_trial = 0;
};

/// Runs `num_trials` trials on up to `workers` threads. Trial t uses seed
/// derive_trial_seed(master_seed, t); results do not depend on `workers`.
BenchRecord run_trials(const ProblemInstance& inst, const SolverParams& params, std::uint32_t num_trials,
                       std::optional<CutValue> target, std::uint32_t workers, std::uint64_t master_seed);

/// Aggregates already-finished trials (the same fold run_trials uses).
BenchRecord aggregate(std::vector<TrialRecord> trials, std::optional<CutValue> target);

}  // namespace sparse_ising
