#include "sparse_ising/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "sparse_ising/error.hpp"

namespace sparse_ising {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// exp(scale * g) for g = 0, -1, ..., -max_gain. Used when |gain| is small.
std::vector<double> acceptance_table(double scale, Field max_gain) {
  std::vector<double> table(static_cast<std::size_t>(max_gain) + 1);
  for (std::size_t g = 0; g < table.size(); ++g) table[g] = std::exp(-scale * static_cast<double>(g));
  return table;
}

constexpr Field kMaxTabulatedGain = 4096;

double parse_double(std::string_view key, std::string_view text) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidParams("bad number for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
  const std::string s(text);
  if (s.empty() || s.front() == '-') {
    throw InvalidParams("bad count for '" + std::string(key) + "': '" + s + "'");
  }
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidParams("bad count for '" + std::string(key) + "': '" + s + "'");
  }
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::LocalSearch:
      return "local-search";
    case SolverKind::SimulatedAnnealing:
      return "simulated-annealing";
    case SolverKind::ParallelTempering:
      return "parallel-tempering";
    case SolverKind::PtIcm:
      return "pt-icm";
  }
  return "unknown";
}

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "ls" || name == "local-search") return SolverKind::LocalSearch;
  if (name == "sa" || name == "simulated-annealing") return SolverKind::SimulatedAnnealing;
  if (name == "pt" || name == "parallel-tempering") return SolverKind::ParallelTempering;
  if (name == "pticm" || name == "pt-icm") return SolverKind::PtIcm;
  throw InvalidParams("unknown solver '" + std::string(name) + "' (expected ls, sa, pt or pticm)");
}

void SolverParams::validate() const {
  if (sweeps_per_run < 1) throw InvalidParams("sweeps per run must be at least 1");
  if (restarts < 1) throw InvalidParams("restarts must be at least 1");
  if (!(t_cold > 0.0)) throw InvalidParams("T_cold must be positive");
  if (t_hot && !(*t_hot > t_cold)) throw InvalidParams("T_hot must exceed T_cold");
  if (cooling && !(*cooling > 0.0 && *cooling <= 1.0)) throw InvalidParams("cooling factor must lie in (0, 1]");
  if (!(target_acceptance > 0.0 && target_acceptance < 1.0)) {
    throw InvalidParams("target acceptance must lie in (0, 1)");
  }
  if (calibration_probes < 1) throw InvalidParams("calibration probes must be at least 1");
  if (icm_period < 1) throw InvalidParams("ICM period must be at least 1");
  if (kind == SolverKind::ParallelTempering || kind == SolverKind::PtIcm) {
    const auto b = ladder();
    if (b.size() < 2) throw InvalidParams("parallel tempering needs at least 2 replicas");
    if (!(b.front() > 0.0)) throw InvalidParams("inverse temperatures must be positive");
    for (std::size_t k = 1; k < b.size(); ++k) {
      if (!(b[k] > b[k - 1])) throw InvalidParams("inverse-temperature ladder must be strictly increasing");
    }
  }
}

std::vector<double> SolverParams::ladder() const {
  if (!betas.empty()) return betas;
  if (replicas < 2) return std::vector<double>(replicas, beta_min);
  std::vector<double> out(replicas);
  const double ratio = std::pow(beta_max / beta_min, 1.0 / static_cast<double>(replicas - 1));
  for (std::uint32_t k = 0; k < replicas; ++k) out[k] = beta_min * std::pow(ratio, static_cast<double>(k));
  out.back() = beta_max;
  return out;
}

void SolverParams::set(std::string_view key, std::string_view value) {
  if (key == "solver") {
    kind = parse_solver_kind(value);
  } else if (key == "sweeps") {
    sweeps_per_run = parse_count(key, value);
  } else if (key == "restarts") {
    restarts = static_cast<std::uint32_t>(parse_count(key, value));
  } else if (key == "t-hot") {
    if (value == "auto") t_hot.reset();
    else t_hot = parse_double(key, value);
  } else if (key == "t-cold") {
    t_cold = parse_double(key, value);
  } else if (key == "cooling") {
    if (value == "auto") cooling.reset();
    else cooling = parse_double(key, value);
  } else if (key == "target-acceptance") {
    target_acceptance = parse_double(key, value);
  } else if (key == "calibration-probes") {
    calibration_probes = static_cast<std::uint32_t>(parse_count(key, value));
  } else if (key == "replicas") {
    replicas = static_cast<std::uint32_t>(parse_count(key, value));
  } else if (key == "beta-min") {
    beta_min = parse_double(key, value);
  } else if (key == "beta-max") {
    beta_max = parse_double(key, value);
  } else if (key == "betas") {
    betas.clear();
    std::string item;
    std::istringstream in{std::string(value)};
    while (std::getline(in, item, ',')) {
      const std::string t = trim(item);
      if (!t.empty()) betas.push_back(parse_double(key, t));
    }
  } else if (key == "icm-period") {
    icm_period = static_cast<std::uint32_t>(parse_count(key, value));
  } else {
    throw InvalidParams("unknown solver setting '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> SolverParams::settings() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("solver", std::string(to_string(kind)));
  out.emplace_back("sweeps", std::to_string(sweeps_per_run));
  out.emplace_back("restarts", std::to_string(restarts));
  out.emplace_back("t-hot", t_hot ? format_double(*t_hot) : "auto");
  out.emplace_back("t-cold", format_double(t_cold));
  out.emplace_back("cooling", cooling ? format_double(*cooling) : "auto");
  out.emplace_back("target-acceptance", format_double(target_acceptance));
  out.emplace_back("calibration-probes", std::to_string(calibration_probes));
  out.emplace_back("replicas", std::to_string(replicas));
  out.emplace_back("beta-min", format_double(beta_min));
  out.emplace_back("beta-max", format_double(beta_max));
  std::string list;
  for (double b : betas) list += (list.empty() ? "" : ",") + format_double(b);
  out.emplace_back("betas", list);
  out.emplace_back("icm-period", std::to_string(icm_period));
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_settings(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidParams("config line " + std::to_string(line_no) + ": expected key = value");
    }
    out.emplace_back(trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
  }
  return out;
}

bool same_outcome(const TrialRecord& a, const TrialRecord& b) {
  return a.trial_index == b.trial_index && a.seed == b.seed && a.best_value == b.best_value &&
         a.best_config == b.best_config && a.sweeps_executed == b.sweeps_executed &&
         a.sweep_at_best == b.sweep_at_best;
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint32_t trial) {
  const auto block = philox4x32_10({0, 0, trial, 0xFFFFFFFFu},
                                    {static_cast<std::uint32_t>(master_seed),
                                     static_cast<std::uint32_t>(master_seed >> 32)});
  return (static_cast<std::uint64_t>(block[0]) << 32) | block[1];
}

std::uint64_t local_search(IncrementalState& state, CounterRng& rng, std::uint64_t max_passes) {
  std::vector<std::int32_t> order(static_cast<std::size_t>(state.n()));
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t passes = 0;
  bool improved = true;
  while (improved && passes < max_passes) {
    improved = false;
    rng.shuffle(std::span<std::int32_t>(order));
    for (std::int32_t v : order) {
      if (state.gain_unchecked(v) > 0) {
        state.flip_unchecked(v);
        improved = true;
      }
    }
    ++passes;
  }
  return passes;
}

IncrementalState local_search(const ProblemInstance& inst, const SpinConfig& start, CounterRng& rng) {
  IncrementalState state(Graph::build(inst), start);
  local_search(state, rng);
  return state;
}

double calibrate_t_hot(const IncrementalState& state, CounterRng& rng, std::uint32_t probes, double target) {
  std::vector<double> losses;  // magnitudes of negative gains
  std::uint32_t free_moves = 0;
  for (std::uint32_t p = 0; p < probes; ++p) {
    const auto v = static_cast<std::int32_t>(rng.below(static_cast<std::uint32_t>(state.n())));
    const CutValue g = state.gain_unchecked(v);
    if (g >= 0) ++free_moves;
    else losses.push_back(static_cast<double>(-g));
  }
  if (losses.empty()) return 1.0;
  const double free_share = static_cast<double>(free_moves) / probes;
  const double max_loss = *std::ranges::max_element(losses);
  if (free_share >= target) return max_loss;

  auto mean_acceptance = [&](double t) {
    double sum = free_moves;
    for (double loss : losses) sum += std::exp(-loss / t);
    return sum / probes;
  };
  double lo = 1e-9;
  double hi = max_loss;
  while (mean_acceptance(hi) < target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean_acceptance(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

AnnealSchedule make_schedule(const SolverParams& params, const IncrementalState& start, CounterRng& rng) {
  AnnealSchedule s;
  s.sweeps = params.sweeps_per_run;
  s.t_cold = params.t_cold;
  if (params.t_hot) {
    s.t_hot = *params.t_hot;
  } else {
    // A calibrated T_hot below T_cold would invert the schedule.
    s.t_hot = std::max(calibrate_t_hot(start, rng, params.calibration_probes, params.target_acceptance),
                       2.0 * params.t_cold);
  }
  if (params.cooling) {
    s.factor = *params.cooling;
  } else if (s.sweeps > 1) {
    s.factor = std::pow(s.t_cold / s.t_hot, 1.0 / static_cast<double>(s.sweeps - 1));
  } else {
    s.factor = 1.0;
  }
  return s;
}

AnnealOutcome anneal(IncrementalState& state, const AnnealSchedule& schedule, CounterRng& rng) {
  const Graph& g = state.graph();
  std::vector<std::int32_t> order(static_cast<std::size_t>(g.n()));
  std::iota(order.begin(), order.end(), 0);

  AnnealOutcome out;
  out.best_value = state.cut();
  out.best_config = state.config();
  out.sweep_at_best = 0;

  const bool tabulate = g.max_abs_field() <= kMaxTabulatedGain;
  std::vector<double> table;
  double t = schedule.t_hot;
  for (std::uint64_t sweep = 1; sweep <= schedule.sweeps; ++sweep) {
    if (tabulate) table = acceptance_table(1.0 / t, g.max_abs_field());
    rng.shuffle(std::span<std::int32_t>(order));
    for (std::int32_t v : order) {
      const CutValue gain = state.gain_unchecked(v);
      if (gain >= 0) {
        state.flip_unchecked(v);
        continue;
      }
      const double p = tabulate ? table[static_cast<std::size_t>(-gain)] : std::exp(static_cast<double>(gain) / t);
      if (rng.uniform() < p) state.flip_unchecked(v);
    }
    if (state.cut() > out.best_value) {
      out.best_value = state.cut();
      out.best_config = state.config();
      out.sweep_at_best = sweep;
    }
    t *= schedule.factor;
  }
  return out;
}

ReplicaLadder::ReplicaLadder(std::shared_ptr<const Graph> graph, std::vector<double> betas, std::uint64_t seed,
                             std::uint32_t trial, std::uint32_t stream_base)
    : betas_(std::move(betas)) {
  if (betas_.size() < 2) throw InvalidParams("parallel tempering needs at least 2 replicas");
  const Field max_gain = graph->max_abs_field();
  CounterRng init(seed, trial, stream_base);
  for (std::size_t r = 0; r < betas_.size(); ++r) {
    replicas_.emplace_back(graph, random_config(static_cast<std::size_t>(graph->n()), init));
    rngs_.emplace_back(seed, trial, stream_base + 1 + static_cast<std::uint32_t>(r));
    slot_.push_back(r);
    // Metropolis on H: accept exp(-beta * dH) with dH = -2 * gain.
    if (max_gain <= kMaxTabulatedGain) accept_tables_.push_back(acceptance_table(2.0 * betas_[r], max_gain));
  }
}

void ReplicaLadder::sweep(IncrementalState& state, std::size_t slot, CounterRng& rng) {
  const std::int32_t n = state.n();
  if (!accept_tables_.empty()) {
    const auto& table = accept_tables_[slot];
    for (std::int32_t v = 0; v < n; ++v) {
      const CutValue gain = state.gain_unchecked(v);
      if (gain >= 0 || rng.uniform() < table[static_cast<std::size_t>(-gain)]) state.flip_unchecked(v);
    }
    return;
  }
  const double beta = betas_[slot];
  for (std::int32_t v = 0; v < n; ++v) {
    const CutValue gain = state.gain_unchecked(v);
    if (gain >= 0 || rng.uniform() < std::exp(2.0 * beta * static_cast<double>(gain))) state.flip_unchecked(v);
  }
}

void ReplicaLadder::sweep_all() {
  for (std::size_t k = 0; k < betas_.size(); ++k) sweep(replicas_[slot_[k]], k, rngs_[slot_[k]]);
}

bool ReplicaLadder::attempt_swap(std::size_t k, CounterRng& rng) {
  const double d_beta = betas_[k] - betas_[k + 1];
  const double d_h = static_cast<double>(at(k).energy() - at(k + 1).energy());
  const double x = d_beta * d_h;
  if (x >= 0.0 || rng.uniform() < std::exp(x)) {
    std::swap(slot_[k], slot_[k + 1]);
    return true;
  }
  return false;
}

std::size_t ReplicaLadder::swap_round(unsigned parity, CounterRng& rng) {
  std::size_t accepted = 0;
  for (std::size_t k = parity % 2; k + 1 < betas_.size(); k += 2) accepted += attempt_swap(k, rng) ? 1 : 0;
  return accepted;
}

std::vector<CutValue> ReplicaLadder::energies_by_slot() const {
  std::vector<CutValue> out;
  out.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) out.push_back(at(k).energy());
  return out;
}

std::size_t icm_move(IncrementalState& a, IncrementalState& b, CounterRng& rng) {
  if (a.graph_ptr() != b.graph_ptr()) throw InvalidParams("ICM replicas must share one instance");
  const std::int32_t n = a.n();
  std::vector<std::int32_t> disagree;
  for (std::int32_t i = 0; i < n; ++i) {
    if (a.spin(i) != b.spin(i)) disagree.push_back(i);
  }
  if (disagree.empty()) return 0;

  const Graph& g = a.graph();
  const std::int32_t seed_site = disagree[rng.below(static_cast<std::uint32_t>(disagree.size()))];
  // Flipping a site in both replicas keeps it disagreeing, so "already flipped"
  // needs its own mark.
  std::vector<std::uint8_t> in_cluster(static_cast<std::size_t>(n), 0);
  std::vector<std::int32_t> stack{seed_site};
  in_cluster[seed_site] = 1;
  std::size_t size = 0;
  while (!stack.empty()) {
    const std::int32_t v = stack.back();
    stack.pop_back();
    a.flip_unchecked(v);
    b.flip_unchecked(v);
    ++size;
    const auto nbrs = g.neighbors(v);
    const auto ws = g.weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const std::int32_t u = nbrs[k];
      if (ws[k] != 0 && !in_cluster[u] && a.spin(u) != b.spin(u)) {
        in_cluster[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return size;
}

namespace {

void run_local_search_trial(const std::shared_ptr<const Graph>& graph, const SolverParams& params,
                            std::uint64_t seed, std::uint32_t trial, TrialRecord& rec) {
  CounterRng init(seed, trial, Stream::Init);
  CounterRng sweep_rng(seed, trial, Stream::Sweep);
  bool first = true;
  for (std::uint32_t r = 0; r < params.restarts; ++r) {
    IncrementalState state(graph, random_config(static_cast<std::size_t>(graph->n()), init));
    rec.sweeps_executed += local_search(state, sweep_rng, params.sweeps_per_run);
    if (first || state.cut() > rec.best_value) {
      rec.best_value = state.cut();
      rec.best_config = state.config();
      rec.sweep_at_best = rec.sweeps_executed;
      first = false;
    }
  }
}

void run_annealing_trial(const std::shared_ptr<const Graph>& graph, const SolverParams& params,
                         std::uint64_t seed, std::uint32_t trial, TrialRecord& rec) {
  CounterRng init(seed, trial, Stream::Init);
  CounterRng sweep_rng(seed, trial, Stream::Sweep);
  CounterRng calibrate(seed, trial, Stream::Calibrate);
  std::optional<AnnealSchedule> schedule;
  bool first = true;
  for (std::uint32_t r = 0; r < params.restarts; ++r) {
    IncrementalState state(graph, random_config(static_cast<std::size_t>(graph->n()), init));
    if (!schedule) schedule = make_schedule(params, state, calibrate);
    AnnealOutcome outcome = anneal(state, *schedule, sweep_rng);
    if (first || outcome.best_value > rec.best_value) {
      rec.best_value = outcome.best_value;
      rec.best_config = std::move(outcome.best_config);
      rec.sweep_at_best = rec.sweeps_executed + outcome.sweep_at_best;
      first = false;
    }
    rec.sweeps_executed += schedule->sweeps;
  }
}

void run_tempering_trial(const std::shared_ptr<const Graph>& graph, const SolverParams& params, std::uint64_t seed,
                         std::uint32_t trial, TrialRecord& rec, bool with_icm) {
  const std::vector<double> betas = params.ladder();
  const auto per_ladder = static_cast<std::uint32_t>(betas.size()) + 1;
  CounterRng swap_rng(seed, trial, Stream::Swap);
  CounterRng cluster_rng(seed, trial, Stream::Cluster);
  bool first = true;
  auto consider = [&](const IncrementalState& s, std::uint64_t sweep) {
    if (first || s.cut() > rec.best_value) {
      rec.best_value = s.cut();
      rec.best_config = s.config();
      rec.sweep_at_best = sweep;
      first = false;
    }
  };

  for (std::uint32_t r = 0; r < params.restarts; ++r) {
    // Restart r owns a disjoint block of replica streams.
    const std::uint32_t base =
        static_cast<std::uint32_t>(Stream::Replica) + r * 2 * per_ladder;
    ReplicaLadder chain_a(graph, betas, seed, trial, base);
    std::optional<ReplicaLadder> chain_b;
    if (with_icm) chain_b.emplace(graph, betas, seed, trial, base + per_ladder);

    for (std::size_t k = 0; k < chain_a.size(); ++k) {
      consider(chain_a.at(k), rec.sweeps_executed);
      if (chain_b) consider(chain_b->at(k), rec.sweeps_executed);
    }
    for (std::uint64_t round = 1; round <= params.sweeps_per_run; ++round) {
      chain_a.sweep_all();
      if (chain_b) chain_b->sweep_all();
      if (chain_b && round % params.icm_period == 0) {
        for (std::size_t k = 0; k < chain_a.size(); ++k) icm_move(chain_a.at(k), chain_b->at(k), cluster_rng);
      }
      const std::uint64_t sweep = rec.sweeps_executed + round;
      for (std::size_t k = 0; k < chain_a.size(); ++k) {
        consider(chain_a.at(k), sweep);
        if (chain_b) consider(chain_b->at(k), sweep);
      }
      const auto parity = static_cast<unsigned>(round % 2);
      chain_a.swap_round(parity, swap_rng);
      if (chain_b) chain_b->swap_round(parity, swap_rng);
    }
    rec.sweeps_executed += params.sweeps_per_run;
  }
}

}  // namespace

TrialRecord run_trial(const std::shared_ptr<const Graph>& graph, const SolverParams& params, std::uint64_t seed,
                      std::uint32_t trial_index) {
  params.validate();
  const auto start = Clock::now();
  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.seed = seed;
  switch (params.kind) {
    case SolverKind::LocalSearch:
      run_local_search_trial(graph, params, seed, trial_index, rec);
      break;
    case SolverKind::SimulatedAnnealing:
      run_annealing_trial(graph, params, seed, trial_index, rec);
      break;
    case SolverKind::ParallelTempering:
      run_tempering_trial(graph, params, seed, trial_index, rec, false);
      break;
    case SolverKind::PtIcm:
      run_tempering_trial(graph, params, seed, trial_index, rec, true);
      break;
  }
  rec.wall_time = seconds_since(start);
  return rec;
}

TrialRecord simulated_annealing(const ProblemInstance& inst, const SolverParams& params, std::uint64_t seed) {
  SolverParams p = params;
  p.kind = SolverKind::SimulatedAnnealing;
  return run_trial(Graph::build(inst), p, seed);
}

TrialRecord parallel_tempering(const ProblemInstance& inst, const SolverParams& params, std::uint64_t seed) {
  SolverParams p = params;
  if (p.kind != SolverKind::PtIcm) p.kind = SolverKind::ParallelTempering;
  return run_trial(Graph::build(inst), p, seed);
}

BenchRecord aggregate(std::vector<TrialRecord> trials, std::optional<CutValue> target) {
  std::ranges::sort(trials, {}, &TrialRecord::trial_index);
  BenchRecord out;
  out.target = target;
  if (trials.empty()) return out;
  double wall = 0.0;
  out.best_value = trials.front().best_value;
  out.best_trial = trials.front().trial_index;
  for (const auto& t : trials) {
    wall += t.wall_time;
    if (target && t.best_value >= *target) ++out.successes;
    if (t.best_value > out.best_value) {
      out.best_value = t.best_value;
      out.best_trial = t.trial_index;
    }
  }
  out.t_trial = wall / static_cast<double>(trials.size());
  out.p_s = target ? static_cast<double>(out.successes) / static_cast<double>(trials.size()) : 0.0;
  out.trials = std::move(trials);
  return out;
}

BenchRecord run_trials(const ProblemInstance& inst, const SolverParams& params, std::uint32_t num_trials,
                       std::optional<CutValue> target, std::uint32_t workers, std::uint64_t master_seed) {
  if (num_trials < 1) throw InvalidParams("need at least one trial");
  if (workers < 1) throw InvalidParams("need at least one worker");
  params.validate();

  const auto start = Clock::now();
  const auto graph = Graph::build(inst);
  std::vector<TrialRecord> records(num_trials);
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::uint32_t t = next++; t < num_trials; t = next++) {
      try {
        records[t] = run_trial(graph, params, derive_trial_seed(master_seed, t), t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::uint32_t threads = std::min(workers, num_trials);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::uint32_t w = 0; w < threads; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  BenchRecord out = aggregate(std::move(records), target);
  out.batch_wall_time = seconds_since(start);
  return out;
}

}  // namespace sparse_ising
