// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--criterion N]... [--cache-dir DIR] [--offline]
//
// Exit status is nonzero when any selected gating criterion fails. Criterion 7
// is informational and never fails the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "sparse_ising/sparse_ising.hpp"

namespace si = sparse_ising;
using Clock = std::chrono::steady_clock;

namespace {

struct Options {
  std::set<int> criteria;
  si::FetchOptions fetch;
};

Options g_options;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, std::string what) {
    details.push_back(fmt::format("  [{}] {}", ok ? "ok" : "FAIL", what));
    pass = pass && ok;
  }
  void note(std::string what) { details.push_back("  " + std::move(what)); }
};

std::optional<si::ProblemInstance> load(const std::string& id, Outcome& out) {
  try {
    auto inst = si::fetch_instance(id, g_options.fetch).instance;
    return inst;
  } catch (const si::Error& e) {
    out.check(false, fmt::format("{} unavailable: {}", id, e.what()));
    return std::nullopt;
  }
}

double rel_err(double got, double want) { return std::abs(got / want - 1.0); }

// Criterion 1: the two record bitstrings certify exactly.
Outcome record_certification() {
  Outcome out;
  const struct {
    const char* id;
    const char* asset;
    si::CutValue claim;
  } records[] = {{"G72", "g72_7008", 7008}, {"G77", "g77_9940", 9940}};
  for (const auto& rec : records) {
    const auto file = si::parse_solution_file(*si::bundled_solution(rec.asset));
    out.note(fmt::format("{}: bundled payload has {} hex chars ({} bits) for n={}", rec.asset, file.hex.size(),
                         4 * file.hex.size(), file.n.value_or(0)));
    const auto inst = load(rec.id, out);
    if (!inst) continue;
    const auto start = Clock::now();
    try {
      const auto cfg = file.decode(static_cast<std::size_t>(inst->n));
      const auto report = si::certify(*inst, cfg, rec.claim);
      const double t = seconds_since(start);
      out.check(report.cut == rec.claim && t < 1.0,
                fmt::format("{} cut={} (claimed {}) in {:.3f}s", rec.id, report.cut, rec.claim, t));
    } catch (const si::Error& e) {
      out.check(false, fmt::format("{} certification error: {}", rec.id, e.what()));
    }
  }
  return out;
}

// Criterion 2: registry constants and parsed sizes.
Outcome instance_registry() {
  Outcome out;
  const struct {
    const char* id;
    std::int32_t n;
    std::int64_t m;
    si::CutValue best;
  } expected[] = {{"G65", 8000, 16000, 5562},  {"G66", 9000, 18000, 6364},  {"G67", 10000, 20000, 6950},
                  {"G70", 10000, 9999, 9595},  {"G72", 10000, 20000, 7008}, {"G77", 14000, 28000, 9940},
                  {"G81", 20000, 40000, 14056}};
  for (const auto& e : expected) {
    const auto meta = si::find_meta(e.id);
    out.check(meta && meta->n == e.n && meta->m == e.m && meta->best_known == e.best,
              fmt::format("registry {}: n={} m={} best_known={}", e.id, meta ? meta->n : -1, meta ? meta->m : -1,
                          meta ? meta->best_known : -1));
  }
  for (const auto& e : expected) {
    const auto inst = load(e.id, out);
    if (!inst) continue;
    out.check(inst->n == e.n && static_cast<std::int64_t>(inst->m()) == e.m,
              fmt::format("parsed {}: n={} m={}", e.id, inst->n, inst->m()));
  }
  return out;
}

// Criterion 3: the published benchmark arithmetic.
Outcome metric_reproduction() {
  Outcome out;
  namespace pub = si::published;
  namespace m = si::metrics;
  for (const auto& row : pub::bls_table()) {
    const auto p = m::bls_projection(row.avg_time_per_success, row.successes, row.runs);
    const double err = rel_err(p.projected_ttt, row.printed_projected_ttt);
    out.check(err <= 0.005, fmt::format("{} projected BLS TTT {:.1f} vs {} ({:.3f}%)", row.id, p.projected_ttt,
                                        row.printed_projected_ttt, 100 * err));
  }
  for (const auto& row : pub::speedup_table()) {
    const double sweeps = m::sweeps_to_target(static_cast<double>(row.sweeps_per_run), row.success_probability);
    const double err = rel_err(sweeps, row.printed_sweeps_to_target);
    out.check(err <= 0.01, fmt::format("{} sweeps-to-target {:.0f} vs {} ({:.3f}%)", row.id, sweeps,
                                       row.printed_sweeps_to_target, 100 * err));
  }
  for (const auto& row : pub::speedup_table()) {
    const double q = m::solution_quality(static_cast<double>(row.sbm_attained),
                                         static_cast<double>(si::require_meta(row.id).best_known));
    const double pct = std::round(q * 10000.0) / 100.0;
    out.check(std::abs(pct - row.printed_quality_percent) < 1e-9,
              fmt::format("{} quality {:.2f}% vs {:.2f}%", row.id, pct, row.printed_quality_percent));
  }
  for (const auto& row : pub::speedup_table()) {
    const double s = m::speedup(row.sbm_ttt_seconds, row.ttt_seconds);
    const double err = rel_err(s, row.printed_speedup);
    out.check(err <= 0.01,
              fmt::format("{} speedup {:.0f}x vs {}x ({:.3f}%)", row.id, s, row.printed_speedup, 100 * err));
  }
  return out;
}

// Criterion 4: solvers never beat exact optima; SA with 100 restarts finds them.
Outcome oracle_equivalence() {
  Outcome out;
  const auto start = Clock::now();
  const std::vector<si::SolverKind> kinds{si::SolverKind::LocalSearch, si::SolverKind::SimulatedAnnealing,
                                          si::SolverKind::ParallelTempering, si::SolverKind::PtIcm};
  const int instances = 120;
  int above = 0;
  int sa_hits = 0;
  for (int k = 0; k < instances; ++k) {
    const int n = 6 + k % 11;  // 6..16
    const double density = 0.2 + 0.1 * (k % 6);
    const auto inst = oracle::random_graph(n, density, 1000 + static_cast<std::uint64_t>(k), k % 4 == 0);
    const si::CutValue opt = oracle::brute_force_max_cut(inst);
    const auto graph = si::Graph::build(inst);
    for (auto kind : kinds) {
      si::SolverParams p;
      p.kind = kind;
      p.sweeps_per_run = 100;
      p.replicas = 8;
      const auto rec = si::run_trial(graph, p, static_cast<std::uint64_t>(k));
      above += rec.best_value > opt || si::cut_value(inst, rec.best_config) != rec.best_value;
    }
    si::SolverParams sa;
    sa.kind = si::SolverKind::SimulatedAnnealing;
    sa.sweeps_per_run = 100;
    sa.restarts = 100;
    const auto rec = si::run_trial(graph, sa, static_cast<std::uint64_t>(k));
    above += rec.best_value > opt;
    sa_hits += rec.best_value == opt;
  }
  out.check(above == 0, fmt::format("{} random instances (n=6..16): {} results above the exhaustive optimum",
                                    instances, above));
  const double rate = static_cast<double>(sa_hits) / instances;
  out.check(rate >= 0.95, fmt::format("SA with 100 restarts reached the optimum on {}/{} ({:.1f}%)", sa_hits,
                                      instances, 100 * rate));

  const auto grid = oracle::random_torus(8, 2024);
  const auto torus = grid.instance("torus8");
  const si::CutValue opt = oracle::torus_max_cut(grid);
  const auto graph = si::Graph::build(torus);
  si::CutValue best_any = 0;
  int torus_above = 0;
  for (auto kind : kinds) {
    si::SolverParams p;
    p.kind = kind;
    p.sweeps_per_run = 500;
    p.replicas = 12;
    for (std::uint32_t t = 0; t < 10; ++t) {
      const auto rec = si::run_trial(graph, p, si::derive_trial_seed(3, t), t);
      torus_above += rec.best_value > opt;
      best_any = std::max(best_any, rec.best_value);
    }
  }
  si::SolverParams sa;
  sa.kind = si::SolverKind::SimulatedAnnealing;
  sa.sweeps_per_run = 2000;
  const auto batch = si::run_trials(torus, sa, 100, opt, 1, 8);
  out.check(torus_above == 0 && batch.best_value == opt,
            fmt::format("8x8 toroidal grid: transfer-matrix optimum {}, best over 100 SA trials {} (P_s={:.2f}), "
                        "no solver above it",
                        opt, batch.best_value, batch.p_s));
  const double t = seconds_since(start);
  out.check(t < 300.0, fmt::format("runtime {:.1f}s (limit 300s)", t));
  return out;
}

// Criterion 5: exact integer invariants.
Outcome model_invariants() {
  Outcome out;
  auto flip_check = [&](const si::ProblemInstance& inst, const std::string& label, bool gating) {
    const auto graph = si::Graph::build(inst);
    si::CutValue w = 0;
    for (const auto& e : inst.edges) w += e.w;
    si::IncrementalState st(graph, si::random_config(static_cast<std::size_t>(inst.n), 67));
    si::CounterRng rng(67, 0, 0);
    int bad = 0;
    for (int k = 0; k < 10000; ++k) {
      st.apply_flip(static_cast<std::int32_t>(rng.below(static_cast<std::uint32_t>(inst.n))));
      if (k % 100 == 99) {
        auto fresh = st;
        fresh.recompute();
        bad += !(fresh == st);
      }
    }
    const auto cfg = st.config();
    const si::CutValue cut = si::cut_value(inst, cfg);
    const si::CutValue h = si::ising_energy(inst, cfg);
    const bool ok = bad == 0 && cut == st.cut() && h == st.energy() && cut == (w - h) / 2 && (w - h) % 2 == 0;
    const auto what = fmt::format("{}: 10^4 flips, cut={} H={} W={}, incremental == recompute", label, cut, h, w);
    if (gating) {
      out.check(ok, what);
    } else {
      out.note(fmt::format("[{}] {}", ok ? "ok" : "FAIL", what));
    }
  };
  if (const auto g67 = load("G67", out)) {
    flip_check(*g67, "G67", true);
  } else {
    flip_check(oracle::random_torus(100, 67).instance(), "stand-in 100x100 torus (does not replace G67)", false);
  }

  {
    const auto inst = oracle::random_torus(16, 5).instance();
    const auto graph = si::Graph::build(inst);
    si::IncrementalState a(graph, si::random_config(inst.n, 1));
    si::IncrementalState b(graph, si::random_config(inst.n, 2));
    si::CounterRng cluster(9, 0, si::Stream::Cluster);
    si::CounterRng flips(9, 0, si::Stream::Sweep);
    int violations = 0;
    std::size_t flipped = 0;
    for (int k = 0; k < 10000; ++k) {
      a.apply_flip(static_cast<std::int32_t>(flips.below(256)));
      b.apply_flip(static_cast<std::int32_t>(flips.below(256)));
      const si::CutValue before = a.energy() + b.energy();
      flipped += si::icm_move(a, b, cluster);
      violations += a.energy() + b.energy() != before;
    }
    const bool exact = a.energy() == si::ising_energy(inst, a.config()) &&
                       b.energy() == si::ising_energy(inst, b.config());
    out.check(violations == 0 && exact,
              fmt::format("ICM on 16x16 grid: 10^4 moves ({} sites flipped), {} violations of H_a+H_b",
                          flipped, violations));
  }

  {
    const auto inst = oracle::random_torus(12, 6).instance();
    std::vector<double> betas{0.2, 0.35, 0.6, 0.9, 1.3, 1.8, 2.4, 3.0};
    si::ReplicaLadder ladder(si::Graph::build(inst), betas, 4, 0, 16);
    si::CounterRng rng(4, 0, si::Stream::Swap);
    auto multiset = [&] {
      std::vector<std::vector<si::Spin>> cfgs;
      for (std::size_t k = 0; k < ladder.size(); ++k) {
        const auto s = ladder.at(k).spins();
        cfgs.emplace_back(s.begin(), s.end());
      }
      std::sort(cfgs.begin(), cfgs.end());
      return cfgs;
    };
    int broken = 0;
    std::size_t accepted = 0;
    for (int round = 0; round < 2000; ++round) {
      ladder.sweep_all();
      const auto before = multiset();
      accepted += ladder.swap_round(static_cast<unsigned>(round % 2), rng);
      broken += multiset() != before;
    }
    out.check(broken == 0, fmt::format("PT swaps: 2000 rounds, {} accepted swaps, multiset changed {} times",
                                       accepted, broken));
  }
  return out;
}

// Criterion 6: worker count does not change any trial.
Outcome determinism() {
  Outcome out;
  const auto inst = oracle::random_torus(16, 66).instance("torus16");
  for (auto kind : {si::SolverKind::LocalSearch, si::SolverKind::SimulatedAnnealing,
                    si::SolverKind::ParallelTempering, si::SolverKind::PtIcm}) {
    si::SolverParams p;
    p.kind = kind;
    p.sweeps_per_run = 100;
    p.replicas = 8;
    p.restarts = 2;
    const auto one = si::run_trials(inst, p, 30, std::nullopt, 1, 20240101);
    const auto six = si::run_trials(inst, p, 30, std::nullopt, 6, 20240101);
    bool same = one.trials.size() == six.trials.size();
    for (std::size_t t = 0; same && t < one.trials.size(); ++t) same = si::same_outcome(one.trials[t], six.trials[t]);
    out.check(same, fmt::format("{}: 30 trials, workers 1 vs 6 identical records", si::to_string(kind)));
  }
  return out;
}

// Criterion 7 (non-gating): PT+ICM quality on G65 within ten minutes.
Outcome soft_performance() {
  Outcome out;
  out.note("Not reproducible here: the closed solver's P_s/TTT values and the SBM / Digital Annealer hardware "
           "timings; they appear only as reference constants.");
  Outcome probe;
  const auto g65 = load("G65", probe);
  if (!g65) {
    out.note("G65 not available; performance indicator not measured (" + probe.details.front().substr(9) + ")");
    return out;
  }
  const auto graph = si::Graph::build(*g65);
  si::SolverParams p;
  p.kind = si::SolverKind::PtIcm;
  p.sweeps_per_run = 500;
  p.replicas = 24;
  const auto start = Clock::now();
  si::CutValue best = 0;
  std::uint32_t trial = 0;
  while (seconds_since(start) < 600.0 && best < 5507) {
    best = std::max(best, si::run_trial(graph, p, si::derive_trial_seed(7, trial), trial).best_value);
    ++trial;
    p.sweeps_per_run = std::min<std::uint64_t>(p.sweeps_per_run * 2, 64000);
  }
  out.note(fmt::format("G65 PT+ICM best {} ({:.2f}% of 5562) after {} trials in {:.0f}s; indicator {}", best,
                       100.0 * static_cast<double>(best) / 5562.0, trial, seconds_since(start),
                       best >= 5507 ? "met" : "not met"));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      g_options.criteria.insert(std::stoi(argv[++i]));
    } else if (arg == "--cache-dir" && i + 1 < argc) {
      g_options.fetch.cache_dir = argv[++i];
    } else if (arg == "--offline") {
      g_options.fetch.offline = true;
    } else {
      fmt::print(stderr, "usage: acceptance [--criterion N]... [--cache-dir DIR] [--offline]\n");
      return 2;
    }
  }
  g_options.fetch.timeout_seconds = 30;
  if (g_options.criteria.empty()) g_options.criteria = {1, 2, 3, 4, 5, 6, 7};

  const std::map<int, std::pair<const char*, std::function<Outcome()>>> suite{
      {1, {"record certification (G72=7008, G77=9940)", record_certification}},
      {2, {"instance registry and parsed sizes", instance_registry}},
      {3, {"metric reproduction of published tables", metric_reproduction}},
      {4, {"oracle equivalence on small instances", oracle_equivalence}},
      {5, {"model invariants", model_invariants}},
      {6, {"determinism across worker counts", determinism}},
      {7, {"desk-scale performance indicator (non-gating)", soft_performance}},
  };

  bool all_pass = true;
  for (int c : g_options.criteria) {
    const auto it = suite.find(c);
    if (it == suite.end()) {
      fmt::print(stderr, "unknown criterion {}\n", c);
      return 2;
    }
    Outcome outcome;
    try {
      outcome = it->second.second();
    } catch (const std::exception& e) {
      outcome.check(false, std::string("unexpected error: ") + e.what());
    }
    const bool gating = c != 7;
    const char* verdict = !gating ? "INFO" : outcome.pass ? "PASS" : "FAIL";
    fmt::print("{} criterion {}: {}\n", verdict, c, it->second.first);
    for (const auto& line : outcome.details) fmt::print("{}\n", line);
    if (gating) all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
