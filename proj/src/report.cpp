#include "sparse_ising/report.hpp"

#include <chrono>
#include <ctime>

#include <fmt/format.h>

#include "sparse_ising/error.hpp"
#include "sparse_ising/metrics.hpp"
#include "sparse_ising/verify.hpp"

#ifndef SPARSE_ISING_VERSION
#define SPARSE_ISING_VERSION "0.0.0"
#endif

namespace sparse_ising {

using nlohmann::json;

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

std::string_view tool_version() { return SPARSE_ISING_VERSION; }

BenchReport recompute_aggregates(const BenchReport& report) {
  BenchReport out = report;
  const BenchRecord agg = aggregate(report.trials, report.target);
  out.num_trials = static_cast<std::uint32_t>(agg.trials.size());
  out.successes = agg.successes;
  out.p_s = agg.p_s;
  out.t_trial_mean = agg.t_trial;
  out.best_value_found = agg.best_value;
  out.best_trial = agg.best_trial;

  double sweeps = 0.0;
  for (const auto& t : agg.trials) sweeps += static_cast<double>(t.sweeps_executed);
  out.sweeps_per_trial = agg.trials.empty() ? 0.0 : sweeps / static_cast<double>(agg.trials.size());

  if (auto meta = find_meta(report.instance_id)) {
    out.best_known = meta->best_known;
    out.quality = metrics::solution_quality(static_cast<double>(out.best_value_found),
                                            static_cast<double>(meta->best_known));
  } else {
    out.best_known.reset();
    out.quality.reset();
  }

  out.r.reset();
  out.ttt.reset();
  out.sweeps_to_target.reset();
  if (report.target && out.successes > 0) {
    out.r = metrics::repetitions(out.p_s);
    out.ttt = out.t_trial_mean * *out.r;
    out.sweeps_to_target = out.sweeps_per_trial * *out.r;
  }
  return out;
}

BenchReport make_report(const ProblemInstance& inst, const SolverParams& params, const BenchRecord& bench,
                        std::uint32_t workers, std::uint64_t master_seed) {
  BenchReport report;
  report.tool_version = std::string(tool_version());
  report.rng_algorithm = CounterRng::kAlgorithm;
  report.generated_at = utc_now();
  report.instance_id = inst.id;
  report.n = inst.n;
  report.m = static_cast<std::int64_t>(inst.m());
  report.params = params;
  report.workers = workers;
  report.master_seed = master_seed;
  report.target = bench.target;
  report.batch_wall_time = bench.batch_wall_time;
  report.trials = bench.trials;
  return recompute_aggregates(report);
}

json to_json(const BenchReport& report) {
  json params = json::object();
  for (const auto& [k, v] : report.params.settings()) params[k] = v;

  json trials = json::array();
  for (const auto& t : report.trials) {
    trials.push_back({
        {"trial_index", t.trial_index},
        {"seed", t.seed},
        {"best_value", t.best_value},
        {"sweeps_executed", t.sweeps_executed},
        {"sweep_at_best", t.sweep_at_best},
        {"wall_time", t.wall_time},
        {"best_config_hex", encode_hex_solution(t.best_config)},
    });
  }

  return json{
      {"schema_version", report.schema_version},
      {"tool_version", report.tool_version},
      {"rng_algorithm", report.rng_algorithm},
      {"generated_at", report.generated_at},
      {"instance", {{"id", report.instance_id}, {"n", report.n}, {"m", report.m}}},
      {"solver", params},
      {"num_trials", report.num_trials},
      {"workers", report.workers},
      {"master_seed", report.master_seed},
      {"target", optional_json(report.target)},
      {"successes", report.successes},
      {"p_s", report.p_s},
      {"t_trial_mean", report.t_trial_mean},
      {"batch_wall_time", report.batch_wall_time},
      {"sweeps_per_trial", report.sweeps_per_trial},
      {"best_value_found", report.best_value_found},
      {"best_trial", report.best_trial},
      {"best_known", optional_json(report.best_known)},
      {"quality", optional_json(report.quality)},
      {"ttt_reachable", report.ttt.has_value()},
      {"r", optional_json(report.r)},
      {"ttt", optional_json(report.ttt)},
      {"sweeps_to_target", optional_json(report.sweeps_to_target)},
      {"trials", trials},
  };
}

BenchReport report_from_json(const json& j) {
  try {
    BenchReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
      throw Error("unsupported report schema_version " + std::to_string(r.schema_version));
    }
    r.tool_version = j.at("tool_version").get<std::string>();
    r.rng_algorithm = j.at("rng_algorithm").get<std::string>();
    r.generated_at = j.at("generated_at").get<std::string>();
    const auto& inst = j.at("instance");
    r.instance_id = inst.at("id").get<std::string>();
    r.n = inst.at("n").get<std::int32_t>();
    r.m = inst.at("m").get<std::int64_t>();
    for (const auto& [k, v] : j.at("solver").items()) r.params.set(k, v.get<std::string>());
    r.num_trials = j.at("num_trials").get<std::uint32_t>();
    r.workers = j.at("workers").get<std::uint32_t>();
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    r.target = optional_field<CutValue>(j, "target");
    r.successes = j.at("successes").get<std::int64_t>();
    r.p_s = j.at("p_s").get<double>();
    r.t_trial_mean = j.at("t_trial_mean").get<double>();
    r.batch_wall_time = j.at("batch_wall_time").get<double>();
    r.sweeps_per_trial = j.at("sweeps_per_trial").get<double>();
    r.best_value_found = j.at("best_value_found").get<CutValue>();
    r.best_trial = j.at("best_trial").get<std::uint32_t>();
    r.best_known = optional_field<CutValue>(j, "best_known");
    r.quality = optional_field<double>(j, "quality");
    r.r = optional_field<double>(j, "r");
    r.ttt = optional_field<double>(j, "ttt");
    r.sweeps_to_target = optional_field<double>(j, "sweeps_to_target");
    for (const auto& t : j.at("trials")) {
      TrialRecord rec;
      rec.trial_index = t.at("trial_index").get<std::uint32_t>();
      rec.seed = t.at("seed").get<std::uint64_t>();
      rec.best_value = t.at("best_value").get<CutValue>();
      rec.sweeps_executed = t.at("sweeps_executed").get<std::uint64_t>();
      rec.sweep_at_best = t.at("sweep_at_best").get<std::uint64_t>();
      rec.wall_time = t.at("wall_time").get<double>();
      rec.best_config = decode_hex_solution({t.at("best_config_hex").get<std::string>(), static_cast<std::size_t>(r.n)});
      r.trials.push_back(std::move(rec));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

std::string csv_header() {
  return "instance,solver,num_trials,target,successes,p_s,t_trial_mean,best_value_found,best_known,quality,"
         "sweeps_per_trial,sweeps_to_target,ttt,master_seed,tool_version";
}

std::string csv_row(const BenchReport& r) {
  auto opt_int = [](const std::optional<CutValue>& v) { return v ? std::to_string(*v) : std::string(); };
  auto opt_num = [](const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); };
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.instance_id, to_string(r.params.kind),
                     r.num_trials, opt_int(r.target), r.successes, r.p_s, r.t_trial_mean, r.best_value_found,
                     opt_int(r.best_known), opt_num(r.quality), r.sweeps_per_trial, opt_num(r.sweeps_to_target),
                     opt_num(r.ttt), r.master_seed, r.tool_version);
}

std::string summary_line(const BenchReport& r) {
  std::string line = fmt::format("{} {} trials={} best={}", r.instance_id, to_string(r.params.kind), r.num_trials,
                                 r.best_value_found);
  if (r.quality) line += fmt::format(" quality={:.2f}%", 100.0 * *r.quality);
  line += fmt::format(" t_trial={:.4g}s", r.t_trial_mean);
  if (!r.target) return line;
  line += fmt::format(" target={} P_s={:.2f}", *r.target, r.p_s);
  if (r.ttt) {
    line += fmt::format(" TTT={:.4g}s sweeps-to-target={:.4g}", *r.ttt, *r.sweeps_to_target);
  } else {
    line += " TTT=unreachable";
  }
  return line;
}

}  // namespace sparse_ising
