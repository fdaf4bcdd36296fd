#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sparse_ising {

using Weight = std::int32_t;
using CutValue = std::int64_t;

/// Undirected weighted edge with 1-based endpoints, as written in Gset files.
struct Edge {
  std::int32_t u = 0;
  std::int32_t v = 0;
  Weight w = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct ProblemInstance {
  std::string id;
  std::int32_t n = 0;
  std::vector<Edge> edges;
  std::string source_path;

  std::size_t m() const noexcept { return edges.size(); }

  /// Structural equality (id and provenance are ignored).
  bool same_graph(const ProblemInstance& other) const {
    return n == other.n && edges == other.edges;
  }
};

enum class ProblemType { ToroidalSpinGlass, SparseRandomUnweighted };

std::string_view to_string(ProblemType type);

/// Compiled-in description of a benchmark instance.
struct InstanceMeta {
  std::string_view id;
  std::int32_t n;
  std::int64_t m;
  ProblemType problem_type;
  CutValue best_known;
  std::string_view best_known_source;
  /// Sweeps per run used for the published 99.5-99.8% quality runs; a
  /// starting point for baseline solvers, not a tuned value.
  std::uint64_t default_sweeps_per_run;
};

/// All registry entries, in the order G65, G66, G67, G70, G72, G77, G81.
std::span<const InstanceMeta> registry();

/// Registry lookup; ids are case-insensitive ("g72" == "G72").
std::optional<InstanceMeta> find_meta(std::string_view id);

/// Throws RegistryError when the id is unknown.
const InstanceMeta& require_meta(std::string_view id);

/// Parses whitespace-separated Gset text: "n m" followed by m "u v w" triples.
/// Errors throw ParseError with the offending line number.
ProblemInstance parse_gset(std::istream& in, std::string id = {}, std::string source_path = {});
ProblemInstance parse_gset_text(std::string_view text, std::string id = {}, std::string source_path = {});
ProblemInstance read_gset_file(const std::string& path, std::string id = {});

/// Canonical Gset text: "n m\n" then one "u v w\n" line per edge in stored order.
std::string serialize_gset(const ProblemInstance& inst);

struct InstanceStats {
  std::int32_t n = 0;
  std::int64_t m = 0;
  CutValue total_weight = 0;
  std::map<Weight, std::int64_t> weight_histogram;
  std::int32_t min_degree = 0;
  std::int32_t max_degree = 0;
  double mean_degree = 0.0;
  /// Upper bound on any cut: sum of positive weights.
  CutValue positive_weight = 0;
};

InstanceStats instance_stats(const ProblemInstance& inst);

}  // namespace sparse_ising
