#include "sparse_ising/instance.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "sparse_ising/error.hpp"

namespace sparse_ising {

namespace {

constexpr std::array<InstanceMeta, 7> kRegistry{{
    {"G65", 8000, 16000, ProblemType::ToroidalSpinGlass, 5562, "long-standing best reported value", 8000},
    {"G66", 9000, 18000, ProblemType::ToroidalSpinGlass, 6364, "long-standing best reported value", 8000},
    {"G67", 10000, 20000, ProblemType::ToroidalSpinGlass, 6950, "long-standing best reported value", 4000},
    {"G70", 10000, 9999, ProblemType::SparseRandomUnweighted, 9595,
     "Chen et al. 2023, Monte Carlo policy gradient with local search", 15000},
    {"G72", 10000, 20000, ProblemType::ToroidalSpinGlass, 7008, "record bitstring bundled as g72_7008.hex", 7000},
    {"G77", 14000, 28000, ProblemType::ToroidalSpinGlass, 9940, "record bitstring bundled as g77_9940.hex", 7000},
    {"G81", 20000, 40000, ProblemType::ToroidalSpinGlass, 14056,
     "Shylo & Shylo 2017, algorithm portfolios and teams", 3000},
}};

bool iequals(std::string_view a, std::string_view b) {
  return std::ranges::equal(a, b, [](char x, char y) {
    return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
  });
}

// Pulls whitespace-separated integer tokens from a stream while tracking lines.
class TokenReader {
public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. `line` receives the token's line.
  bool next(std::int64_t& value, std::size_t& line) {
    std::string token;
    int c = in_.get();
    while (c != EOF && std::isspace(c)) {
      if (c == '\n') ++line_;
      c = in_.get();
    }
    if (c == EOF) {
      line = line_;
      return false;
    }
    while (c != EOF && !std::isspace(c)) {
      token.push_back(static_cast<char>(c));
      c = in_.get();
    }
    line = line_;
    if (c == '\n') ++line_;

    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) throw ParseError(line, "integer out of range: '" + token + "'");
    if (ec != std::errc{} || ptr != last || first == last) {
      throw ParseError(line, "expected an integer, found '" + token + "'");
    }
    return true;
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::istream& in_;
  std::size_t line_ = 1;
};

}  // namespace

std::string_view to_string(ProblemType type) {
  switch (type) {
    case ProblemType::ToroidalSpinGlass:
      return "toroidal-spin-glass";
    case ProblemType::SparseRandomUnweighted:
      return "sparse-random-unweighted";
  }
  return "unknown";
}

std::span<const InstanceMeta> registry() { return kRegistry; }

std::optional<InstanceMeta> find_meta(std::string_view id) {
  for (const auto& meta : kRegistry) {
    if (iequals(meta.id, id)) return meta;
  }
  return std::nullopt;
}

const InstanceMeta& require_meta(std::string_view id) {
  for (const auto& meta : kRegistry) {
    if (iequals(meta.id, id)) return meta;
  }
  throw RegistryError("unknown instance id '" + std::string(id) + "'");
}

ProblemInstance parse_gset(std::istream& in, std::string id, std::string source_path) {
  TokenReader reader(in);
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::size_t line = 1;

  if (!reader.next(n, line)) throw ParseError(line, "empty input, expected header 'n m'");
  if (!reader.next(m, line)) throw ParseError(line, "header is missing the edge count");
  if (n < 1 || n > std::numeric_limits<std::int32_t>::max()) {
    throw ParseError(1, "vertex count must be in [1, 2^31-1], got " + std::to_string(n));
  }
  if (m < 0) throw ParseError(1, "edge count must be non-negative, got " + std::to_string(m));

  ProblemInstance inst;
  inst.id = std::move(id);
  inst.n = static_cast<std::int32_t>(n);
  inst.source_path = std::move(source_path);
  inst.edges.reserve(static_cast<std::size_t>(std::min<std::int64_t>(m, 1 << 24)));

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(inst.edges.capacity() * 2);

  for (std::int64_t k = 0; k < m; ++k) {
    std::array<std::int64_t, 3> triple{};
    std::size_t triple_line = 0;
    for (std::size_t f = 0; f < 3; ++f) {
      std::size_t token_line = 0;
      if (!reader.next(triple[f], token_line)) {
        throw ParseError(token_line, "header declares " + std::to_string(m) + " edges but input ends after " +
                                         std::to_string(k) + (f == 0 ? "" : " and a partial edge"));
      }
      if (f == 0) triple_line = token_line;
    }
    const auto [u, v, w] = triple;
    if (u < 1 || u > n || v < 1 || v > n) {
      throw ParseError(triple_line, "vertex index out of [1, " + std::to_string(n) + "] in edge (" +
                                        std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    if (u == v) throw ParseError(triple_line, "self-loop on vertex " + std::to_string(u));
    if (w < std::numeric_limits<Weight>::min() || w > std::numeric_limits<Weight>::max()) {
      throw ParseError(triple_line, "weight does not fit in 32 bits: " + std::to_string(w));
    }
    const auto lo = static_cast<std::uint64_t>(std::min(u, v));
    const auto hi = static_cast<std::uint64_t>(std::max(u, v));
    if (!seen.insert((lo << 32) | hi).second) {
      throw ParseError(triple_line, "duplicate edge {" + std::to_string(lo) + ", " + std::to_string(hi) + "}");
    }
    inst.edges.push_back({static_cast<std::int32_t>(u), static_cast<std::int32_t>(v), static_cast<Weight>(w)});
  }

  std::int64_t extra = 0;
  std::size_t extra_line = 0;
  if (reader.next(extra, extra_line)) {
    throw ParseError(extra_line, "header declares " + std::to_string(m) + " edges but more data follows");
  }
  return inst;
}

ProblemInstance parse_gset_text(std::string_view text, std::string id, std::string source_path) {
  std::istringstream in{std::string(text)};
  return parse_gset(in, std::move(id), std::move(source_path));
}

ProblemInstance read_gset_file(const std::string& path, std::string id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open '" + path + "'");
  return parse_gset(in, std::move(id), path);
}

std::string serialize_gset(const ProblemInstance& inst) {
  std::string out;
  out.reserve(16 + inst.edges.size() * 16);
  out += std::to_string(inst.n);
  out += ' ';
  out += std::to_string(inst.edges.size());
  out += '\n';
  for (const auto& e : inst.edges) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += ' ';
    out += std::to_string(e.w);
    out += '\n';
  }
  return out;
}

InstanceStats instance_stats(const ProblemInstance& inst) {
  InstanceStats stats;
  stats.n = inst.n;
  stats.m = static_cast<std::int64_t>(inst.edges.size());

  std::vector<std::int32_t> degree(static_cast<std::size_t>(inst.n), 0);
  for (const auto& e : inst.edges) {
    stats.total_weight += e.w;
    if (e.w > 0) stats.positive_weight += e.w;
    ++stats.weight_histogram[e.w];
    ++degree[static_cast<std::size_t>(e.u - 1)];
    ++degree[static_cast<std::size_t>(e.v - 1)];
  }
  const auto [lo, hi] = std::ranges::minmax(degree);
  stats.min_degree = lo;
  stats.max_degree = hi;
  stats.mean_degree = 2.0 * static_cast<double>(stats.m) / static_cast<double>(inst.n);
  return stats;
}

}  // namespace sparse_ising
