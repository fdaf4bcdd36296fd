#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sparse_ising/instance.hpp"
#include "sparse_ising/model.hpp"

namespace sparse_ising {

/// Hex-encoded solution: each character expands to 4 bits, most significant
/// bit first; bit k (0-based from the left) is variable k+1. Bit 1 means
/// spin -1. Only the final character may carry padding.
struct HexSolution {
  std::string hex;
  std::size_t n = 0;
};

/// Removes all whitespace (the record strings are typeset across many lines).
std::string strip_whitespace(std::string_view text);

/// Throws HexError for non-hex characters, a payload shorter than n bits, or
/// more than three bits of padding.
SpinConfig decode_hex_solution(const HexSolution& hs);

/// Uppercase hex, zero padding bits.
std::string encode_hex_solution(const SpinConfig& cfg);

struct CertifyReport {
  CutValue cut = 0;
  std::optional<CutValue> best_known;
  /// cut / best_known, present when the instance id is in the registry.
  std::optional<double> quality;
  std::optional<CutValue> claimed;
  /// True when no claim is given or the claim equals the cut.
  bool matches_claim = true;
};

/// Exact cut of `cfg` on `inst`. Throws LengthMismatch when n differs.
CertifyReport certify(const ProblemInstance& inst, const SpinConfig& cfg, std::optional<CutValue> claimed = {});

/// Parsed solution file: '#' comment lines, an optional
/// "instance=<id> n=<int> claimed=<int>" header line, then the hex payload.
struct SolutionFile {
  std::optional<std::string> instance;
  std::optional<std::size_t> n;
  std::optional<CutValue> claimed;
  std::string hex;  // whitespace stripped

  /// Decodes with the header n when present, else `fallback_n`.
  SpinConfig decode(std::optional<std::size_t> fallback_n = {}) const;
};

SolutionFile parse_solution_file(std::string_view text);
SolutionFile read_solution_file(const std::string& path);
std::string format_solution_file(const SpinConfig& cfg, std::string_view instance_id,
                                 std::optional<CutValue> claimed, std::string_view comment = {});

/// Contents of a solution file compiled into the library: "g72_7008" and
/// "g77_9940". Returns nullopt for other names.
std::optional<std::string_view> bundled_solution(std::string_view name);

}  // namespace sparse_ising
