#include "sparse_ising/verify.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sparse_ising/error.hpp"

namespace sparse_ising {

namespace detail {
extern const char kAssetG72[];
extern const char kAssetG77[];
}  // namespace detail

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw HexError("solution header: bad integer for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string strip_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

SpinConfig decode_hex_solution(const HexSolution& hs) {
  const std::string hex = strip_whitespace(hs.hex);
  const std::size_t bits = 4 * hex.size();
  if (bits < hs.n) {
    throw HexError("hex payload has " + std::to_string(hex.size()) + " characters (" + std::to_string(bits) +
                   " bits) but n=" + std::to_string(hs.n) + " needs " + std::to_string((hs.n + 3) / 4));
  }
  if (bits - hs.n >= 4) {
    throw HexError("hex payload has " + std::to_string(hex.size()) + " characters, more than the " +
                   std::to_string((hs.n + 3) / 4) + " needed for n=" + std::to_string(hs.n));
  }
  std::vector<Spin> spins(hs.n);
  for (std::size_t c = 0; c < hex.size(); ++c) {
    const int nibble = hex_value(hex[c]);
    if (nibble < 0) {
      throw HexError("non-hex character '" + std::string(1, hex[c]) + "' at position " + std::to_string(c));
    }
    for (int b = 0; b < 4; ++b) {
      const std::size_t k = 4 * c + static_cast<std::size_t>(b);
      if (k >= hs.n) break;
      spins[k] = (nibble >> (3 - b)) & 1 ? Spin{-1} : Spin{1};
    }
  }
  return SpinConfig(std::move(spins));
}

std::string encode_hex_solution(const SpinConfig& cfg) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out((cfg.size() + 3) / 4, '0');
  for (std::size_t c = 0; c < out.size(); ++c) {
    int nibble = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t k = 4 * c + static_cast<std::size_t>(b);
      nibble <<= 1;
      if (k < cfg.size() && cfg[k] < 0) nibble |= 1;
    }
    out[c] = kDigits[nibble];
  }
  return out;
}

CertifyReport certify(const ProblemInstance& inst, const SpinConfig& cfg, std::optional<CutValue> claimed) {
  CertifyReport report;
  report.cut = cut_value(inst, cfg);
  if (auto meta = find_meta(inst.id)) {
    report.best_known = meta->best_known;
    report.quality = static_cast<double>(report.cut) / static_cast<double>(meta->best_known);
  }
  report.claimed = claimed;
  report.matches_claim = !claimed || *claimed == report.cut;
  return report;
}

SpinConfig SolutionFile::decode(std::optional<std::size_t> fallback_n) const {
  std::optional<std::size_t> count = n ? n : fallback_n;
  if (!count) count = 4 * hex.size();
  if (n && fallback_n && *n != *fallback_n) {
    throw LengthMismatch("solution declares n=" + std::to_string(*n) + " but the instance has n=" +
                         std::to_string(*fallback_n));
  }
  return decode_hex_solution({hex, *count});
}

SolutionFile parse_solution_file(std::string_view text) {
  SolutionFile file;
  std::istringstream in{std::string(text)};
  std::string line;
  bool in_payload = false;
  while (std::getline(in, line)) {
    const std::string stripped = strip_whitespace(line);
    if (stripped.empty()) continue;
    if (stripped.front() == '#') continue;
    if (!in_payload && line.find('=') != std::string::npos) {
      std::istringstream fields(line);
      std::string field;
      while (fields >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw HexError("solution header: expected key=value, found '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "instance") {
          file.instance = value;
        } else if (key == "n") {
          file.n = parse_int<std::size_t>(key, value);
        } else if (key == "claimed") {
          file.claimed = parse_int<CutValue>(key, value);
        } else {
          throw HexError("solution header: unknown key '" + key + "'");
        }
      }
      continue;
    }
    in_payload = true;
    file.hex += stripped;
  }
  if (file.hex.empty()) throw HexError("solution file has no hex payload");
  return file;
}

SolutionFile read_solution_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw HexError("cannot open solution file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_solution_file(ss.str());
}

std::string format_solution_file(const SpinConfig& cfg, std::string_view instance_id,
                                 std::optional<CutValue> claimed, std::string_view comment) {
  std::string out;
  if (!comment.empty()) {
    out += "# ";
    out += comment;
    out += '\n';
  }
  out += "instance=";
  out += instance_id.empty() ? std::string_view("unknown") : instance_id;
  out += " n=" + std::to_string(cfg.size());
  if (claimed) out += " claimed=" + std::to_string(*claimed);
  out += '\n';
  out += encode_hex_solution(cfg);
  out += '\n';
  return out;
}

std::optional<std::string_view> bundled_solution(std::string_view name) {
  if (name == "g72_7008" || name == "g72_7008.hex") return std::string_view(detail::kAssetG72);
  if (name == "g77_9940" || name == "g77_9940.hex") return std::string_view(detail::kAssetG77);
  return std::nullopt;
}

}  // namespace sparse_ising
