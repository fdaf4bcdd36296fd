#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sparse_ising/instance.hpp"

namespace sparse_ising {

/// Environment variable naming the default instance cache directory.
inline constexpr const char* kCacheDirEnv = "SPARSE_ISING_CACHE";
/// Environment variable overriding the base URL instances are fetched from.
inline constexpr const char* kGsetUrlEnv = "SPARSE_ISING_GSET_URL";
inline constexpr const char* kDefaultGsetUrl = "https://web.stanford.edu/~yyye/yyye/Gset/";

/// $SPARSE_ISING_CACHE, else $XDG_CACHE_HOME/sparse-ising/gset, else
/// ~/.cache/sparse-ising/gset, else ./gset-cache.
std::filesystem::path default_cache_dir();
std::string default_gset_url();

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

struct FetchOptions {
  std::filesystem::path cache_dir = default_cache_dir();
  bool offline = false;
  /// Base URL; the instance id is appended ("<base>/G72").
  std::string base_url = default_gset_url();
  int timeout_seconds = 60;
};

struct FetchResult {
  ProblemInstance instance;
  std::filesystem::path cached_file;
  std::string sha256;
  bool downloaded = false;
};

/// Resolves `id_or_path`: an existing file is parsed directly; otherwise the id
/// must be in the registry and is served from the cache, downloading it first
/// unless offline. Downloads are serialized per id through a lock file, so
/// concurrent callers trigger one download. Parsed registry instances are
/// checked against the registry n and m.
///
/// Errors: RegistryError (unknown id), NetworkError (transport or HTTP
/// failure), CacheError (offline miss, I/O), ChecksumError (cached bytes differ
/// from the recorded checksum), ParseError (malformed content).
FetchResult fetch_instance(std::string_view id_or_path, const FetchOptions& options = {});

inline ProblemInstance load_instance(std::string_view id_or_path, const std::filesystem::path& cache_dir,
                                     bool offline) {
  FetchOptions options;
  options.cache_dir = cache_dir;
  options.offline = offline;
  return fetch_instance(id_or_path, options).instance;
}

}  // namespace sparse_ising
