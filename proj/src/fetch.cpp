#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "sparse_ising/fetch.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "sparse_ising/error.hpp"

namespace sparse_ising {

namespace fs = std::filesystem;

namespace {

class FileLock {
public:
  explicit FileLock(const fs::path& path) {
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw CacheError("cannot create lock file '" + path.string() + "'");
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw CacheError("cannot lock '" + path.string() + "'");
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

private:
  int fd_ = -1;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".part." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write '" + tmp.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CacheError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw CacheError("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t first = 0;
  while (first < s.size() && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
  return s.substr(first);
}

void check_against_registry(const ProblemInstance& inst, const InstanceMeta& meta, const std::string& origin) {
  if (inst.n != meta.n || static_cast<std::int64_t>(inst.m()) != meta.m) {
    throw CacheError(origin + " has n=" + std::to_string(inst.n) + " m=" + std::to_string(inst.m()) + " but " +
                     std::string(meta.id) + " expects n=" + std::to_string(meta.n) +
                     " m=" + std::to_string(meta.m));
  }
}

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw NetworkError("malformed URL '" + url + "'");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string download(const std::string& url, int timeout_seconds) {
  const auto [origin, path] = split_url(url);
  std::unique_ptr<httplib::Client> client;
  try {
    client = std::make_unique<httplib::Client>(origin);
  } catch (const std::exception& e) {
    throw NetworkError("cannot open client for '" + origin + "': " + e.what());
  }
  if (!client->is_valid()) throw NetworkError("unsupported URL '" + url + "'");
  client->set_follow_location(true);
  client->set_connection_timeout(timeout_seconds, 0);
  client->set_read_timeout(timeout_seconds, 0);
  auto res = client->Get(path);
  if (!res) throw NetworkError("GET " + url + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw NetworkError("GET " + url + " returned HTTP " + std::to_string(res->status));
  return std::move(res->body);
}

// Verifies `bytes` against the recorded checksum, recording it if absent.
std::string reconcile_checksum(const fs::path& sum_file, std::string_view bytes, const std::string& what) {
  std::string digest = sha256_hex(bytes);
  if (fs::exists(sum_file)) {
    const std::string recorded = trim(read_file(sum_file));
    if (recorded != digest) {
      throw ChecksumError(what + " has sha256 " + digest + " but " + sum_file.string() + " records " + recorded);
    }
  } else {
    write_file_atomic(sum_file, digest + "\n");
  }
  return digest;
}

}  // namespace

fs::path default_cache_dir() {
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "sparse-ising" / "gset";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "sparse-ising" / "gset";
  return "gset-cache";
}

std::string default_gset_url() {
  if (const char* env = std::getenv(kGsetUrlEnv); env && *env) return env;
  return kDefaultGsetUrl;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

FetchResult fetch_instance(std::string_view id_or_path, const FetchOptions& options) {
  const fs::path as_path{std::string(id_or_path)};
  std::error_code ec;
  if (fs::is_regular_file(as_path, ec)) {
    const std::string bytes = read_file(as_path);
    FetchResult result;
    result.instance = parse_gset_text(bytes, as_path.stem().string(), as_path.string());
    result.cached_file = as_path;
    result.sha256 = sha256_hex(bytes);
    return result;
  }

  const InstanceMeta& meta = require_meta(id_or_path);
  const std::string id(meta.id);
  const fs::path gset_file = options.cache_dir / (id + ".gset");
  const fs::path sum_file = options.cache_dir / (id + ".sha256");

  auto from_cache = [&]() {
    const std::string bytes = read_file(gset_file);
    FetchResult result;
    result.sha256 = reconcile_checksum(sum_file, bytes, gset_file.string());
    result.instance = parse_gset_text(bytes, id, gset_file.string());
    check_against_registry(result.instance, meta, gset_file.string());
    result.cached_file = gset_file;
    return result;
  };

  if (fs::exists(gset_file)) return from_cache();
  if (options.offline) {
    throw CacheError("offline mode and " + id + " is not cached at " + gset_file.string());
  }

  fs::create_directories(options.cache_dir, ec);
  if (ec) throw CacheError("cannot create cache directory '" + options.cache_dir.string() + "': " + ec.message());
  FileLock lock(options.cache_dir / (id + ".lock"));
  if (fs::exists(gset_file)) return from_cache();

  std::string base = options.base_url;
  if (!base.empty() && base.back() != '/') base.push_back('/');
  const std::string url = base + id;
  const std::string bytes = download(url, options.timeout_seconds);

  FetchResult result;
  result.instance = parse_gset_text(bytes, id, url);
  check_against_registry(result.instance, meta, url);
  result.sha256 = reconcile_checksum(sum_file, bytes, url);
  write_file_atomic(gset_file, bytes);
  result.instance.source_path = gset_file.string();
  result.cached_file = gset_file;
  result.downloaded = true;
  return result;
}

}  // namespace sparse_ising
