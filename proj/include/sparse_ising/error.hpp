#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparse_ising {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed Gset text. Carries the 1-based line where the problem was found.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class RegistryError : public Error {
public:
  using Error::Error;
};

/// Remote fetch failed before any bytes could be parsed.
class NetworkError : public Error {
public:
  using Error::Error;
};

/// Offline cache miss, unreadable cache entry or checksum mismatch.
class CacheError : public Error {
public:
  using Error::Error;
};

class ChecksumError : public CacheError {
public:
  using CacheError::CacheError;
};

class LengthMismatch : public Error {
public:
  using Error::Error;
};

class HexError : public Error {
public:
  using Error::Error;
};

class InvalidParams : public Error {
public:
  using Error::Error;
};

/// Raised when a metric is undefined for its inputs (e.g. zero successes).
class MetricError : public Error {
public:
  using Error::Error;
};

}  // namespace sparse_ising
