#pragma once

#include <stdexcept>
#include <string>

namespace rqim {

/// Broad failure classes. The CLI maps each onto an exit code.
enum class ErrorKind {
  domain,       // argument outside the mathematical domain of an operation
  capacity,     // payload does not fit the cover
  format,       // malformed file, shape mismatch, corrupted container
  io,           // filesystem failure
  unsupported,  // request outside the guaranteed operating region
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorKind::capacity, what) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(ErrorKind::format, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(ErrorKind::unsupported, what) {}
};

}  // namespace rqim
