#pragma once

#include <stdexcept>
#include <string>

namespace cgate {

// Failure classes that map onto the CLI exit-code contract.
enum class ErrorKind { kUsage, kInput, kNetwork, kOutput };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::kUsage, what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::kInput, what) {}
};

class NetworkError : public Error {
 public:
  explicit NetworkError(const std::string& what) : Error(ErrorKind::kNetwork, what) {}
};

class OutputError : public Error {
 public:
  explicit OutputError(const std::string& what) : Error(ErrorKind::kOutput, what) {}
};

}  // namespace cgate
