#pragma once

#include <stdexcept>
#include <string>

namespace sniplang {

/// Unreadable, unwritable or malformed input files. CLI maps this to exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Degenerate or inconsistent data (single-class training set, empty corpus,
/// class smaller than the fold count, ...). CLI maps this to exit code 3.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sniplang
