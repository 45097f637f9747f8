#pragma once

#include <stdexcept>
#include <string>

namespace multmatch {

// A mathematical precondition or check failed. Malformed input is reported
// with std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configurable size cap was hit; cap() names it.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string cap, const std::string& message)
      : Error(message), cap_(std::move(cap)) {}

  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

}  // namespace multmatch
