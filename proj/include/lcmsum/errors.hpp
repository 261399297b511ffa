#pragma once

#include <stdexcept>
#include <string>

namespace lcmsum {

// Parameter outside the supported range of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured budget (memory, tuple count, subset count) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested error bound cannot be certified with the configured precision.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  // Best bound that was actually reached (may be +inf when nothing was).
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// An algorithm failed to converge or a self-check did not hold.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lcmsum
