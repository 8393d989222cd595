#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sdyn {

/// A configured size limit (language size, vertex count, prefix length)
/// would be exceeded. `lower_bound` is a certified lower bound on the
/// quantity that overflowed, when one is known (0 otherwise).
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t lower_bound = 0)
      : std::runtime_error(what), lower_bound_(lower_bound) {}
  std::uint64_t lower_bound() const { return lower_bound_; }

 private:
  std::uint64_t lower_bound_;
};

/// A labeled graph presents the empty shift.
class EmptyShift : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantitative bound that a construction is supposed to satisfy failed.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sdyn
