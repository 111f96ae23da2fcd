#ifndef LRBSCHED_ERRORS_HPP
#define LRBSCHED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lrbsched {

/// Argument outside the mathematical domain of an operation (NaN input,
/// sigma <= 0, p outside (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller misuse that is not a numeric domain problem: empty grids, missing
/// calibration entries, invalid sample counts, malformed configs.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The discrimination protocol is only defined for the LRB scheduler.
class UnsupportedProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A zero error exponent implies no finite sample size reaches the target.
class InfiniteSamplesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require_domain(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

inline void require_usage(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

}  // namespace detail
}  // namespace lrbsched

#endif  // LRBSCHED_ERRORS_HPP
