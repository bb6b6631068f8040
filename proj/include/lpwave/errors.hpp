#ifndef LPWAVE_ERRORS_HPP
#define LPWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lpwave {

/// Thrown when a time-stepping or fixed-point scheme fails (blow-up,
/// non-contraction, iteration cap). Carries the failure location in the
/// message.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when the hypotheses of a decay theorem are not met by the inputs
/// (e.g. d0 <= 0, nonmonotone damping where monotonicity is required).
class HypothesisError : public std::invalid_argument {
public:
  explicit HypothesisError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace lpwave

#endif
