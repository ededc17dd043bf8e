#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordstat {

enum class ErrorCode {
  Domain,            // non-finite input or value outside a function's domain
  InvalidArgument,   // rank/count/parameter out of range
  InfiniteMean,      // Pareto with alpha <= 1
  InfiniteVariance,  // Pareto with alpha <= 2
  NoClosure,         // minimum does not stay in the family
  UnsupportedFamily, // estimator not defined for this noise family
  BiasUndefined,     // Pareto unbiased estimator with N*alpha <= 1
  DegenerateSample,  // unknown-hyperparameter estimators with N < 2
};

std::string_view to_string(ErrorCode code);

/// Typed failure raised by every operation in the library.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace ordstat
