#include "ordstat/error.hpp"

namespace ordstat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::Domain:
    return "domain";
  case ErrorCode::InvalidArgument:
    return "invalid-argument";
  case ErrorCode::InfiniteMean:
    return "infinite-mean";
  case ErrorCode::InfiniteVariance:
    return "infinite-variance";
  case ErrorCode::NoClosure:
    return "no-closure";
  case ErrorCode::UnsupportedFamily:
    return "unsupported-family";
  case ErrorCode::BiasUndefined:
    return "bias-undefined";
  case ErrorCode::DegenerateSample:
    return "degenerate-sample";
  }
  return "unknown";
}

} // namespace ordstat
