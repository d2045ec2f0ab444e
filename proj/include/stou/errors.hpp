#pragma once

#include <stdexcept>
#include <string>

namespace stou {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidGrid : Error {
  using Error::Error;
};

struct InvalidCumulants : Error {
  using Error::Error;
};

struct OddTruncation : Error {
  using Error::Error;
};

struct GridMismatch : Error {
  using Error::Error;
};

struct EvenExtent : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

struct NonIntegerTruncation : Error {
  using Error::Error;
};

struct UnsupportedShape : Error {
  using Error::Error;
};

struct NoPairs : Error {
  using Error::Error;
};

struct TooFewPoints : Error {
  using Error::Error;
};

struct DegenerateVariogram : Error {
  using Error::Error;
};

struct OptimizerNoBracket : Error {
  using Error::Error;
};

struct NotGaussian : Error {
  using Error::Error;
};

struct DuplicateSites : Error {
  using Error::Error;
};

struct SingularCorrelation : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct NonUniformGrid : Error {
  using Error::Error;
};

}  // namespace stou
