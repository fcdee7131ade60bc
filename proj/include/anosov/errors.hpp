#pragma once

#include <stdexcept>
#include <string>

namespace anosov {

// Base class for all library errors. Subtypes name the failure mode so
// callers can branch without string matching.
struct Error : std::runtime_error {
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

struct NonFinite : Error {
  using Error::Error;
};
struct SingularInput : Error {
  using Error::Error;
};
struct BadFace : Error {
  using Error::Error;
};
struct DimMismatch : Error {
  using Error::Error;
};
struct NotIotaInvariant : Error {
  using Error::Error;
};
struct FaceMismatch : Error {
  using Error::Error;
};
struct DegeneratePosition : Error {
  using Error::Error;
};
struct UnknownGenerator : Error {
  using Error::Error;
};
struct NotReduced : Error {
  using Error::Error;
};
struct NotUnimodular : Error {
  using Error::Error;
};
struct BallTooLarge : Error {
  using Error::Error;
};
struct NotRegular : Error {
  using Error::Error;
};
struct NotConverged : Error {
  using Error::Error;
};
struct NotProximal : Error {
  using Error::Error;
};
struct BadEigenvalues : Error {
  using Error::Error;
};
struct NeighborhoodsOverlap : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace anosov
