#pragma once

#include <stdexcept>
#include <string>

namespace inflap {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lattice spacing is zero or negative.
class BadSpacing : public Error {
 public:
  using Error::Error;
};

/// An axis length is not an integer multiple of the spacing.
class NonCommensurate : public Error {
 public:
  using Error::Error;
};

/// A ball stencil contains no nonzero offset (radius below the spacing).
class EmptyStencil : public Error {
 public:
  using Error::Error;
};

/// No node of the domain keeps its ball inside the domain.
class EmptyInterior : public Error {
 public:
  using Error::Error;
};

/// A slope operator was evaluated at a node outside the inner region.
class OutsideInnerRegion : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A cone family pairs a vertex with a subdomain that contains it.
class BadFamily : public Error {
 public:
  using Error::Error;
};

/// Radius list for the convexity check is malformed.
class BadRadii : public Error {
 public:
  using Error::Error;
};

/// The hypothesis of the discrete comparison lemma does not hold, so the
/// conclusion is vacuous. Distinct from a conclusion failure.
class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

/// A field file does not conform to the CSV layout. Message carries the line.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A configuration value is out of range or inconsistent.
class BadValue : public Error {
 public:
  using Error::Error;
};

}  // namespace inflap
