#pragma once

#include <stdexcept>
#include <string>

namespace critns {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Sample count or component count does not match the grid.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Two fields living on different grids were combined.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A negative-order operator or norm was applied to a field with a nonzero k=0 mode.
class NegativeOrderOnMeanfulField : public Error {
 public:
  using Error::Error;
};

/// Requested rescaling does not map the Fourier lattice into itself.
class IncompatibleScaling : public Error {
 public:
  using Error::Error;
};

/// Field has spectral content where a dyadic decomposition is not a partition of unity.
class SpectrumOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Malformed snapshot file or config document.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace critns
