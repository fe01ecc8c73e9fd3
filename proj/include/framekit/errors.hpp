#pragma once

#include <stdexcept>
#include <string>

namespace framekit {

struct FrameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroColumn : FrameError {
  explicit ZeroColumn(int index_)
      : FrameError("column " + std::to_string(index_) + " has (near-)zero norm"),
        index(index_) {}
  int index;
};

struct InvalidShape : FrameError {
  using FrameError::FrameError;
};

struct ShapeMismatch : FrameError {
  using FrameError::FrameError;
};

struct SingularBasis : FrameError {
  using FrameError::FrameError;
};

struct SeedTooLong : FrameError {
  using FrameError::FrameError;
};

struct RowsNotOrthonormal : FrameError {
  using FrameError::FrameError;
};

struct UnsupportedDimension : FrameError {
  using FrameError::FrameError;
};

struct NotUnitNorm : FrameError {
  using FrameError::FrameError;
};

struct TrivialFrame : FrameError {
  using FrameError::FrameError;
};

struct WrongCount : FrameError {
  using FrameError::FrameError;
};

struct WrongDimension : FrameError {
  using FrameError::FrameError;
};

struct NotParseval : FrameError {
  using FrameError::FrameError;
};

struct DegeneratePair : FrameError {
  using FrameError::FrameError;
};

struct ParseError : FrameError {
  using FrameError::FrameError;
};

}  // namespace framekit
