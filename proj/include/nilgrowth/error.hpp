#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilgrowth {

enum class ErrorCode {
  DegeneratePolytope,
  OriginOutside,
  PointOutside,
  DimensionMismatch,
  FamilyMismatch,
  NotInSubgroup,
  UnknownGroup,
  UnknownLetter,
  MissingInverseLetter,
  ZeroExponent,
  SyntaxError,
  InvalidParams,
  OutOfRadius,
  MemoryBudgetExceeded,
  FormatVersionMismatch,
  FingerprintMismatch,
  CorruptFile,
  Io,
};

const char* error_code_name(ErrorCode code);

/// Base of every error raised by the library. The code is stable and is what
/// the CLI reports in its machine-readable error output.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DegeneratePolytope : public Error {
 public:
  DegeneratePolytope(std::size_t affine_dim, std::size_t dim);
  std::size_t affine_dim() const noexcept { return affine_dim_; }

 private:
  std::size_t affine_dim_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class MemoryBudgetExceeded : public Error {
 public:
  MemoryBudgetExceeded(int layer, std::size_t budget);
  int layer() const noexcept { return layer_; }

 private:
  int layer_;
};

class OutOfRadius : public Error {
 public:
  OutOfRadius(int radius, int needed, const std::string& what);
  int radius() const noexcept { return radius_; }
  /// Smallest radius known to be required (a lower bound when the exact
  /// requirement is unknown).
  int needed() const noexcept { return needed_; }

 private:
  int radius_;
  int needed_;
};

}  // namespace nilgrowth
