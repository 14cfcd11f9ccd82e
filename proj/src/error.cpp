#include "nilgrowth/error.hpp"

namespace nilgrowth {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegeneratePolytope: return "DegeneratePolytope";
    case ErrorCode::OriginOutside: return "OriginOutside";
    case ErrorCode::PointOutside: return "PointOutside";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::NotInSubgroup: return "NotInSubgroup";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::UnknownLetter: return "UnknownLetter";
    case ErrorCode::MissingInverseLetter: return "MissingInverseLetter";
    case ErrorCode::ZeroExponent: return "ZeroExponent";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::OutOfRadius: return "OutOfRadius";
    case ErrorCode::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::FingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

DegeneratePolytope::DegeneratePolytope(std::size_t affine_dim, std::size_t dim)
    : Error(ErrorCode::DegeneratePolytope,
            "degenerate polytope: affine hull has dimension " +
                std::to_string(affine_dim) + " < " + std::to_string(dim)),
      affine_dim_(affine_dim) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(ErrorCode::SyntaxError,
            "syntax error at position " + std::to_string(position) + ": " +
                message),
      position_(position) {}

MemoryBudgetExceeded::MemoryBudgetExceeded(int layer, std::size_t budget)
    : Error(ErrorCode::MemoryBudgetExceeded,
            "memory budget of " + std::to_string(budget) +
                " elements exceeded while building layer " +
                std::to_string(layer)),
      layer_(layer) {}

OutOfRadius::OutOfRadius(int radius, int needed, const std::string& what)
    : Error(ErrorCode::OutOfRadius,
            what + " (table radius " + std::to_string(radius) +
                ", need at least " + std::to_string(needed) + ")"),
      radius_(radius),
      needed_(needed) {}

}  // namespace nilgrowth
