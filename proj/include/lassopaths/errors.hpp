#pragma once

#include <stdexcept>
#include <string>

namespace lassopaths {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// graph construction / traversal
struct SelfLoopError : Error { using Error::Error; };
struct DuplicateEdgeError : Error { using Error::Error; };
struct NonPositiveWeightError : Error { using Error::Error; };
struct DisconnectedError : Error { using Error::Error; };
struct VertexOutOfRangeError : Error { using Error::Error; };
struct InvalidPathError : Error { using Error::Error; };
struct NotATreeError : Error { using Error::Error; };

// linear algebra
struct DimensionMismatchError : Error { using Error::Error; };
struct NotPositiveDefiniteError : Error { using Error::Error; };

// solvers
struct AssumptionA1ViolatedError : Error { using Error::Error; };
struct NumericalBreakdownError : Error { using Error::Error; };
struct FactorizationFailureError : Error { using Error::Error; };
struct CgStagnationError : Error { using Error::Error; };
struct NoPathAtThresholdError : Error { using Error::Error; };

// experiments / io
struct InfeasibleEdgeCountError : Error { using Error::Error; };
struct ImageTooSmallError : Error { using Error::Error; };
struct NotNeighborsError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace lassopaths
