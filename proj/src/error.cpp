#include "tcspace/error.hpp"

namespace tcs {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquareMatrix: return "NON_SQUARE_MATRIX";
    case ErrorCode::AsymmetricMatrix: return "ASYMMETRIC_MATRIX";
    case ErrorCode::NegativeDistance: return "NEGATIVE_DISTANCE";
    case ErrorCode::ZeroDistanceDistinctPoints: return "ZERO_DISTANCE_DISTINCT_POINTS";
    case ErrorCode::TriangleViolation: return "TRIANGLE_VIOLATION";
    case ErrorCode::InvalidBasePoint: return "INVALID_BASE_POINT";
    case ErrorCode::InvalidGraph: return "INVALID_GRAPH";
    case ErrorCode::DisconnectedGraph: return "DISCONNECTED_GRAPH";
    case ErrorCode::InvalidSize: return "INVALID_SIZE";
    case ErrorCode::EmptySubset: return "EMPTY_SUBSET";
    case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::InvalidMeasure: return "INVALID_MEASURE";
    case ErrorCode::ZeroMeasure: return "ZERO_MEASURE";
    case ErrorCode::NotOneLipschitz: return "NOT_ONE_LIPSCHITZ";
    case ErrorCode::NotProbability: return "NOT_PROBABILITY";
    case ErrorCode::SizeMismatch: return "SIZE_MISMATCH";
    case ErrorCode::NotDoublyStochastic: return "NOT_DOUBLY_STOCHASTIC";
    case ErrorCode::InvalidTree: return "INVALID_TREE";
    case ErrorCode::EdgeNotInTree: return "EDGE_NOT_IN_TREE";
    case ErrorCode::EmptyKeepSet: return "EMPTY_KEEP_SET";
    case ErrorCode::ExpansivenessViolated: return "EXPANSIVENESS_VIOLATED";
    case ErrorCode::NonBijectiveComponents: return "NON_BIJECTIVE_COMPONENTS";
    case ErrorCode::NotAWalk: return "NOT_A_WALK";
    case ErrorCode::NotConservative: return "NOT_CONSERVATIVE";
    case ErrorCode::EmbeddingNotCanonical: return "EMBEDDING_NOT_CANONICAL";
    case ErrorCode::PathMismatch: return "PATH_MISMATCH";
    case ErrorCode::InvalidEdgeMeasure: return "INVALID_EDGE_MEASURE";
    case ErrorCode::TooLargeForExhaustive: return "TOO_LARGE_FOR_EXHAUSTIVE";
    case ErrorCode::InvalidParameters: return "INVALID_PARAMETERS";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace tcs
