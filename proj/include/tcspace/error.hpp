#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcs {

/// Stable error identifiers. The CLI prints code_name() on its diagnostics
/// stream, so existing names must not change.
enum class ErrorCode {
  NonSquareMatrix,
  AsymmetricMatrix,
  NegativeDistance,
  ZeroDistanceDistinctPoints,
  TriangleViolation,
  InvalidBasePoint,
  InvalidGraph,
  DisconnectedGraph,
  InvalidSize,
  EmptySubset,
  IndexOutOfRange,
  InvalidMeasure,
  ZeroMeasure,
  NotOneLipschitz,
  NotProbability,
  SizeMismatch,
  NotDoublyStochastic,
  InvalidTree,
  EdgeNotInTree,
  EmptyKeepSet,
  ExpansivenessViolated,
  NonBijectiveComponents,
  NotAWalk,
  NotConservative,
  EmbeddingNotCanonical,
  PathMismatch,
  InvalidEdgeMeasure,
  TooLargeForExhaustive,
  InvalidParameters,
  ParseError,
};

std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::size_t> indices = {})
      : std::runtime_error(message), code_(code), indices_(std::move(indices)) {}

  ErrorCode code() const noexcept { return code_; }
  /// Offending indices, when the error names specific points (e.g. the
  /// (i, k, j) triple of a triangle violation d(i,k) > d(i,j) + d(j,k)).
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> indices_;
};

}  // namespace tcs
