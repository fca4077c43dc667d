#ifndef CSRKIT_EXACT_HPP
#define CSRKIT_EXACT_HPP

#include <optional>
#include <vector>

#include "csrkit/matrix.hpp"

namespace csrkit {

/// Exact basis of a linear subspace of R^d, or of an affine subspace
/// V = affine_point + span(vectors) when affine_point is present.
struct SubspaceBasis {
  Index ambient_dim = 0;
  std::vector<RatVector> vectors;
  std::optional<RatVector> affine_point;

  Index dim() const { return static_cast<Index>(vectors.size()); }
  bool is_affine() const { return affine_point.has_value(); }
};

/// Exact rank over Q, fraction-free (Bareiss) elimination.
Index rank(const RatMatrix& m);

/// Exact determinant; throws std::invalid_argument unless square.
Rational det(const RatMatrix& m);

/// Exact basis of the right null space; dim = cols - rank.
SubspaceBasis kernel_basis(const RatMatrix& m);

/// true iff det(M - I) = 0 exactly.
bool has_eigenvalue_one(const RatMatrix& m);

/// One exact solution of M x = b, or nullopt when inconsistent.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b);

/// Exact inverse; throws std::invalid_argument on singular input.
RatMatrix inverse(const RatMatrix& m);

/// true iff v lies in the span of the basis vectors (linear span only).
bool in_span(const std::vector<RatVector>& basis, const RatVector& v);

/// Incremental exact span with O(d) membership tests; keeps an internal
/// row-reduced copy of the inserted vectors.
class SpanBuilder {
 public:
  explicit SpanBuilder(Index ambient_dim);

  /// Adds v to the span; returns true when the dimension grew.
  bool add(const RatVector& v);
  bool contains(const RatVector& v) const;
  Index dim() const { return static_cast<Index>(rows_.size()); }
  Index ambient_dim() const { return ambient_; }

  /// The vectors as inserted (only those that grew the span).
  const std::vector<RatVector>& inserted() const { return inserted_; }

 private:
  // Reduces v against the stored echelon rows; returns the residual and its
  // pivot column (ambient_ when the residual is zero).
  RatVector reduce(const RatVector& v, Index& pivot_col) const;

  Index ambient_;
  std::vector<RatVector> rows_;      // echelon rows, pivot normalized to 1
  std::vector<Index> pivot_cols_;
  std::vector<RatVector> inserted_;
};

}  // namespace csrkit

#endif  // CSRKIT_EXACT_HPP
