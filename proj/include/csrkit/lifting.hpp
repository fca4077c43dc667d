#ifndef CSRKIT_LIFTING_HPP
#define CSRKIT_LIFTING_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "csrkit/exact.hpp"
#include "csrkit/matrix.hpp"

namespace csrkit {

inline Index sym_dim(Index d) { return d * (d + 1) / 2; }

/// Coordinates of a symmetric d x d matrix: plain entries, diagonal first,
/// then off-diagonals in row order (X12, X13, ..., X23, ...).
struct SymVec {
  Index dim = 0;
  RatVector coords;
};

SymVec sym_vectorize(const RatMatrix& x);
RatMatrix sym_unvectorize(const SymVec& v);

/// Matrix of X -> A^T X A acting on SymVec coordinates.
struct LiftedOperator {
  Index base_dim = 0;
  RatMatrix matrix;  // sym_dim(base_dim) square

  SymVec apply(const SymVec& x) const;
};

LiftedOperator tensor_square(const RatMatrix& a);

/// Symmetric square of the symmetric square: operator on symmetric D x D
/// matrices, D = sym_dim(d).
LiftedOperator tensor_fourth(const RatMatrix& a);

/// Mean of the generator lifts, (1/m) sum of tensor_square(A_i).
RatMatrix lifted_average(const MatrixFamily& family);

/// Exact positive semidefiniteness (symmetric pivoting LDL^T, rank-revealing).
bool is_psd(const RatMatrix& m);
bool is_pd(const RatMatrix& m);

struct PerronSearchError : std::runtime_error {
  explicit PerronSearchError(std::vector<RatVector> kernel)
      : std::runtime_error("no PSD eigenvector found within enumeration budget"),
        kernel_basis(std::move(kernel)) {}
  std::vector<RatVector> kernel_basis;
};

/// Exact rational eigenvector of op at eigenvalue 1 whose unvectorized form is
/// PSD. One-dimensional eigenspaces return the sign-fixed generator; larger
/// ones are scanned over bounded-height rational combinations.
/// Precondition: has_eigenvalue_one(op.matrix).
SymVec perron_in_cone(const LiftedOperator& op);

/// Searches offset + span(vectors) for a vector whose unvectorized symmetric
/// matrix is PSD (or PD). Bounded-height coefficient enumeration.
std::optional<RatVector> find_psd_in_subspace(const std::vector<RatVector>& vectors,
                                              const RatVector* offset, Index dim,
                                              bool require_pd, int budget = 20000);

}  // namespace csrkit

#endif  // CSRKIT_LIFTING_HPP
