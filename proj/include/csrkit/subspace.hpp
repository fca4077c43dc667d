#ifndef CSRKIT_SUBSPACE_HPP
#define CSRKIT_SUBSPACE_HPP

#include <optional>
#include <vector>

#include "csrkit/exact.hpp"
#include "csrkit/matrix.hpp"

namespace csrkit {

/// Block upper-triangular factorization of a family: conjugating every
/// generator by change_of_basis puts it in block upper-triangular form with
/// the declared block sizes, and each diagonal-block family is irreducible
/// (positively irreducible when permutation_only).
struct BlockFactorization {
  RatMatrix change_of_basis;                       // invertible
  std::vector<Index> block_sizes;                  // d^(1) ... d^(s)
  std::vector<MatrixFamily> diagonal_blocks;       // per block, one family
  bool permutation_only = false;

  Index s() const { return static_cast<Index>(block_sizes.size()); }

  /// The generators conjugated into the factorized basis.
  MatrixFamily conjugated(const MatrixFamily& family) const;
};

/// Smallest linear subspace containing the seeds and invariant under every
/// generator. Exact; empty seeds give the zero subspace.
SubspaceBasis invariant_closure(const MatrixFamily& family,
                                const std::vector<RatVector>& seeds);

/// Exact rational eigenvalues of a single matrix (numeric roots reconstructed
/// by continued fractions and verified by an exact determinant).
std::vector<Rational> rational_eigenvalues(const RatMatrix& m);

/// A proper nonzero common invariant subspace, when the seeded closure search
/// finds one. Seeds: standard basis vectors and exact rational eigenspaces of
/// each generator; falls back to the transposed family (returning the
/// orthogonal complement of its witness). Returns the smallest subspace found.
std::optional<SubspaceBasis> common_invariant_subspace(const MatrixFamily& family);

bool is_irreducible(const MatrixFamily& family);

/// true iff no coordinate subspace is invariant for all generators, decided
/// by strong connectivity of the union digraph of nonzero patterns.
/// Precondition: all entries nonnegative (throws otherwise).
bool is_positively_irreducible(const MatrixFamily& family);

BlockFactorization block_factorize(const MatrixFamily& family);

}  // namespace csrkit

#endif  // CSRKIT_SUBSPACE_HPP
