#ifndef CSRKIT_GENERATORS_HPP
#define CSRKIT_GENERATORS_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "csrkit/matrix.hpp"

namespace csrkit {

enum class FamilyKind {
  orthogonal_subgroup,
  kn,
  one_n,
  torsion,
  tensor_product,
  transpose_of,
  euler,
  jordan_counterexample,
  conjugated,
};

/// Reproducible description of a generated family.
struct FamilySpec {
  FamilyKind kind = FamilyKind::orthogonal_subgroup;
  int n = 2;
  int k = 1;
  int r = 3;
  int count = 2;
  std::vector<int> k_vec, n_vec;
  std::uint64_t seed = 0;
  std::shared_ptr<FamilySpec> base;  // for transpose_of / conjugated
};

MatrixFamily generate(const FamilySpec& spec);

/// Random rational orthogonal matrix: signed permutations composed with
/// Pythagorean plane rotations.
RatMatrix random_rational_orthogonal(Index d, std::mt19937_64& rng);

/// Random integer matrix with det +-1 (bounded elementary operations).
RatMatrix random_unimodular(Index d, std::mt19937_64& rng, int steps = 6);

/// (1,n)-matrices: one nonzero entry +-1 per row.
MatrixFamily gen_one_n(int n, int count, std::uint64_t seed);

/// (k,n)-matrices over the given inner family: one nonzero k-block per block
/// row, each block a short product of inner generators.
MatrixFamily gen_kn(const MatrixFamily& inner, int n, int count, std::uint64_t seed);

/// (k-bar, n-bar)-torsion matrices A = B C with rational orthogonal blocks.
MatrixFamily gen_torsion(const std::vector<int>& k_vec, const std::vector<int>& n_vec,
                         int count, std::uint64_t seed);

/// Kronecker products of sampled generator pairs.
MatrixFamily gen_tensor_product(const MatrixFamily& f1, const MatrixFamily& f2, int count,
                                std::uint64_t seed);

/// The pair {B_0, B_1} = (2/r) {D_0, D_1} of the binary partition recursion.
MatrixFamily gen_euler(int r);

/// The unscaled digit matrices {D_0, D_1}.
MatrixFamily euler_digit_matrices(int r);

/// Perturbs one entry of one generator by a small rational; adversarial
/// corpus material.
MatrixFamily perturb_family(const MatrixFamily& family, std::uint64_t seed);

}  // namespace csrkit

#endif  // CSRKIT_GENERATORS_HPP
