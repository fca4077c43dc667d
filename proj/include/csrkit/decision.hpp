#ifndef CSRKIT_DECISION_HPP
#define CSRKIT_DECISION_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "csrkit/exact.hpp"
#include "csrkit/matrix.hpp"
#include "csrkit/radii.hpp"
#include "csrkit/subspace.hpp"

namespace csrkit {

enum class Answer { Yes, No, Unknown };

enum class Method {
  nonneg_affine,
  lifted_affine,
  radii_equal,
  theorem5_composite,
  brute_force,
};

struct Witness {
  RatMatrix product;
  double rho = 0;
  int length = 0;
};

/// Certificate payload; only the parts relevant to the verdict are present.
struct Certificate {
  std::optional<SubspaceBasis> invariant_affine;  // V = point + linear part
  std::optional<RatVector> perron_vector;         // v (base or SymVec coords)
  std::optional<RatMatrix> ellipsoid;             // PSD matrix H
  std::optional<Witness> witness;                 // product with |rho - 1| > tol
  std::optional<RatMatrix> mean_evidence;         // mean whose rho != 1
  std::vector<RatVector> kernel;                  // Perron search failure payload
  std::optional<SubspaceBasis> membership;        // closure that absorbed v
  std::optional<double> rho2, rho4;
  // Block composites: which diagonal block carries the certificate.
  std::optional<Index> csr_block;
  std::vector<Index> block_sizes;
};

struct CsrVerdict {
  Answer answer = Answer::Unknown;
  Method method = Method::theorem5_composite;
  Certificate certificate;
  std::optional<int> depth_used;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DecisionOptions {
  std::size_t product_cap = 200000;
  int witness_search_depth = 6;  // bounded hunt for a No counterexample
};

/// Positively irreducible nonnegative families: the invariant affine subspace
/// test through the exact Perron vector of the generator mean.
CsrVerdict decide_nonneg(const MatrixFamily& family, double tol,
                         const DecisionOptions& opts = {});

/// Irreducible families: the tensor-square lift, its PSD fixed matrix, and
/// the invariant affine subspace test in the lifted space.
CsrVerdict decide_irreducible(const MatrixFamily& family, double tol,
                              const DecisionOptions& opts = {});

/// Floating-point cross-check: c.s.r. iff rho_2 = rho_4 = 1 within tol.
CsrVerdict decide_radii(const MatrixFamily& family, double tol);

/// General families: block factorization plus per-block decisions composed
/// with depth-bounded joint-spectral-radius bounds. Unknown is a value.
CsrVerdict decide(const MatrixFamily& family, int depth, double tol,
                  const DecisionOptions& opts = {});

/// Oracle by enumeration: No with a witness when a product of length <= depth
/// has |rho - 1| > tol, else Yes-at-depth (a semi-verdict; testing only).
CsrVerdict brute_force_csr(const MatrixFamily& family, int depth, double tol,
                           const DecisionOptions& opts = {});

/// Positive-definite matrix in the intersection of the lifted invariant
/// affine subspace with the interior of the PSD cone (trace-normalized).
/// Absent when the family is not a verified Yes or no interior point is found
/// within the search budget.
std::optional<RatMatrix> invariant_ellipsoid(const MatrixFamily& family, double tol,
                                             const DecisionOptions& opts = {});

/// Basis change T (floating point, T = H^(1/2)) making every generator
/// orthogonal within tol. Absent unless the family is irreducible with
/// nonsingular generators and verdict Yes.
std::optional<Eigen::MatrixXd> orthogonality_basis(const MatrixFamily& family, double tol,
                                                   const DecisionOptions& opts = {});

}  // namespace csrkit

#endif  // CSRKIT_DECISION_HPP
