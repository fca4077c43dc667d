#ifndef CSRKIT_APPLICATIONS_HPP
#define CSRKIT_APPLICATIONS_HPP

#include <optional>
#include <vector>

#include "csrkit/decision.hpp"
#include "csrkit/matrix.hpp"

namespace csrkit {

// --- finite matrix semigroups ----------------------------------------------

enum class Finiteness { finite, infinite, unknown };

struct FinitenessReport {
  Finiteness status = Finiteness::unknown;
  std::optional<unsigned long> cardinality;  // exact semigroup size when closed
  std::optional<Witness> witness;            // growth evidence for "infinite"
  bool mortal_product_found = false;         // zero product within the probe
  int mortality_probe_depth = 0;
  CsrVerdict verdict;
};

/// Finiteness of the semigroup generated by an irreducible integer family.
/// finite iff the c.s.r. verdict is Yes; the semigroup is then enumerated by
/// exact BFS. Mortality is probed only up to `depth` (a bounded heuristic).
FinitenessReport decide_finiteness(const MatrixFamily& family, int depth, double tol,
                                   const DecisionOptions& opts = {});

// --- Euler binary partition function ----------------------------------------

/// b(k) for k = 0..k_max: number of binary expansions of k with digits in
/// {0, ..., r-1}. Exact big integers.
std::vector<BigInt> euler_b(int r, long k_max);

struct PartitionReport {
  int r = 0;
  long k_max = 0;
  std::vector<BigInt> b_values;
  double p1_estimate = 0;
  double p2_estimate = 0;
  CsrVerdict csr_verdict;
};

PartitionReport euler_report(int r, long k_max, int depth, double tol);

// --- linear switching systems ------------------------------------------------

enum class LssAnswer { uniform, not_uniform, unknown };

struct LssReport {
  LssAnswer answer = LssAnswer::unknown;
  std::optional<RatMatrix> h;                 // common quadratic invariant
  std::optional<SubspaceBasis> certificate;   // affine certificate (positive case)
};

/// Uniform growth for all switching laws: exact solution space of
/// A_i^T H + H A_i = 0 searched for a positive definite element.
LssReport lss_uniform(const MatrixFamily& family, double tol);

/// Positive systems (Metzler generators): affine invariant subspace of the
/// shifted family I + alpha A, alpha = 1/(1 + max |diagonal|).
LssReport lss_positive_uniform(const MatrixFamily& family, double tol,
                               const DecisionOptions& opts = {});

// --- fractal curve regularity -------------------------------------------------

struct AffineOperator {
  RatMatrix linear;
  RatVector translation;
};

struct FractalReport {
  double alpha_min = 0;  // -log2 of the joint spectral radius upper bound
  double alpha_max = 0;  // -log2 of the lower spectral radius lower bound
  bool constant_regularity = false;
  std::optional<double> block_scale_r;
};

FractalReport fractal_regularity(const AffineOperator& b0, const AffineOperator& b1, int depth,
                                 double tol, const DecisionOptions& opts = {});

}  // namespace csrkit

#endif  // CSRKIT_APPLICATIONS_HPP
