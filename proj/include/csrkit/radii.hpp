#ifndef CSRKIT_RADII_HPP
#define CSRKIT_RADII_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "csrkit/matrix.hpp"
#include "csrkit/spectral.hpp"

namespace csrkit {

struct CapExceededError : std::runtime_error {
  explicit CapExceededError(std::size_t cap)
      : std::runtime_error("product enumeration exceeded cap of " + std::to_string(cap)),
        cap(cap) {}
  std::size_t cap;
};

struct RadiiOptions {
  std::size_t product_cap = 200000;
};

/// Distinct products per length (exact deduplication) with word multiplicity.
struct ProductLevels {
  struct Entry {
    RatMatrix value;
    unsigned long multiplicity;
  };
  std::vector<std::vector<Entry>> levels;  // levels[k-1]: products of length k
};

ProductLevels enumerate_products(const MatrixFamily& family, int depth,
                                 std::size_t cap);

struct RhoEstimate {
  double value = 0;
  double error_bound = 0;
};

/// sqrt of the spectral radius of the averaged tensor-square lift.
RhoEstimate rho_2(const MatrixFamily& family, double tol);

/// 1/4 power of the spectral radius of the averaged fourth lift.
RhoEstimate rho_4(const MatrixFamily& family, double tol);

enum class UpperNorm { ellipsoid, spectral };

struct JsrBounds {
  double lower = 0;
  double upper = 0;
  UpperNorm norm_used = UpperNorm::spectral;
  // Product realizing the lower bound, with its length.
  std::optional<RatMatrix> lower_witness;
  int lower_witness_length = 0;
};

/// lower = max rho(P)^(1/k) over products of length k <= depth;
/// upper = min over k of the max product norm^(1/k), in the ellipsoidal norm
/// from the rho_2 PSD certificate when one exists, else the spectral norm.
JsrBounds jsr_bounds(const MatrixFamily& family, int depth, double tol,
                     const RadiiOptions& opts = {});

struct LsrBounds {
  double lower = 0;
  double upper = 0;
  std::optional<RatMatrix> upper_witness;
  int upper_witness_length = 0;
};

/// upper = min rho(P)^(1/k); lower = min sigma_min(P)^(1/depth) over products
/// of length depth (zero as soon as a singular product exists).
LsrBounds lsr_bounds(const MatrixFamily& family, int depth, double tol,
                     const RadiiOptions& opts = {});

/// Finite-k estimate of the p-radius: the L_p mean of spectral norms over all
/// m^k products, taken to the 1/k power. p = 0 uses the geometric mean.
double p_radius_estimate(const MatrixFamily& family, double p, int length,
                         double tol, const RadiiOptions& opts = {});

struct RadiiReport {
  RhoEstimate rho2;
  RhoEstimate rho4;
  double jsr_lower = 0, jsr_upper = 0;
  double lsr_lower = 0, lsr_upper = 0;
  int depth = 0;
  UpperNorm norm_used = UpperNorm::spectral;
};

RadiiReport radii_report(const MatrixFamily& family, int depth, double tol,
                         const RadiiOptions& opts = {});

/// Thread cap from CSRKIT_THREADS (>= 1).
int thread_cap();

}  // namespace csrkit

#endif  // CSRKIT_RADII_HPP
