#ifndef CSRKIT_SPECTRAL_HPP
#define CSRKIT_SPECTRAL_HPP

#include <stdexcept>

#include "csrkit/matrix.hpp"

namespace csrkit {

struct SpectralResult {
  double value = 0.0;
  double error_bound = 0.0;
  bool certified = false;
};

struct SpectralOptions {
  // Dimension cap for the exact certification pipeline (characteristic
  // polynomial, square-free reduction, Weierstrass disk bounds). Above the
  // cap the error bound is a residual-based estimate.
  Index cert_dim_cap = 30;
  int polish_bits = 256;
};

struct EigenSolveError : std::runtime_error {
  explicit EigenSolveError(int iters)
      : std::runtime_error("eigenvalue solve failed to converge after " +
                           std::to_string(iters) + " iterations"),
        iterations(iters) {}
  int iterations;
};

/// Numeric spectral radius with an a-posteriori error bound. For matrices of
/// dimension <= cert_dim_cap the bound is certified: the exact characteristic
/// polynomial is reduced to its square-free part and every root is enclosed
/// in a Weierstrass disk around a high-precision Newton-polished approximation.
SpectralResult spectral_radius(const RatMatrix& m, double tol,
                               const SpectralOptions& opts = {});

/// Plain floating-point spectral radius (balanced solve, no bound). Used for
/// bulk product scans where the certified pipeline would be wasteful.
double spectral_radius_numeric(const Eigen::MatrixXd& m);

/// Spectral norm (largest singular value).
double spectral_norm(const Eigen::MatrixXd& m);

}  // namespace csrkit

#endif  // CSRKIT_SPECTRAL_HPP
