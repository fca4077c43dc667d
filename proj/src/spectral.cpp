#include "csrkit/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "csrkit/charpoly.hpp"

namespace csrkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Osborne-style balancing with power-of-two scales (no rounding error).
Eigen::MatrixXd balance(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  bool converged = false;
  int sweeps = 0;
  while (!converged && sweeps++ < 32) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0, r = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0 || r == 0) continue;
      double f = 1;
      const double s = c + r;
      while (c < r / 2) {
        c *= 2;
        r /= 2;
        f *= 2;
      }
      while (c > r * 2) {
        c /= 2;
        r *= 2;
        f /= 2;
      }
      if (c + r < 0.95 * s && f != 1) {
        converged = false;
        a.col(i) *= f;
        a.row(i) /= f;
      }
    }
  }
  return a;
}

bool exactly_triangular(const RatMatrix& m, bool upper) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const bool below = upper ? (i > j) : (i < j);
      if (below && m(i, j) != 0) return false;
    }
  return true;
}

std::vector<std::complex<double>> eigenvalues_of(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(balance(m), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw EigenSolveError(static_cast<int>(solver.getMaxIterations() * m.rows()));
  }
  std::vector<std::complex<double>> ev(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) ev[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return ev;
}

// --- high-precision complex arithmetic for root polishing ------------------

struct CF {
  mpf_class re, im;
};

CF cf_mul(const CF& a, const CF& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CF cf_sub(const CF& a, const CF& b) { return {a.re - b.re, a.im - b.im}; }

CF cf_div(const CF& a, const CF& b) {
  mpf_class n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

CF horner_cf(const IntPoly& p, const CF& z, int bits) {
  CF acc{mpf_class(0, bits), mpf_class(0, bits)};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = cf_mul(acc, z);
    acc.re += mpf_class(*it, bits);
  }
  return acc;
}

// --- exact complex rationals ------------------------------------------------

struct QC {
  Rational re, im;
};

QC qc_mul(const QC& a, const QC& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

QC qc_sub(const QC& a, const QC& b) { return {a.re - b.re, a.im - b.im}; }

Rational qc_norm2(const QC& a) { return a.re * a.re + a.im * a.im; }

QC horner_qc(const IntPoly& p, const QC& z) {
  QC acc{Rational(0), Rational(0)};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = qc_mul(acc, z);
    acc.re += Rational(*it);
  }
  return acc;
}

double sqrt_up(const Rational& x) {
  double v = std::sqrt(std::max(0.0, x.get_d()));
  return v * (1.0 + 4 * kEps) + std::numeric_limits<double>::min();
}

double sqrt_down(const Rational& x) {
  double v = std::sqrt(std::max(0.0, x.get_d()));
  return std::max(0.0, v * (1.0 - 4 * kEps));
}

// Roots of an integer polynomial via the balanced companion matrix.
std::vector<std::complex<double>> companion_roots(const IntPoly& p) {
  const std::size_t n = p.size() - 1;
  // Scale coefficients to a representable double range.
  double maxmag = 0;
  std::vector<double> c(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    c[i] = mpf_class(p[i], 128).get_d();
    maxmag = std::max(maxmag, std::abs(c[i]));
  }
  if (maxmag > 0) {
    for (double& x : c) x /= maxmag;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                               static_cast<Eigen::Index>(n));
  const double lead = c.back();
  for (std::size_t i = 0; i + 1 < n; ++i) comp(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / lead;
  }
  return eigenvalues_of(comp);
}

struct CertifiedRange {
  double lo = 0, hi = 0;
  bool ok = false;
};

// Encloses max |root| of the (integer) polynomial p: Newton-polished
// approximations plus exact Weierstrass disks. Every root lies in the disk
// union; a connected component of k disks holds exactly k roots.
CertifiedRange certify_max_root_modulus(const IntPoly& p, int bits) {
  CertifiedRange out;
  const std::size_t n = p.size() - 1;
  if (n == 0) {
    out.lo = out.hi = 0;
    out.ok = true;
    return out;
  }
  std::vector<std::complex<double>> approx = companion_roots(p);
  IntPoly dp = poly_derivative(p);

  // Two Newton steps in high precision; quadratic convergence pushes the
  // Weierstrass radii far below double rounding.
  std::vector<QC> roots;
  roots.reserve(n);
  for (const auto& z0 : approx) {
    CF z{mpf_class(z0.real(), bits), mpf_class(z0.imag(), bits)};
    for (int it = 0; it < 3; ++it) {
      CF num = horner_cf(p, z, bits);
      CF den = horner_cf(dp, z, bits);
      mpf_class dn = den.re * den.re + den.im * den.im;
      if (dn == 0) break;
      z = cf_sub(z, cf_div(num, den));
    }
    QC q;
    mpq_set_f(q.re.get_mpq_t(), z.re.get_mpf_t());
    mpq_set_f(q.im.get_mpq_t(), z.im.get_mpf_t());
    roots.push_back(std::move(q));
  }

  const Rational lead(p.back());
  std::vector<double> center(n), radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational prod_norm2(1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      prod_norm2 *= qc_norm2(qc_sub(roots[i], roots[j]));
    }
    if (prod_norm2 == 0) return out;  // duplicate approximations; give up
    Rational val_norm2 = qc_norm2(horner_qc(p, roots[i]));
    Rational w2 = val_norm2 / (qc_norm2(QC{lead, Rational(0)}) * prod_norm2);
    w2.canonicalize();
    center[i] = sqrt_down(qc_norm2(roots[i]));
    radius[i] = static_cast<double>(n) * sqrt_up(w2) * (1.0 + 8 * kEps) + 1e-300;
  }

  // Upper bound: every root is inside some disk.
  double hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    hi = std::max(hi, sqrt_up(qc_norm2(roots[i])) + radius[i]);
  }
  // Lower bound: each connected disk component contains at least one root.
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = sqrt_down(qc_norm2(qc_sub(roots[i], roots[j])));
      if (dist <= radius[i] + radius[j]) comp[find(i)] = find(j);
    }
  std::vector<double> comp_min(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = find(i);
    comp_min[c] = std::min(comp_min[c], std::max(0.0, center[i] - radius[i]));
  }
  double lo = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) == i) lo = std::max(lo, comp_min[i]);
  }
  out.lo = lo;
  out.hi = hi;
  out.ok = true;
  return out;
}

}  // namespace

double spectral_radius_numeric(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  double r = 0;
  for (const auto& ev : eigenvalues_of(m)) r = std::max(r, std::abs(ev));
  return r;
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

SpectralResult spectral_radius(const RatMatrix& m, double tol, const SpectralOptions& opts) {
  if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius of non-square matrix");
  (void)tol;
  const Index d = m.rows();
  SpectralResult res;
  if (d == 0) {
    res.certified = true;
    return res;
  }

  if (exactly_triangular(m, true) || exactly_triangular(m, false)) {
    Rational best(0);
    for (Index i = 0; i < d; ++i) {
      Rational a = abs(m(i, i));
      if (a > best) best = a;
    }
    res.value = best.get_d();
    res.error_bound = 2 * kEps * (1.0 + res.value);
    res.certified = true;
    return res;
  }

  const Eigen::MatrixXd md = to_double(m);
  double rho_hat = 0;
  for (const auto& ev : eigenvalues_of(md)) rho_hat = std::max(rho_hat, std::abs(ev));
  res.value = rho_hat;

  if (d <= opts.cert_dim_cap) {
    BigInt scale;
    IntPoly p = char_poly_scaled(m, scale);
    IntPoly q = squarefree_part(p);
    CertifiedRange range = certify_max_root_modulus(q, opts.polish_bits);
    if (range.ok) {
      const double s = mpf_class(scale, 128).get_d();
      const double lo = range.lo / s * (1.0 - 4 * kEps);
      const double hi = range.hi / s * (1.0 + 4 * kEps);
      // Snap the value into the certified interval.
      res.value = std::clamp(rho_hat, lo, hi);
      res.error_bound = std::max({hi - res.value, res.value - lo, 4 * kEps * (1.0 + res.value)});
      res.certified = true;
      return res;
    }
  }

  // Residual-based estimate: backward error of the eigen decomposition,
  // scaled defensively. Not a proof, and flagged as such.
  Eigen::EigenSolver<Eigen::MatrixXd> solver(balance(md), true);
  if (solver.info() != Eigen::Success) {
    throw EigenSolveError(static_cast<int>(solver.getMaxIterations() * d));
  }
  double max_res = 0;
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  const Eigen::MatrixXcd mc = balance(md).cast<std::complex<double>>();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i)) < 0.9 * rho_hat) continue;
    Eigen::VectorXcd v = vecs.col(i);
    double nv = v.norm();
    if (nv == 0) continue;
    max_res = std::max(max_res, (mc * v - vals(i) * v).norm() / nv);
  }
  res.error_bound = 8 * max_res + 64 * kEps * (1.0 + md.norm());
  res.certified = false;
  return res;
}

}  // namespace csrkit
