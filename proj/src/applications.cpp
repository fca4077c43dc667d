#include "csrkit/applications.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "csrkit/generators.hpp"
#include "csrkit/lifting.hpp"
#include "csrkit/spectral.hpp"
#include "csrkit/subspace.hpp"

namespace csrkit {

namespace {

double log2_big(const BigInt& v) {
  signed long exp;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// c.s.r. test for an already-lifted cone-preserving family: eigenvalue-1
// guard on the mean, PSD fixed point, invariant affine subspace membership.
bool lifted_cone_csr_yes(const std::vector<RatMatrix>& lifted, Index base_dim, double tol) {
  const Index dd = lifted.front().rows();
  RatMatrix mean = rat_zero(dd, dd);
  for (const auto& l : lifted) mean += l;
  mean *= Rational(1, static_cast<unsigned long>(lifted.size()));
  if (!has_eigenvalue_one(mean)) return false;
  SpectralResult r = spectral_radius(mean, tol);
  if (r.value > 1 + 2 * tol) return false;
  SymVec y;
  try {
    y = perron_in_cone(LiftedOperator{base_dim, mean});
  } catch (const PerronSearchError&) {
    return false;
  }
  std::vector<RatVector> seeds;
  for (const auto& l : lifted) seeds.push_back(y.coords - l * y.coords);
  SubspaceBasis closure = invariant_closure(lifted, seeds);
  return !in_span(closure.vectors, y.coords);
}

}  // namespace

FinitenessReport decide_finiteness(const MatrixFamily& family, int depth, double tol,
                                   const DecisionOptions& opts) {
  for (const auto& a : family) {
    if (!is_integral(a)) throw PreconditionError("decide_finiteness: non-integer entries");
  }
  if (!is_irreducible(family)) {
    throw PreconditionError("decide_finiteness: family is reducible");
  }

  FinitenessReport report;
  report.mortality_probe_depth = depth;
  try {
    ProductLevels products = enumerate_products(family, depth, opts.product_cap);
    for (const auto& level : products.levels) {
      for (const auto& e : level) {
        if (is_zero(e.value)) report.mortal_product_found = true;
      }
    }
  } catch (const CapExceededError&) {
  }
  if (report.mortal_product_found) {
    report.status = Finiteness::unknown;
    return report;
  }

  report.verdict = decide_irreducible(family, tol, opts);
  switch (report.verdict.answer) {
    case Answer::Yes: {
      report.status = Finiteness::finite;
      // Exact closure by BFS; the verdict guarantees boundedness, and a
      // bounded set of integer matrices is finite.
      std::unordered_set<std::string> seen;
      std::deque<RatMatrix> queue;
      for (const auto& a : family) {
        if (seen.insert(matrix_key(a)).second) queue.push_back(a);
      }
      bool closed = true;
      while (!queue.empty()) {
        RatMatrix m = std::move(queue.front());
        queue.pop_front();
        for (const auto& a : family) {
          RatMatrix p = (a * m).eval();
          if (seen.insert(matrix_key(p)).second) {
            if (seen.size() > opts.product_cap) {
              closed = false;
              queue.clear();
              break;
            }
            queue.push_back(std::move(p));
          }
        }
        if (!closed) break;
      }
      if (closed) report.cardinality = static_cast<unsigned long>(seen.size());
      break;
    }
    case Answer::No: {
      report.status = Finiteness::infinite;
      if (report.verdict.certificate.witness) {
        report.witness = report.verdict.certificate.witness;
      }
      break;
    }
    case Answer::Unknown:
      report.status = Finiteness::unknown;
      break;
  }
  return report;
}

std::vector<BigInt> euler_b(int r, long k_max) {
  if (r < 2) throw std::invalid_argument("euler_b: r must be >= 2");
  if (k_max < 0) throw std::invalid_argument("euler_b: k_max must be >= 0");
  std::vector<BigInt> b(static_cast<std::size_t>(k_max) + 1);
  b[0] = 1;
  for (long k = 1; k <= k_max; ++k) {
    BigInt acc = 0;
    const long d0 = (k % 2 == 0) ? 0 : 1;
    for (long d = d0; d < r && d <= k; d += 2) {
      acc += b[static_cast<std::size_t>((k - d) / 2)];
    }
    b[static_cast<std::size_t>(k)] = acc;
  }
  return b;
}

PartitionReport euler_report(int r, long k_max, int depth, double tol) {
  (void)depth;
  if (r < 3) throw std::invalid_argument("euler_report: r must be >= 3");
  PartitionReport report;
  report.r = r;
  report.k_max = k_max;
  report.b_values = euler_b(r, k_max);

  // Octave envelopes: growth per octave of max/min converges to the
  // limsup/liminf exponents of log b / log k; the prefactor cancels.
  int octaves = 0;
  while ((2L << octaves) <= k_max) ++octaves;
  std::vector<double> max_slopes, min_slopes;
  double prev_max = 0, prev_min = 0;
  for (int j = 0; j < octaves; ++j) {
    const long lo = 1L << j;
    const long hi = std::min(k_max + 1, 2L << j);
    double w_max = -1e300, w_min = 1e300;
    for (long k = lo; k < hi; ++k) {
      const double lb = log2_big(report.b_values[static_cast<std::size_t>(k)]);
      w_max = std::max(w_max, lb);
      w_min = std::min(w_min, lb);
    }
    if (j > 0) {
      max_slopes.push_back(w_max - prev_max);
      min_slopes.push_back(w_min - prev_min);
    }
    prev_max = w_max;
    prev_min = w_min;
  }
  const std::size_t window = std::min<std::size_t>(6, max_slopes.size());
  std::vector<double> tail_max(max_slopes.end() - window, max_slopes.end());
  std::vector<double> tail_min(min_slopes.end() - window, min_slopes.end());
  report.p2_estimate = median(tail_max);
  report.p1_estimate = std::min(median(tail_min), report.p2_estimate);

  report.csr_verdict = decide_nonneg(gen_euler(r), tol);
  return report;
}

LssReport lss_uniform(const MatrixFamily& family, double tol) {
  const Index d = family_dim(family);
  const Index dd = sym_dim(d);
  (void)tol;

  // Constant-law screen: a generator with an eigenvalue of positive real part
  // already forces growth, reducible or not.
  for (const auto& a : family) {
    double scale = 1.0;
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) scale = std::max(scale, std::abs(a(i, j).get_d()));
    Eigen::EigenSolver<Eigen::MatrixXd> es(to_double(a), false);
    double max_re = -1e300;
    for (Index i = 0; i < d; ++i) max_re = std::max(max_re, es.eigenvalues()(i).real());
    if (max_re > 1e-7 * scale) {
      LssReport r;
      r.answer = LssAnswer::not_uniform;
      return r;
    }
  }
  const bool irreducible = is_irreducible(family);

  // Stack the Lyapunov operators X -> A^T X + X A over SymVec coordinates.
  RatMatrix stacked(dd * static_cast<Index>(family.size()), dd);
  for (std::size_t t = 0; t < family.size(); ++t) {
    const RatMatrix& a = family[t];
    for (Index k = 0; k < dd; ++k) {
      SymVec basis{d, RatVector::Constant(dd, Rational(0))};
      basis.coords(k) = 1;
      RatMatrix x = sym_unvectorize(basis);
      RatMatrix image = a.transpose() * x + x * a;
      stacked.block(static_cast<Index>(t) * dd, k, dd, 1) = sym_vectorize(image).coords;
    }
  }
  SubspaceBasis solutions = kernel_basis(stacked);

  LssReport report;
  // The no-solution / forced-zero-diagonal conclusions rest on the invariant
  // ellipsoid being necessary, which holds for irreducible families.
  if (solutions.dim() == 0) {
    report.answer = irreducible ? LssAnswer::not_uniform : LssAnswer::unknown;
    return report;
  }
  // A diagonal coordinate forced to zero over the whole solution space rules
  // out positive definiteness outright.
  for (Index i = 0; i < d; ++i) {
    const Index idx = i;  // diagonal coordinates come first in SymVec order
    bool all_zero = true;
    for (const auto& v : solutions.vectors) {
      if (v(idx) != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) {
      report.answer = irreducible ? LssAnswer::not_uniform : LssAnswer::unknown;
      return report;
    }
  }
  auto pd = find_psd_in_subspace(solutions.vectors, nullptr, d, /*require_pd=*/true);
  if (pd) {
    RatMatrix h = sym_unvectorize(SymVec{d, *pd});
    Rational tr(0);
    for (Index i = 0; i < d; ++i) tr += h(i, i);
    h *= Rational(d) / tr;
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) h(i, j).canonicalize();
    report.answer = LssAnswer::uniform;
    report.h = h;
    return report;
  }
  report.answer = LssAnswer::unknown;
  return report;
}

LssReport lss_positive_uniform(const MatrixFamily& family, double tol,
                               const DecisionOptions& opts) {
  const Index d = family_dim(family);
  for (const auto& a : family) {
    if (!is_metzler(a)) throw PreconditionError("lss_positive_uniform: non-Metzler generator");
  }
  Rational max_diag(0);
  for (const auto& a : family) {
    for (Index i = 0; i < d; ++i) {
      Rational v = abs(a(i, i));
      if (v > max_diag) max_diag = v;
    }
  }
  const Rational alpha = 1 / (1 + max_diag);
  MatrixFamily shifted;
  for (const auto& a : family) shifted.push_back((rat_identity(d) + a * alpha).eval());

  if (!is_positively_irreducible(shifted)) {
    throw PreconditionError("lss_positive_uniform: shifted family is positively reducible");
  }

  CsrVerdict verdict = decide_nonneg(shifted, tol, opts);
  LssReport report;
  if (verdict.answer == Answer::Yes) {
    report.answer = LssAnswer::uniform;
    report.certificate = verdict.certificate.invariant_affine;
  } else if (verdict.answer == Answer::No) {
    report.answer = LssAnswer::not_uniform;
  } else {
    report.answer = LssAnswer::unknown;
  }
  return report;
}

FractalReport fractal_regularity(const AffineOperator& b0, const AffineOperator& b1, int depth,
                                 double tol, const DecisionOptions& opts) {
  const Index d = b0.linear.rows();
  if (b1.linear.rows() != d || b0.translation.size() != d || b1.translation.size() != d) {
    throw std::invalid_argument("fractal_regularity: dimension mismatch");
  }
  const MatrixFamily linear{b0.linear, b1.linear};
  for (const auto& m : linear) {
    if (spectral_radius_numeric(to_double(m)) >= 1.0) {
      throw PreconditionError("fractal_regularity: linear part is not a contraction");
    }
  }
  // Fixed points (I - M_i) v = t_i, and the cross condition B_0 v_1 = B_1 v_0.
  RatMatrix i_d = rat_identity(d);
  auto v0 = solve((i_d - b0.linear).eval(), b0.translation);
  auto v1 = solve((i_d - b1.linear).eval(), b1.translation);
  if (!v0 || !v1) throw PreconditionError("fractal_regularity: no fixed point");
  RatVector lhs = b0.linear * (*v1) + b0.translation;
  RatVector rhs = b1.linear * (*v0) + b1.translation;
  for (Index i = 0; i < d; ++i) {
    if (lhs(i) != rhs(i)) {
      throw PreconditionError("fractal_regularity: cross condition violated");
    }
  }

  const RadiiOptions radii_opts{opts.product_cap};
  JsrBounds jsr = jsr_bounds(linear, depth, tol, radii_opts);
  LsrBounds lsr = lsr_bounds(linear, depth, tol, radii_opts);

  FractalReport report;
  report.alpha_min = -std::log2(std::max(jsr.upper, 1e-12));
  report.alpha_max = -std::log2(std::max(lsr.lower, 1e-12));

  // Constant regularity: one diagonal block consists of two matrices that are
  // a common scale r times orthogonal (in some basis), the others stay below
  // r. The scale enters only through its square, which is a rational
  // eigenvalue of the lifted block mean, so the test stays exact.
  BlockFactorization f = block_factorize(linear);
  for (Index j = 0; j < f.s(); ++j) {
    const MatrixFamily& block = f.diagonal_blocks[static_cast<std::size_t>(j)];
    const Index bd = block[0].rows();
    bool nonsingular = true;
    for (const auto& m : block) {
      if (det(m) == 0) nonsingular = false;
    }
    if (!nonsingular) continue;

    RatMatrix mean = lifted_average(block);
    const double rho_mean = spectral_radius(mean, tol).value;
    Rational s;
    if (!rationalize(rho_mean, 1000000L, 1e-7 * std::max(1.0, rho_mean), s)) continue;
    if (s <= 0) continue;
    RatMatrix shifted = mean;
    for (Index i = 0; i < shifted.rows(); ++i) shifted(i, i) -= s;
    if (det(shifted) != 0) continue;  // scale^2 must be an exact eigenvalue
    const double r_val = std::sqrt(s.get_d());
    if (!(s >= rat(1, 4) && s < 1)) continue;  // r in [1/2, 1)

    std::vector<RatMatrix> lifted_scaled;
    const Rational inv_s = 1 / s;
    for (const auto& m : block) lifted_scaled.push_back((tensor_square(m).matrix * inv_s).eval());
    if (!lifted_cone_csr_yes(lifted_scaled, bd, tol)) continue;

    bool others_below = true;
    for (Index i = 0; i < f.s(); ++i) {
      if (i == j) continue;
      JsrBounds bb = jsr_bounds(f.diagonal_blocks[static_cast<std::size_t>(i)], depth, tol,
                                radii_opts);
      if (!(bb.upper <= r_val + tol)) {
        others_below = false;
        break;
      }
    }
    if (!others_below) continue;

    report.constant_regularity = true;
    report.block_scale_r = r_val;
    break;
  }
  return report;
}

}  // namespace csrkit
