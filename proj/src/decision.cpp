#include "csrkit/decision.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "csrkit/lifting.hpp"

namespace csrkit {

namespace {

enum class Guard { Pass, Fail, Ambiguous };

// rho(mean) = 1 test for cone-preserving means (Perron/Krein-Rutman puts the
// spectral radius itself in the spectrum, so eigenvalue 1 is exact evidence).
// A family failing only the numeric modulus guard at margin < tol stays
// Ambiguous, never Fail.
Guard mean_guard(const RatMatrix& mean, double tol) {
  if (!has_eigenvalue_one(mean)) return Guard::Fail;
  SpectralResult r = spectral_radius(mean, tol);
  if (r.certified) {
    if (r.value - r.error_bound > 1 + tol) return Guard::Fail;
    return Guard::Pass;
  }
  if (r.value > 1 + 2 * tol) return Guard::Fail;
  if (r.value > 1 + tol) return Guard::Ambiguous;
  return Guard::Pass;
}

// Certified |rho(P) - 1| > tol check for a witness candidate.
bool confirm_witness(const RatMatrix& p, double tol, double& rho_out) {
  SpectralResult r = spectral_radius(p, tol);
  rho_out = r.value;
  if (r.certified) return std::abs(r.value - 1.0) - r.error_bound > tol;
  return std::abs(r.value - 1.0) > std::max(tol, 8 * r.error_bound);
}

std::optional<Witness> search_witness(const MatrixFamily& family, int depth, double tol,
                                      std::size_t cap) {
  try {
    ProductLevels products = enumerate_products(family, depth, cap);
    for (int k = 1; k <= depth; ++k) {
      for (const auto& e : products.levels[static_cast<std::size_t>(k - 1)]) {
        double rho_hat = spectral_radius_numeric(to_double(e.value));
        if (std::abs(rho_hat - 1.0) <= tol) continue;
        double rho_cert;
        if (confirm_witness(e.value, tol, rho_cert)) {
          return Witness{e.value, rho_cert, k};
        }
      }
    }
  } catch (const CapExceededError&) {
  }
  return std::nullopt;
}

SubspaceBasis affine_certificate(const RatVector& point, const std::vector<RatVector>& lin) {
  SubspaceBasis v;
  v.ambient_dim = point.size();
  v.vectors = lin;
  v.affine_point = point;
  return v;
}

CsrVerdict compose_theorem5(const MatrixFamily& family, int depth, double tol,
                            const DecisionOptions& opts);

}  // namespace

CsrVerdict decide_nonneg(const MatrixFamily& family, double tol, const DecisionOptions& opts) {
  if (!is_nonnegative(family)) {
    throw PreconditionError("decide_nonneg: family has negative entries");
  }
  if (!is_positively_irreducible(family)) {
    throw PreconditionError("decide_nonneg: family is positively reducible");
  }
  const Index d = family_dim(family);

  RatMatrix mean = rat_zero(d, d);
  for (const auto& a : family) mean += a;
  mean *= Rational(1, static_cast<unsigned long>(family.size()));

  CsrVerdict v;
  v.method = Method::nonneg_affine;
  const Guard g = mean_guard(mean, tol);
  if (g != Guard::Pass) {
    v.answer = g == Guard::Fail ? Answer::No : Answer::Unknown;
    v.certificate.mean_evidence = mean;
    if (v.answer == Answer::No) {
      v.certificate.witness = search_witness(family, opts.witness_search_depth, tol,
                                             opts.product_cap);
    }
    return v;
  }

  RatMatrix shifted = mean;
  for (Index i = 0; i < d; ++i) shifted(i, i) -= 1;
  SubspaceBasis kernel = kernel_basis(shifted);
  if (kernel.dim() != 1) {
    throw InconsistencyError(
        "decide_nonneg: eigenvalue-1 eigenspace of the mean is not one-dimensional");
  }
  RatVector perron = kernel.vectors[0];
  // The Perron vector of a positively irreducible matrix is strictly signed.
  int sign = 0;
  for (Index i = 0; i < d; ++i) {
    if (perron(i) == 0) throw InconsistencyError("decide_nonneg: Perron vector has a zero entry");
    const int s = perron(i) > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) throw InconsistencyError("decide_nonneg: Perron vector changes sign");
  }
  if (sign < 0) perron = -perron;

  std::vector<RatVector> seeds;
  for (const auto& a : family) seeds.push_back(perron - a * perron);
  SubspaceBasis closure = invariant_closure(family, seeds);

  v.certificate.perron_vector = perron;
  if (!in_span(closure.vectors, perron)) {
    v.answer = Answer::Yes;
    v.certificate.invariant_affine = affine_certificate(perron, closure.vectors);
  } else {
    v.answer = Answer::No;
    v.certificate.membership = closure;
    v.certificate.witness =
        search_witness(family, opts.witness_search_depth, tol, opts.product_cap);
  }
  return v;
}

CsrVerdict decide_irreducible(const MatrixFamily& family, double tol,
                              const DecisionOptions& opts) {
  if (!is_irreducible(family)) {
    throw PreconditionError("decide_irreducible: family is reducible");
  }
  const Index d = family_dim(family);

  std::vector<LiftedOperator> lifts;
  for (const auto& a : family) lifts.push_back(tensor_square(a));
  RatMatrix mean = lifted_average(family);

  CsrVerdict v;
  v.method = Method::lifted_affine;
  const Guard g = mean_guard(mean, tol);
  if (g != Guard::Pass) {
    v.answer = g == Guard::Fail ? Answer::No : Answer::Unknown;
    v.certificate.mean_evidence = mean;
    if (v.answer == Answer::No) {
      v.certificate.witness = search_witness(family, opts.witness_search_depth, tol,
                                             opts.product_cap);
    }
    return v;
  }

  SymVec y;
  try {
    y = perron_in_cone(LiftedOperator{d, mean});
  } catch (const PerronSearchError& e) {
    v.answer = Answer::Unknown;
    v.certificate.kernel = e.kernel_basis;
    return v;
  }

  MatrixFamily lifted_family;
  for (const auto& l : lifts) lifted_family.push_back(l.matrix);
  std::vector<RatVector> seeds;
  for (const auto& l : lifts) seeds.push_back(y.coords - l.matrix * y.coords);
  SubspaceBasis closure = invariant_closure(lifted_family, seeds);

  v.certificate.perron_vector = y.coords;
  if (!in_span(closure.vectors, y.coords)) {
    v.answer = Answer::Yes;
    v.certificate.ellipsoid = sym_unvectorize(y);
    v.certificate.invariant_affine = affine_certificate(y.coords, closure.vectors);
  } else {
    v.answer = Answer::No;
    v.certificate.membership = closure;
    v.certificate.witness =
        search_witness(family, opts.witness_search_depth, tol, opts.product_cap);
  }
  return v;
}

CsrVerdict decide_radii(const MatrixFamily& family, double tol) {
  // The rho_2 = rho_4 = 1 characterization is guaranteed only for irreducible
  // families, but the radii themselves are always computable; callers that
  // need the equivalence guarantee check irreducibility themselves.
  RhoEstimate r2 = rho_2(family, tol);
  RhoEstimate r4 = rho_4(family, tol);
  CsrVerdict v;
  v.method = Method::radii_equal;
  v.certificate.rho2 = r2.value;
  v.certificate.rho4 = r4.value;
  v.answer = (std::abs(r2.value - 1.0) <= tol && std::abs(r4.value - 1.0) <= tol)
                 ? Answer::Yes
                 : Answer::No;
  return v;
}

namespace {

CsrVerdict compose_theorem5(const MatrixFamily& family, int depth, double tol,
                            const DecisionOptions& opts) {
  BlockFactorization f = block_factorize(family);
  const Index s = f.s();

  std::vector<CsrVerdict> verdicts;
  for (Index i = 0; i < s; ++i) {
    const MatrixFamily& block = f.diagonal_blocks[static_cast<std::size_t>(i)];
    if (is_nonnegative(block) && is_positively_irreducible(block)) {
      verdicts.push_back(decide_nonneg(block, tol, opts));
    } else {
      verdicts.push_back(decide_irreducible(block, tol, opts));
    }
  }

  if (s == 1) {
    CsrVerdict v = std::move(verdicts[0]);
    return v;
  }

  CsrVerdict out;
  out.method = Method::theorem5_composite;
  out.depth_used = depth;

  bool any_yes = false;
  bool any_unknown = false;
  for (const auto& v : verdicts) {
    any_yes = any_yes || v.answer == Answer::Yes;
    any_unknown = any_unknown || v.answer == Answer::Unknown;
  }

  // Per-block joint spectral radius questions for every non-Yes block.
  bool all_le_one = true;
  for (Index i = 0; i < s; ++i) {
    if (verdicts[static_cast<std::size_t>(i)].answer == Answer::Yes) continue;
    const MatrixFamily& block = f.diagonal_blocks[static_cast<std::size_t>(i)];
    JsrBounds b;
    try {
      b = jsr_bounds(block, depth, tol, RadiiOptions{opts.product_cap});
    } catch (const CapExceededError&) {
      all_le_one = false;
      continue;
    }
    if (b.lower > 1 + tol && b.lower_witness) {
      // A certified product witness in this block rules out the one-good-block shape
      // for every choice of the c.s.r. block.
      double rho_cert;
      if (confirm_witness(*b.lower_witness, tol, rho_cert) && rho_cert > 1 + tol) {
        out.answer = Answer::No;
        out.certificate.witness = Witness{*b.lower_witness, rho_cert, b.lower_witness_length};
        return out;
      }
    }
    if (!(b.upper <= 1 + tol)) all_le_one = false;
  }

  if (any_yes && all_le_one) {
    out.answer = Answer::Yes;
    for (Index i = 0; i < s; ++i) {
      if (verdicts[static_cast<std::size_t>(i)].answer == Answer::Yes) {
        out.certificate = verdicts[static_cast<std::size_t>(i)].certificate;
        out.certificate.csr_block = i;
        out.certificate.block_sizes = f.block_sizes;
        break;
      }
    }
    return out;
  }
  if (!any_yes && !any_unknown) {
    // No block is c.s.r., so the semigroup cannot be.
    out.answer = Answer::No;
    for (const auto& v : verdicts) {
      if (v.certificate.witness) {
        out.certificate.witness = v.certificate.witness;
        break;
      }
    }
    if (!out.certificate.witness) {
      out.certificate.witness =
          search_witness(family, opts.witness_search_depth, tol, opts.product_cap);
    }
    return out;
  }
  out.answer = Answer::Unknown;
  return out;
}

}  // namespace

CsrVerdict decide(const MatrixFamily& family, int depth, double tol,
                  const DecisionOptions& opts) {
  if (depth < 1) throw std::invalid_argument("decide: depth must be >= 1");
  return compose_theorem5(family, depth, tol, opts);
}

CsrVerdict brute_force_csr(const MatrixFamily& family, int depth, double tol,
                           const DecisionOptions& opts) {
  ProductLevels products = enumerate_products(family, depth, opts.product_cap);
  CsrVerdict v;
  v.method = Method::brute_force;
  for (int k = 1; k <= depth; ++k) {
    for (const auto& e : products.levels[static_cast<std::size_t>(k - 1)]) {
      const double rho_hat = spectral_radius_numeric(to_double(e.value));
      if (std::abs(rho_hat - 1.0) <= tol) continue;
      double rho_cert;
      if (confirm_witness(e.value, tol, rho_cert)) {
        v.answer = Answer::No;
        v.certificate.witness = Witness{e.value, rho_cert, k};
        v.depth_used = k;
        return v;
      }
    }
  }
  v.answer = Answer::Yes;  // Yes-at-depth: no violating product found
  v.depth_used = depth;
  return v;
}

std::optional<RatMatrix> invariant_ellipsoid(const MatrixFamily& family, double tol,
                                             const DecisionOptions& opts) {
  CsrVerdict v = decide_irreducible(family, tol, opts);
  if (v.answer != Answer::Yes || !v.certificate.invariant_affine) return std::nullopt;
  const SubspaceBasis& aff = *v.certificate.invariant_affine;
  const Index d = family_dim(family);
  auto pd = find_psd_in_subspace(aff.vectors, &*aff.affine_point, d, /*require_pd=*/true);
  if (!pd) return std::nullopt;
  RatMatrix h = sym_unvectorize(SymVec{d, *pd});
  Rational tr(0);
  for (Index i = 0; i < d; ++i) tr += h(i, i);
  h *= Rational(d) / tr;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) h(i, j).canonicalize();
  return h;
}

std::optional<Eigen::MatrixXd> orthogonality_basis(const MatrixFamily& family, double tol,
                                                   const DecisionOptions& opts) {
  const Index d = family_dim(family);
  for (const auto& a : family) {
    if (det(a) == 0) return std::nullopt;
  }
  if (!is_irreducible(family)) return std::nullopt;
  CsrVerdict v = decide_irreducible(family, tol, opts);
  if (v.answer != Answer::Yes) return std::nullopt;

  // Common fixed symmetric matrices of all lifts: kernel of the stacked
  // (L_i - I); a positive definite element is the ellipsoid H = T^T T.
  const Index dd = sym_dim(d);
  RatMatrix stacked(dd * static_cast<Index>(family.size()), dd);
  for (std::size_t i = 0; i < family.size(); ++i) {
    RatMatrix li = tensor_square(family[i]).matrix;
    for (Index k = 0; k < dd; ++k) li(k, k) -= 1;
    stacked.block(static_cast<Index>(i) * dd, 0, dd, dd) = li;
  }
  SubspaceBasis common = kernel_basis(stacked);
  auto pd = find_psd_in_subspace(common.vectors, nullptr, d, /*require_pd=*/true);
  if (!pd) return std::nullopt;
  RatMatrix h = sym_unvectorize(SymVec{d, *pd});
  Rational tr(0);
  for (Index i = 0; i < d; ++i) tr += h(i, i);
  h *= Rational(d) / tr;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_double(h));
  if (es.info() != Eigen::Success) return std::nullopt;
  Eigen::VectorXd sqrt_ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return Eigen::MatrixXd(es.eigenvectors() * sqrt_ev.asDiagonal() *
                         es.eigenvectors().transpose());
}

}  // namespace csrkit
