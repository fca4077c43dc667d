#include "csrkit/lifting.hpp"

#include <algorithm>
#include <numeric>

namespace csrkit {

namespace {

// Index of coordinate (i, j), i <= j, in the SymVec layout.
Index sym_index(Index d, Index i, Index j) {
  if (i > j) std::swap(i, j);
  if (i == j) return i;
  // Off-diagonals in row order, after the d diagonal slots.
  return d + (i * (2 * d - i - 1)) / 2 + (j - i - 1);
}

RatMatrix sym_basis_matrix(Index d, Index k) {
  RatMatrix e = rat_zero(d, d);
  if (k < d) {
    e(k, k) = 1;
    return e;
  }
  Index t = k - d;
  for (Index i = 0; i < d; ++i) {
    const Index row_len = d - i - 1;
    if (t < row_len) {
      e(i, i + 1 + t) = 1;
      e(i + 1 + t, i) = 1;
      return e;
    }
    t -= row_len;
  }
  throw std::invalid_argument("sym basis index out of range");
}

}  // namespace

SymVec sym_vectorize(const RatMatrix& x) {
  const Index d = x.rows();
  if (x.cols() != d) throw std::invalid_argument("sym_vectorize: non-square matrix");
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j)
      if (x(i, j) != x(j, i)) throw std::invalid_argument("sym_vectorize: non-symmetric matrix");
  SymVec v;
  v.dim = d;
  v.coords = RatVector::Constant(sym_dim(d), Rational(0));
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j) v.coords(sym_index(d, i, j)) = x(i, j);
  return v;
}

RatMatrix sym_unvectorize(const SymVec& v) {
  const Index d = v.dim;
  if (v.coords.size() != sym_dim(d)) throw std::invalid_argument("sym_unvectorize: bad length");
  RatMatrix x(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j) {
      x(i, j) = v.coords(sym_index(d, i, j));
      x(j, i) = x(i, j);
    }
  return x;
}

SymVec LiftedOperator::apply(const SymVec& x) const {
  SymVec out;
  out.dim = x.dim;
  out.coords = matrix * x.coords;
  return out;
}

LiftedOperator tensor_square(const RatMatrix& a) {
  const Index d = a.rows();
  if (a.cols() != d) throw std::invalid_argument("tensor_square: non-square matrix");
  const Index dd = sym_dim(d);
  LiftedOperator op;
  op.base_dim = d;
  op.matrix = RatMatrix(dd, dd);
  for (Index k = 0; k < dd; ++k) {
    RatMatrix image = a.transpose() * sym_basis_matrix(d, k) * a;
    op.matrix.col(k) = sym_vectorize(image).coords;
  }
  return op;
}

LiftedOperator tensor_fourth(const RatMatrix& a) {
  return tensor_square(tensor_square(a).matrix);
}

RatMatrix lifted_average(const MatrixFamily& family) {
  const Index d = family_dim(family);
  const Index dd = sym_dim(d);
  RatMatrix acc = rat_zero(dd, dd);
  for (const auto& a : family) acc += tensor_square(a).matrix;
  const Rational inv_m(1, static_cast<unsigned long>(family.size()));
  return (acc * inv_m).eval();
}

bool is_psd(const RatMatrix& m) {
  const Index d = m.rows();
  if (m.cols() != d) throw std::invalid_argument("is_psd: non-square matrix");
  RatMatrix a = m;
  std::vector<bool> active(static_cast<std::size_t>(d), true);
  Index remaining = d;
  while (remaining > 0) {
    Index pivot = -1;
    for (Index i = 0; i < d; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      if (a(i, i) < 0) return false;
      if (a(i, i) > 0 && pivot < 0) pivot = i;
    }
    if (pivot < 0) {
      // All active diagonal entries vanish: PSD iff the active block is zero.
      for (Index i = 0; i < d; ++i) {
        if (!active[static_cast<std::size_t>(i)]) continue;
        for (Index j = 0; j < d; ++j) {
          if (!active[static_cast<std::size_t>(j)]) continue;
          if (a(i, j) != 0) return false;
        }
      }
      return true;
    }
    const Rational p = a(pivot, pivot);
    for (Index i = 0; i < d; ++i) {
      if (!active[static_cast<std::size_t>(i)] || i == pivot) continue;
      for (Index j = 0; j < d; ++j) {
        if (!active[static_cast<std::size_t>(j)] || j == pivot) continue;
        a(i, j) -= a(i, pivot) * a(pivot, j) / p;
        a(i, j).canonicalize();
      }
    }
    active[static_cast<std::size_t>(pivot)] = false;
    --remaining;
  }
  return true;
}

bool is_pd(const RatMatrix& m) {
  const Index d = m.rows();
  if (m.cols() != d) throw std::invalid_argument("is_pd: non-square matrix");
  // Sylvester: all leading principal minors positive.
  RatMatrix a = m;
  for (Index k = 0; k < d; ++k) {
    if (a(k, k) <= 0) return false;
    for (Index i = k + 1; i < d; ++i) {
      for (Index j = k + 1; j < d; ++j) {
        a(i, j) -= a(i, k) * a(k, j) / a(k, k);
        a(i, j).canonicalize();
      }
    }
  }
  return true;
}

std::optional<RatVector> find_psd_in_subspace(const std::vector<RatVector>& vectors,
                                              const RatVector* offset, Index dim,
                                              bool require_pd, int budget) {
  auto admissible = [&](const RatVector& coords) -> bool {
    if (!offset && is_zero(coords)) return false;
    SymVec v{dim, coords};
    RatMatrix x = sym_unvectorize(v);
    return require_pd ? is_pd(x) : is_psd(x);
  };

  if (offset && admissible(*offset)) return *offset;
  if (vectors.empty()) return std::nullopt;

  // Bounded-height rationals, enumerated coarse-to-fine (Stern-Brocot levels).
  std::vector<Rational> coeffs{Rational(0)};
  for (int den = 1; den <= 4; ++den) {
    for (int num = 1; num <= 4; ++num) {
      if (std::gcd(num, den) != 1) continue;
      coeffs.push_back(rat(num, den));
      coeffs.push_back(rat(-num, den));
    }
  }
  std::sort(coeffs.begin(), coeffs.end(), [](const Rational& a, const Rational& b) {
    Rational ha = abs(a.get_num()) + a.get_den();
    Rational hb = abs(b.get_num()) + b.get_den();
    if (ha != hb) return ha < hb;
    return a < b;
  });

  const std::size_t g = vectors.size();
  // Single-vector sweeps first, then full tuples for small eigenspaces.
  int used = 0;
  for (std::size_t i = 0; i < g; ++i) {
    for (const Rational& c : coeffs) {
      if (++used > budget) return std::nullopt;
      RatVector cand = offset ? RatVector(*offset) : RatVector::Constant(vectors[i].size(), Rational(0));
      cand += vectors[i] * c;
      if (admissible(cand)) return cand;
    }
  }
  if (g >= 2) {
    std::vector<std::size_t> idx(g, 0);
    while (true) {
      if (++used > budget) return std::nullopt;
      RatVector cand = offset ? RatVector(*offset) : RatVector::Constant(vectors[0].size(), Rational(0));
      for (std::size_t i = 0; i < g; ++i) cand += vectors[i] * coeffs[idx[i]];
      if (admissible(cand)) return cand;
      std::size_t k = 0;
      while (k < g && ++idx[k] == coeffs.size()) {
        idx[k] = 0;
        ++k;
      }
      if (k == g) break;
    }
  }
  return std::nullopt;
}

SymVec perron_in_cone(const LiftedOperator& op) {
  RatMatrix shifted = op.matrix;
  for (Index i = 0; i < shifted.rows(); ++i) shifted(i, i) -= 1;
  SubspaceBasis kernel = kernel_basis(shifted);
  if (kernel.dim() == 0) {
    throw std::invalid_argument("perron_in_cone: operator has no eigenvalue 1");
  }

  if (kernel.dim() == kernel.ambient_dim) {
    // The operator fixes everything; the identity is the canonical choice.
    return sym_vectorize(rat_identity(op.base_dim));
  }

  if (kernel.dim() == 1) {
    SymVec y{op.base_dim, kernel.vectors[0]};
    RatMatrix x = sym_unvectorize(y);
    Rational tr(0);
    for (Index i = 0; i < x.rows(); ++i) tr += x(i, i);
    if (tr < 0) y.coords = -y.coords;
    if (!is_psd(sym_unvectorize(y))) throw PerronSearchError(kernel.vectors);
    return y;
  }

  auto found = find_psd_in_subspace(kernel.vectors, nullptr, op.base_dim, false);
  if (!found) throw PerronSearchError(kernel.vectors);
  return SymVec{op.base_dim, *found};
}

}  // namespace csrkit
