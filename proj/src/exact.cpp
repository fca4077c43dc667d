#include "csrkit/exact.hpp"

#include <stdexcept>

namespace csrkit {

namespace {

using IntMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;

// Clears denominators row by row; row scaling preserves rank, row space and
// null space. Returns the per-row scale factors.
IntMatrix clear_denominators(const RatMatrix& m, std::vector<BigInt>* row_scales = nullptr) {
  IntMatrix n(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    BigInt l = 1;
    for (Index j = 0; j < m.cols(); ++j) {
      BigInt d = m(i, j).get_den();
      l = lcm(l, d);
    }
    for (Index j = 0; j < m.cols(); ++j) {
      n(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    if (row_scales) row_scales->push_back(l);
  }
  return n;
}

struct Echelon {
  IntMatrix mat;                 // fraction-free row echelon form
  std::vector<Index> pivot_cols; // one per nonzero row, increasing
  int sign = 1;                  // row-swap parity
  BigInt last_pivot = 1;         // final Bareiss pivot (for determinants)
};

// Fraction-free (Bareiss) elimination with column pivot search. Exact over Z.
Echelon bareiss(IntMatrix a) {
  Echelon e;
  const Index rows = a.rows(), cols = a.cols();
  BigInt prev = 1;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot_row = -1;
    for (Index i = r; i < rows; ++i) {
      if (a(i, c) != 0) {
        pivot_row = i;
        break;
      }
    }
    if (pivot_row < 0) continue;
    if (pivot_row != r) {
      a.row(pivot_row).swap(a.row(r));
      e.sign = -e.sign;
    }
    const BigInt pivot = a(r, c);
    for (Index i = r + 1; i < rows; ++i) {
      for (Index j = c + 1; j < cols; ++j) {
        BigInt t = a(i, j) * pivot - a(i, c) * a(r, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, c) = 0;
    }
    prev = pivot;
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.last_pivot = prev;
  e.mat = std::move(a);
  return e;
}

}  // namespace

Index rank(const RatMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return static_cast<Index>(bareiss(clear_denominators(m)).pivot_cols.size());
}

Rational det(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  if (m.rows() == 0) return Rational(1);
  std::vector<BigInt> scales;
  Echelon e = bareiss(clear_denominators(m, &scales));
  if (static_cast<Index>(e.pivot_cols.size()) < m.rows()) return Rational(0);
  // For Bareiss on a square full-rank matrix, the last pivot equals det of
  // the integer matrix (up to row-swap sign).
  Rational d(e.last_pivot * e.sign);
  for (const BigInt& s : scales) d /= Rational(s);
  d.canonicalize();
  return d;
}

bool has_eigenvalue_one(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("square matrix required");
  RatMatrix shifted = m;
  for (Index i = 0; i < m.rows(); ++i) shifted(i, i) -= 1;
  return det(shifted) == 0;
}

SubspaceBasis kernel_basis(const RatMatrix& m) {
  const Index cols = m.cols();
  SubspaceBasis basis;
  basis.ambient_dim = cols;
  if (cols == 0) return basis;
  if (m.rows() == 0) {
    for (Index j = 0; j < cols; ++j) {
      RatVector e = RatVector::Constant(cols, Rational(0));
      e(j) = 1;
      basis.vectors.push_back(e);
    }
    return basis;
  }

  Echelon e = bareiss(clear_denominators(m));
  const Index r = static_cast<Index>(e.pivot_cols.size());

  std::vector<bool> is_pivot(cols, false);
  for (Index c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

  // Back-substitution in exact rationals, one kernel vector per free column.
  for (Index free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
    RatVector v = RatVector::Constant(cols, Rational(0));
    v(free_col) = 1;
    for (Index row = r - 1; row >= 0; --row) {
      const Index pc = e.pivot_cols[static_cast<std::size_t>(row)];
      Rational acc(0);
      for (Index j = pc + 1; j < cols; ++j) {
        if (v(j) != 0 && e.mat(row, j) != 0) acc += Rational(e.mat(row, j)) * v(j);
      }
      v(pc) = -acc / Rational(e.mat(row, pc));
      v(pc).canonicalize();
    }
    basis.vectors.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b) {
  if (m.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  aug.block(0, 0, m.rows(), m.cols()) = m;
  aug.col(m.cols()) = b;

  Echelon e = bareiss(clear_denominators(aug));
  // Inconsistent iff some pivot lands in the augmented column.
  for (Index c : e.pivot_cols) {
    if (c == m.cols()) return std::nullopt;
  }
  const Index r = static_cast<Index>(e.pivot_cols.size());
  RatVector x = RatVector::Constant(m.cols(), Rational(0));
  for (Index row = r - 1; row >= 0; --row) {
    const Index pc = e.pivot_cols[static_cast<std::size_t>(row)];
    Rational acc = Rational(e.mat(row, m.cols()));
    for (Index j = pc + 1; j < m.cols(); ++j) {
      if (x(j) != 0 && e.mat(row, j) != 0) acc -= Rational(e.mat(row, j)) * x(j);
    }
    x(pc) = acc / Rational(e.mat(row, pc));
    x(pc).canonicalize();
  }
  return x;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const Index d = m.rows();
  RatMatrix inv(d, d);
  for (Index j = 0; j < d; ++j) {
    RatVector e = RatVector::Constant(d, Rational(0));
    e(j) = 1;
    auto col = solve(m, e);
    if (!col) throw std::invalid_argument("inverse of singular matrix");
    // solve() returns *a* solution; uniqueness requires full rank.
    inv.col(j) = *col;
  }
  if (rank(m) != d) throw std::invalid_argument("inverse of singular matrix");
  return inv;
}

bool in_span(const std::vector<RatVector>& basis, const RatVector& v) {
  if (basis.empty()) return is_zero(v);
  SpanBuilder sb(v.size());
  for (const auto& b : basis) sb.add(b);
  return sb.contains(v);
}

SpanBuilder::SpanBuilder(Index ambient_dim) : ambient_(ambient_dim) {}

RatVector SpanBuilder::reduce(const RatVector& v, Index& pivot_col) const {
  RatVector w = v;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Index pc = pivot_cols_[k];
    if (w(pc) != 0) {
      w -= rows_[k] * w(pc);
    }
  }
  pivot_col = ambient_;
  for (Index j = 0; j < ambient_; ++j) {
    if (w(j) != 0) {
      pivot_col = j;
      break;
    }
  }
  return w;
}

bool SpanBuilder::add(const RatVector& v) {
  if (v.size() != ambient_) throw std::invalid_argument("SpanBuilder: wrong vector length");
  Index pc;
  RatVector w = reduce(v, pc);
  if (pc == ambient_) return false;
  w /= w(pc);
  for (Index j = 0; j < ambient_; ++j) w(j).canonicalize();
  rows_.push_back(std::move(w));
  pivot_cols_.push_back(pc);
  inserted_.push_back(v);
  return true;
}

bool SpanBuilder::contains(const RatVector& v) const {
  Index pc;
  RatVector w = reduce(v, pc);
  return pc == ambient_;
}

}  // namespace csrkit
