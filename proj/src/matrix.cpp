#include "csrkit/matrix.hpp"

#include <stdexcept>

namespace csrkit {

RatMatrix rat_identity(Index d) {
  RatMatrix m = rat_zero(d, d);
  for (Index i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

RatMatrix rat_zero(Index rows, Index cols) {
  RatMatrix m(rows, cols);
  m.setConstant(Rational(0));
  return m;
}

RatMatrix rat_mat(std::initializer_list<std::initializer_list<const char*>> rows) {
  const Index r = static_cast<Index>(rows.size());
  if (r == 0) return RatMatrix(0, 0);
  const Index c = static_cast<Index>(rows.begin()->size());
  RatMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) {
      throw std::invalid_argument("ragged matrix literal");
    }
    Index j = 0;
    for (const char* e : row) m(i, j++) = rat_parse(e);
    ++i;
  }
  return m;
}

RatVector rat_vec(std::initializer_list<const char*> entries) {
  RatVector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (const char* e : entries) v(i++) = rat_parse(e);
  return v;
}

Eigen::MatrixXd to_double(const RatMatrix& m) {
  Eigen::MatrixXd d(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).get_d();
  return d;
}

Eigen::VectorXd to_double(const RatVector& v) {
  Eigen::VectorXd d(v.size());
  for (Index i = 0; i < v.size(); ++i) d(i) = v(i).get_d();
  return d;
}

bool rat_eq(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool is_zero(const RatMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

bool is_nonnegative(const RatMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) return false;
  return true;
}

bool is_nonnegative(const MatrixFamily& family) {
  for (const auto& m : family)
    if (!is_nonnegative(m)) return false;
  return true;
}

bool is_integral(const RatMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

bool is_metzler(const RatMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) < 0) return false;
  return true;
}

RatMatrix kron(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix k = rat_zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (Index p = 0; p < b.rows(); ++p)
        for (Index q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

Index family_dim(const MatrixFamily& family) {
  if (family.empty()) throw std::invalid_argument("empty matrix family");
  const Index d = family.front().rows();
  for (const auto& m : family) {
    if (m.rows() != d || m.cols() != d) {
      throw std::invalid_argument("family members must be square of equal dimension");
    }
  }
  return d;
}

MatrixFamily transposed(const MatrixFamily& family) {
  MatrixFamily t;
  t.reserve(family.size());
  for (const auto& m : family) t.push_back(m.transpose());
  return t;
}

MatrixFamily scaled(const MatrixFamily& family, const Rational& c) {
  MatrixFamily s;
  s.reserve(family.size());
  for (const auto& m : family) s.push_back((m * c).eval());
  return s;
}

std::string matrix_key(const RatMatrix& m) {
  std::string key;
  key.reserve(static_cast<std::size_t>(m.size()) * 4);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      key += rat_str(m(i, j));
      key += ';';
    }
  return key;
}

}  // namespace csrkit
