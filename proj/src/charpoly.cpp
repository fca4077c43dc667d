#include "csrkit/charpoly.hpp"

#include <stdexcept>

namespace csrkit {

namespace {

using IntMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;

void strip_leading_zeros(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const BigInt& c : p) g = gcd(g, c);
  return g == 0 ? BigInt(1) : g;
}

void make_primitive(IntPoly& p) {
  BigInt g = content(p);
  if (g == 1) return;
  for (BigInt& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

bool is_zero_poly(const IntPoly& p) {
  for (const BigInt& c : p)
    if (c != 0) return false;
  return true;
}

// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
  strip_leading_zeros(a);
  const long db = static_cast<long>(b.size()) - 1;
  const BigInt& lb = b.back();
  while (static_cast<long>(a.size()) - 1 >= db && !is_zero_poly(a)) {
    const long da = static_cast<long>(a.size()) - 1;
    const BigInt la = a.back();
    for (long i = 0; i < da; ++i) a[static_cast<std::size_t>(i)] *= lb;
    for (long i = 0; i <= db; ++i) {
      a[static_cast<std::size_t>(da - db + i)] -= la * b[static_cast<std::size_t>(i)];
    }
    a.pop_back();
    strip_leading_zeros(a);
  }
  return a;
}

}  // namespace

IntPoly char_poly_int(const IntMatrix& m) {
  const Index d = m.rows();
  if (m.cols() != d) throw std::invalid_argument("char_poly of non-square matrix");
  // Berkowitz iteration over leading principal submatrices. p holds the
  // characteristic polynomial of the current submatrix, ascending by degree
  // in storage but built here as descending vectors for convenience.
  std::vector<BigInt> p{BigInt(1)};  // degree-descending: p[0] = leading coeff
  for (Index r = 1; r <= d; ++r) {
    const Index n = r - 1;  // size of the previous principal block
    // s[k] = row * A^(k-1) * col for k >= 1, s[0] = m(n, n).
    std::vector<BigInt> s(static_cast<std::size_t>(r));
    s[0] = m(n, n);
    if (n > 0) {
      Eigen::Matrix<BigInt, Eigen::Dynamic, 1> w(n);
      for (Index i = 0; i < n; ++i) w(i) = m(i, n);
      for (Index k = 1; k < r; ++k) {
        BigInt dot = 0;
        for (Index i = 0; i < n; ++i) dot += m(n, i) * w(i);
        s[static_cast<std::size_t>(k)] = dot;
        if (k + 1 < r) {
          Eigen::Matrix<BigInt, Eigen::Dynamic, 1> w2(n);
          for (Index i = 0; i < n; ++i) {
            BigInt acc = 0;
            for (Index j = 0; j < n; ++j) acc += m(i, j) * w(j);
            w2(i) = acc;
          }
          w.swap(w2);
        }
      }
    }
    // p_new = T * p with T lower-triangular Toeplitz, first column
    // (1, -s0, -s1, ...).
    std::vector<BigInt> q(static_cast<std::size_t>(r) + 1, BigInt(0));
    for (std::size_t i = 0; i < q.size(); ++i) {
      BigInt acc = 0;
      if (i < p.size()) acc += p[i];
      for (std::size_t k = 0; k < s.size() && k + 1 <= i; ++k) {
        const std::size_t j = i - 1 - k;
        if (j < p.size()) acc -= s[k] * p[j];
      }
      q[i] = acc;
    }
    p = std::move(q);
  }
  // Convert descending to ascending order.
  IntPoly out(p.rbegin(), p.rend());
  return out;
}

IntPoly char_poly_scaled(const RatMatrix& m, BigInt& scale) {
  const Index d = m.rows();
  if (m.cols() != d) throw std::invalid_argument("char_poly of non-square matrix");
  BigInt l = 1;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) l = lcm(l, BigInt(m(i, j).get_den()));
  IntMatrix n(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) n(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
  scale = l;
  return char_poly_int(n);
}

IntPoly poly_derivative(const IntPoly& p) {
  if (p.size() <= 1) return IntPoly{BigInt(0)};
  IntPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  return d;
}

IntPoly poly_gcd(IntPoly a, IntPoly b) {
  strip_leading_zeros(a);
  strip_leading_zeros(b);
  if (is_zero_poly(a)) {
    make_primitive(b);
    return b;
  }
  if (is_zero_poly(b)) {
    make_primitive(a);
    return a;
  }
  make_primitive(a);
  make_primitive(b);
  if (a.size() < b.size()) a.swap(b);
  while (!is_zero_poly(b)) {
    IntPoly r = pseudo_rem(a, b);
    strip_leading_zeros(r);
    if (!is_zero_poly(r)) make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  make_primitive(a);
  if (a.back() < 0)
    for (BigInt& c : a) c = -c;
  return a;
}

IntPoly poly_divide_exact(const IntPoly& a, const IntPoly& b) {
  // Exact division over Q with integer output expected by construction.
  const long da = static_cast<long>(a.size()) - 1;
  const long db = static_cast<long>(b.size()) - 1;
  if (da < db) throw std::invalid_argument("poly_divide_exact: degree mismatch");
  std::vector<Rational> rem(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) rem[i] = Rational(a[i]);
  const Rational lead = Rational(b.back());
  IntPoly q(static_cast<std::size_t>(da - db) + 1, BigInt(0));
  for (long k = da - db; k >= 0; --k) {
    Rational c = rem[static_cast<std::size_t>(k + db)] / lead;
    c.canonicalize();
    if (c.get_den() != 1) throw std::runtime_error("poly_divide_exact: non-exact division");
    q[static_cast<std::size_t>(k)] = c.get_num();
    for (long i = 0; i <= db; ++i) {
      rem[static_cast<std::size_t>(k + i)] -= c * Rational(b[static_cast<std::size_t>(i)]);
    }
  }
  for (long i = 0; i < db; ++i) {
    if (rem[static_cast<std::size_t>(i)] != 0) {
      throw std::runtime_error("poly_divide_exact: nonzero remainder");
    }
  }
  return q;
}

IntPoly squarefree_part(const IntPoly& p) {
  IntPoly q = p;
  strip_leading_zeros(q);
  if (q.size() <= 2) {
    make_primitive(q);
    return q;
  }
  IntPoly g = poly_gcd(q, poly_derivative(q));
  if (g.size() <= 1) {
    make_primitive(q);
    return q;
  }
  IntPoly sf = poly_divide_exact(q, g);
  make_primitive(sf);
  return sf;
}

}  // namespace csrkit
