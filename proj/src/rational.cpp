#include "csrkit/rational.hpp"

#include <cctype>
#include <cmath>

namespace csrkit {

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational rat_parse(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in rational: '" + std::string(text) + "'");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

bool rationalize(double x, long max_den, double tol, Rational& out) {
  if (!std::isfinite(x)) return false;
  // Continued-fraction convergents p_k/q_k of x.
  double v = x;
  long p_prev = 1, q_prev = 0;
  long p = static_cast<long>(std::floor(v)), q = 1;
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) {
      out = rat(p, q);
      return true;
    }
    double frac = v - std::floor(v);
    if (frac < 1e-15) break;
    v = 1.0 / frac;
    double a = std::floor(v);
    if (a > 1e15) break;
    long ai = static_cast<long>(a);
    long p_next = ai * p + p_prev;
    long q_next = ai * q + q_prev;
    if (q_next > max_den || q_next <= 0) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  if (q <= max_den && q > 0 &&
      std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) {
    out = rat(p, q);
    return true;
  }
  return false;
}

}  // namespace csrkit
