#ifndef CSRKIT_TEST_HELPERS_HPP
#define CSRKIT_TEST_HELPERS_HPP

#include <random>

#include "csrkit/matrix.hpp"

namespace csrkit::testing {

// Random rational matrix with entries in [-2, 2], denominators in {1, 2, 4}.
inline RatMatrix random_rational_matrix(Index d, std::mt19937_64& rng) {
  static const long dens[] = {1, 2, 4};
  RatMatrix m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const long den = dens[rng() % 3];
      const long num = static_cast<long>(rng() % (4 * den + 1)) - 2 * den;
      m(i, j) = rat(num, den);
    }
  return m;
}

inline RatVector random_rational_vector(Index d, std::mt19937_64& rng) {
  RatVector v(d);
  for (Index i = 0; i < d; ++i) {
    v(i) = rat(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
  }
  return v;
}

inline RatMatrix rotation90() { return rat_mat({{"0", "-1"}, {"1", "0"}}); }

inline RatMatrix jordan2() { return rat_mat({{"1", "1"}, {"0", "1"}}); }

}  // namespace csrkit::testing

#endif
