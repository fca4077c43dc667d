#include <doctest.h>

#include <cmath>

#include "csrkit/exact.hpp"
#include "csrkit/generators.hpp"
#include "csrkit/spectral.hpp"
#include "test_helpers.hpp"

using namespace csrkit;

namespace {
const double kPhi2 = (3.0 + std::sqrt(5.0)) / 2.0;  // rho of [[1,1],[1,2]]
}

TEST_CASE("spectral radius of basic matrices") {
  SpectralResult r = spectral_radius(testing::rotation90(), 1e-9);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.error_bound <= 1e-9);

  // Jordan block: triangular, defective, rho exactly 1.
  r = spectral_radius(testing::jordan2(), 1e-9);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.certified);
}

TEST_CASE("spectral radius of the r=3 digit product") {
  MatrixFamily d = euler_digit_matrices(3);
  RatMatrix p = (d[0] * d[1]).eval();
  SpectralResult r = spectral_radius(p, 1e-9);
  CHECK(r.value == doctest::Approx(kPhi2).epsilon(1e-11));
  CHECK(r.certified);
  CHECK(r.error_bound <= 1e-9);
}

TEST_CASE("certified bound survives a non-triangular defective matrix") {
  // T^-1 J T with integer unimodular T: double eigenvalue 1, no triangular
  // shortcut. The square-free reduction keeps the certified bound tight.
  RatMatrix t = rat_mat({{"2", "1"}, {"1", "1"}});
  RatMatrix m = (inverse(t) * testing::jordan2() * t).eval();
  SpectralResult r = spectral_radius(m, 1e-9);
  CHECK(r.certified);
  CHECK(std::abs(r.value - 1.0) <= 1e-9);
  CHECK(r.error_bound <= 1e-9);
}

TEST_CASE("power identity within k*tol") {
  std::mt19937_64 rng(11);
  const double tol = 1e-9;
  for (int trial = 0; trial < 12; ++trial) {
    RatMatrix m = testing::random_rational_matrix(3, rng);
    const double base = spectral_radius(m, tol).value;
    RatMatrix p = m;
    for (int k = 2; k <= 6; ++k) {
      p = (p * m).eval();
      const double lhs = spectral_radius(p, tol).value;
      const double scale = std::max(1.0, std::pow(base, k));
      CHECK(std::abs(lhs - std::pow(base, k)) <= k * tol * scale + k * 1e-12 * scale);
    }
  }
}

TEST_CASE("similarity invariance") {
  std::mt19937_64 rng(23);
  const double tol = 1e-9;
  for (int trial = 0; trial < 10; ++trial) {
    RatMatrix m = testing::random_rational_matrix(3, rng);
    RatMatrix t = random_unimodular(3, rng);
    RatMatrix conj = (inverse(t) * m * t).eval();
    const double a = spectral_radius(m, tol).value;
    const double b = spectral_radius(conj, tol).value;
    CHECK(std::abs(a - b) <= 2 * tol * std::max(1.0, a));
  }
}

TEST_CASE("beyond the certification cap the estimate is flagged") {
  // 36-dimensional non-triangular matrix with known radius: the value stays
  // accurate, the bound degrades to an estimate and says so.
  MatrixFamily d7 = euler_digit_matrices(7);
  RatMatrix big = kron(d7[0], rat_identity(6));
  REQUIRE(big.rows() == 36);
  SpectralResult r = spectral_radius(big, 1e-9);
  CHECK_FALSE(r.certified);
  const double expected = spectral_radius(d7[0], 1e-9).value;
  CHECK(r.value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("spectral norm sanity") {
  CHECK(spectral_norm(to_double(rat_identity(3))) == doctest::Approx(1.0));
  CHECK(spectral_norm(to_double(rat_mat({{"0", "-2"}, {"1/2", "0"}}))) == doctest::Approx(2.0));
}
