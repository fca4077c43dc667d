#include <doctest.h>

#include <cmath>
#include <random>

#include "csrkit/applications.hpp"
#include "csrkit/exact.hpp"
#include "csrkit/generators.hpp"
#include "csrkit/spectral.hpp"
#include "test_helpers.hpp"

using namespace csrkit;

namespace {

const double kTol = 1e-9;

// Test-side matrix exponential: scaling and squaring with a Taylor tail whose
// remainder is far below the assertion tolerances used here.
Eigen::MatrixXd expm(Eigen::MatrixXd a) {
  int s = 0;
  while (a.norm() > 0.5) {
    a *= 0.5;
    ++s;
  }
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = (sum * sum).eval();
  return sum;
}

// Independent oracle for euler_b: coefficient extraction from the generating
// product prod_j (1 + z^(2^j) + ... + z^((r-1) 2^j)).
std::vector<BigInt> euler_b_by_polynomial(int r, long k_max) {
  std::vector<BigInt> coeff(static_cast<std::size_t>(k_max) + 1);
  coeff[0] = 1;
  for (long p = 1; p <= k_max; p <<= 1) {
    std::vector<BigInt> next(coeff.size());
    for (long k = 0; k <= k_max; ++k) {
      if (coeff[static_cast<std::size_t>(k)] == 0) continue;
      for (long digit = 0; digit < r && k + digit * p <= k_max; ++digit) {
        next[static_cast<std::size_t>(k + digit * p)] += coeff[static_cast<std::size_t>(k)];
      }
    }
    coeff = std::move(next);
  }
  return coeff;
}

std::pair<AffineOperator, AffineOperator> de_rham_pair(const Rational& w) {
  const Rational mid = 1 - 2 * w;
  RatMatrix m0 = rat_zero(2, 2), m1 = rat_zero(2, 2);
  m0(0, 0) = mid;
  m0(1, 0) = w;
  m0(1, 1) = w;
  m1(0, 0) = w;
  m1(0, 1) = w;
  m1(1, 1) = mid;
  AffineOperator b0{m0, rat_vec({"0", "0"})};
  RatVector v1 = rat_vec({"1", "1"});
  AffineOperator b1{m1, (v1 - m1 * v1).eval()};
  return {b0, b1};
}

}  // namespace

TEST_CASE("euler_b closed forms and oracle agreement") {
  std::vector<BigInt> b2 = euler_b(2, 64);
  for (const auto& v : b2) CHECK(v == 1);

  std::vector<BigInt> b3 = euler_b(3, 4);
  CHECK(b3[0] == 1);
  CHECK(b3[1] == 1);
  CHECK(b3[2] == 2);
  CHECK(b3[3] == 1);
  CHECK(b3[4] == 3);

  for (int r = 3; r <= 6; ++r) {
    const long k_max = 512;
    std::vector<BigInt> dp = euler_b(r, k_max);
    std::vector<BigInt> poly = euler_b_by_polynomial(r, k_max);
    for (long k = 0; k <= k_max; ++k) {
      CHECK(dp[static_cast<std::size_t>(k)] == poly[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("euler_report matches the closed-form exponents") {
  PartitionReport r3 = euler_report(3, 1L << 18, 8, kTol);
  CHECK(r3.csr_verdict.answer == Answer::No);
  CHECK(std::abs(r3.p2_estimate - std::log2((std::sqrt(5.0) + 1) / 2)) < 0.07);
  CHECK(r3.p1_estimate < 0.15);
  CHECK(r3.p1_estimate <= r3.p2_estimate);
  CHECK(r3.b_values[0] == 1);

  PartitionReport r4 = euler_report(4, 1L << 18, 8, kTol);
  CHECK(r4.csr_verdict.answer == Answer::Yes);
  CHECK(std::abs(r4.p1_estimate - 1.0) < 0.07);
  CHECK(std::abs(r4.p2_estimate - 1.0) < 0.07);
}

TEST_CASE("even-r growth matches the log-log regression slope") {
  // log b_r(k) against log k over a dyadic span regresses to log2(r/2).
  for (int r : {4, 6}) {
    const long k_max = 1L << 16;
    std::vector<BigInt> b = euler_b(r, k_max);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (long k = 1L << 10; k <= k_max; k += 97) {
      const double x = std::log2(static_cast<double>(k));
      signed long exp;
      const double mant = mpz_get_d_2exp(&exp, b[static_cast<std::size_t>(k)].get_mpz_t());
      const double y = std::log2(mant) + static_cast<double>(exp);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope - std::log2(r / 2.0)) < 0.05);
  }
}

TEST_CASE("finiteness of the projection-rotation family") {
  MatrixFamily f{testing::rotation90(), rat_mat({{"1", "0"}, {"1", "0"}})};
  FinitenessReport a = decide_finiteness(f, 8, kTol);
  FinitenessReport b = decide_finiteness(f, 8, kTol);
  CHECK(a.status == Finiteness::finite);
  REQUIRE(a.cardinality.has_value());
  REQUIRE(b.cardinality.has_value());
  CHECK(*a.cardinality == *b.cardinality);
  CHECK(*a.cardinality >= 4);
  CHECK_FALSE(a.mortal_product_found);
}

TEST_CASE("finiteness rejects the Jordan pair with a growth witness") {
  MatrixFamily f{testing::jordan2(), testing::jordan2().transpose().eval()};
  FinitenessReport r = decide_finiteness(f, 8, kTol);
  CHECK(r.status == Finiteness::infinite);
  REQUIRE(r.witness.has_value());
  CHECK(std::abs(r.witness->rho - (3.0 + std::sqrt(5.0)) / 2.0) <= 1e-9);
}

TEST_CASE("finiteness trivial and error cases") {
  MatrixFamily one{rat_identity(1)};
  FinitenessReport r = decide_finiteness(one, 4, kTol);
  CHECK(r.status == Finiteness::finite);
  CHECK(*r.cardinality == 1);

  CHECK_THROWS_AS(decide_finiteness({rat_mat({{"1/2", "0"}, {"0", "1"}})}, 4, kTol),
                  PreconditionError);
}

TEST_CASE("lss_uniform on antisymmetric and diagonal families") {
  LssReport rot = lss_uniform({testing::rotation90()}, kTol);
  CHECK(rot.answer == LssAnswer::uniform);
  REQUIRE(rot.h.has_value());
  CHECK(rat_eq(*rot.h, rat_identity(2)));

  LssReport diag = lss_uniform({rat_mat({{"1", "0"}, {"0", "-1"}})}, kTol);
  CHECK(diag.answer == LssAnswer::not_uniform);
}

TEST_CASE("lss_uniform recovers the ellipsoid of a conjugated antisymmetric pair") {
  RatMatrix t0 = rat_mat({{"2", "1"}, {"0", "1"}});
  RatMatrix t0inv = inverse(t0);
  MatrixFamily base{testing::rotation90(), (testing::rotation90() * rat(2)).eval()};
  MatrixFamily conj;
  for (const auto& a : base) conj.push_back((t0inv * a * t0).eval());

  LssReport r = lss_uniform(conj, kTol);
  CHECK(r.answer == LssAnswer::uniform);
  REQUIRE(r.h.has_value());
  const RatMatrix& h = *r.h;
  for (const auto& a : conj) {
    CHECK(is_zero((a.transpose() * h + h * a).eval()));
  }
  // Trajectories preserve the H-ellipsoid: exp(tA)^T H exp(tA) = H.
  for (double t : {0.25, 0.5, 1.0}) {
    for (const auto& a : conj) {
      Eigen::MatrixXd e = expm(to_double(a) * t);
      Eigen::MatrixXd drift = e.transpose() * to_double(h) * e - to_double(h);
      CHECK(drift.norm() <= 1e-6);
    }
  }
}

TEST_CASE("positive switching systems") {
  MatrixFamily lap{rat_mat({{"-1", "1"}, {"1", "-1"}})};
  LssReport r = lss_positive_uniform(lap, kTol);
  CHECK(r.answer == LssAnswer::uniform);
  REQUIRE(r.certificate.has_value());
  const SubspaceBasis& v = *r.certificate;
  REQUIRE(v.affine_point.has_value());
  // Re-verify the invariant-subspace shape on (I + A): point and linear part stay
  // inside, the origin stays out, the orthant is met.
  const RatVector& p = *v.affine_point;
  for (const auto& a : lap) {
    RatVector image = p + a * p;
    CHECK(in_span(v.vectors, (image - p).eval()));
    for (const auto& bvec : v.vectors) {
      CHECK(in_span(v.vectors, (bvec + a * bvec).eval()));
    }
  }
  CHECK_FALSE(in_span(v.vectors, p));
  for (Index i = 0; i < p.size(); ++i) CHECK(p(i) > 0);

  CHECK(lss_positive_uniform({rat_mat({{"0", "1"}, {"1", "1"}})}, kTol).answer ==
        LssAnswer::not_uniform);
  CHECK_THROWS_AS(lss_positive_uniform({rat_zero(2, 2)}, kTol), PreconditionError);
  CHECK_THROWS_AS(lss_positive_uniform({rat_mat({{"0", "-1"}, {"1", "0"}})}, kTol),
                  PreconditionError);
}

TEST_CASE("de Rham corner cutting: constant regularity only at 1/4") {
  auto [b0, b1] = de_rham_pair(rat(1, 4));
  FractalReport quarter = fractal_regularity(b0, b1, 8, kTol);
  CHECK(quarter.constant_regularity);
  REQUIRE(quarter.block_scale_r.has_value());
  CHECK(*quarter.block_scale_r == doctest::Approx(0.5));

  auto [c0, c1] = de_rham_pair(rat(1, 3));
  FractalReport third = fractal_regularity(c0, c1, 8, kTol);
  CHECK_FALSE(third.constant_regularity);
  CHECK(third.alpha_max - third.alpha_min > 0.01);
}

TEST_CASE("rational similarity pairs have constant regularity") {
  // Rotation and reflection scaled by 5/6; the cross condition pins the
  // fixed-point difference to the kernel of B0 + B1 - I.
  RatMatrix q0 = rat_mat({{"3/5", "-4/5"}, {"4/5", "3/5"}});
  RatMatrix q1 = rat_mat({{"3/5", "4/5"}, {"4/5", "-3/5"}});
  AffineOperator b0{(q0 * rat(5, 6)).eval(), rat_vec({"0", "0"})};
  RatVector v1 = rat_vec({"3", "4"});
  AffineOperator b1{(q1 * rat(5, 6)).eval(), (v1 - (q1 * rat(5, 6)) * v1).eval()};
  FractalReport r = fractal_regularity(b0, b1, 8, kTol);
  CHECK(r.constant_regularity);
  REQUIRE(r.block_scale_r.has_value());
  CHECK(*r.block_scale_r == doctest::Approx(5.0 / 6.0));
  // For an exact similarity pair the depth-8 jsr/lsr bounds pinch.
  CHECK(std::abs(r.alpha_min - (-std::log2(5.0 / 6.0))) <= 1e-9);
  CHECK(r.alpha_max - r.alpha_min <= 2 * kTol);

  // Coincident fixed points: a ratio 3/5 rotation pair.
  RatMatrix p1 = rat_mat({{"4/5", "-3/5"}, {"3/5", "4/5"}});
  AffineOperator c0{(q0 * rat(3, 5)).eval(), rat_vec({"0", "0"})};
  AffineOperator c1{(p1 * rat(3, 5)).eval(), rat_vec({"0", "0"})};
  FractalReport rc = fractal_regularity(c0, c1, 8, kTol);
  CHECK(rc.constant_regularity);
  CHECK(*rc.block_scale_r == doctest::Approx(0.6));
}

TEST_CASE("fractal preconditions") {
  // Cross-condition violation: two contractions with incompatible fixed points.
  AffineOperator a{rat_mat({{"1/2", "0"}, {"0", "1/2"}}), rat_vec({"0", "0"})};
  AffineOperator b{rat_mat({{"1/2", "0"}, {"0", "1/3"}}), rat_vec({"1", "1"})};
  CHECK_THROWS_AS(fractal_regularity(a, b, 4, kTol), PreconditionError);

  AffineOperator grow{rat_mat({{"2", "0"}, {"0", "1/2"}}), rat_vec({"0", "0"})};
  CHECK_THROWS_AS(fractal_regularity(grow, a, 4, kTol), PreconditionError);
}
