#include <doctest.h>

#include <random>

#include "csrkit/generators.hpp"
#include "csrkit/lifting.hpp"
#include "csrkit/spectral.hpp"
#include "test_helpers.hpp"

using namespace csrkit;

TEST_CASE("sym vectorization round trip") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const Index d = 2 + static_cast<Index>(rng() % 4);
    RatMatrix m = testing::random_rational_matrix(d, rng);
    RatMatrix x = (m + m.transpose()).eval();
    CHECK(rat_eq(sym_unvectorize(sym_vectorize(x)), x));
  }
  CHECK_THROWS_AS(sym_vectorize(rat_mat({{"0", "1"}, {"2", "0"}})), std::invalid_argument);
}

TEST_CASE("tensor square basics") {
  CHECK(rat_eq(tensor_square(rat_identity(2)).matrix, rat_identity(3)));

  // Rotation lift has spectrum {1, -1, -1}: radius one, trace -1.
  LiftedOperator rot = tensor_square(testing::rotation90());
  Rational tr(0);
  for (Index i = 0; i < 3; ++i) tr += rot.matrix(i, i);
  CHECK(tr == rat(-1));
  CHECK(spectral_radius(rot.matrix, 1e-9).value == doctest::Approx(1.0));

  CHECK(spectral_radius(tensor_square(rat_mat({{"2", "0"}, {"0", "1"}})).matrix, 1e-9).value ==
        doctest::Approx(4.0));
}

TEST_CASE("tensor fourth basics") {
  CHECK(rat_eq(tensor_fourth(rat_identity(2)).matrix, rat_identity(6)));
  CHECK(spectral_radius(tensor_fourth(rat_mat({{"2", "0"}, {"0", "1"}})).matrix, 1e-9).value ==
        doctest::Approx(16.0));
  CHECK(spectral_radius(tensor_fourth(testing::rotation90()).matrix, 1e-9).value ==
        doctest::Approx(1.0));
}

TEST_CASE("lift action agrees with X -> A^T X A on random probes") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const Index d = 2 + static_cast<Index>(rng() % 3);
    RatMatrix a = testing::random_rational_matrix(d, rng);
    LiftedOperator op = tensor_square(a);
    RatMatrix g = testing::random_rational_matrix(d, rng);
    RatMatrix x = (g + g.transpose()).eval();
    SymVec image = op.apply(sym_vectorize(x));
    CHECK(rat_eq(sym_unvectorize(image), (a.transpose() * x * a).eval()));
  }
}

TEST_CASE("lift spectral radius squares the base radius") {
  std::mt19937_64 rng(53);
  const double tol = 1e-9;
  for (int t = 0; t < 8; ++t) {
    RatMatrix a = testing::random_rational_matrix(3, rng);
    const double base = spectral_radius(a, tol).value;
    const double lifted = spectral_radius(tensor_square(a).matrix, tol).value;
    CHECK(std::abs(lifted - base * base) <= 2 * tol * std::max(1.0, base * base) + 1e-10);
  }
}

TEST_CASE("lifting is an anti-homomorphism") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 8; ++t) {
    RatMatrix a = testing::random_rational_matrix(3, rng);
    RatMatrix b = testing::random_rational_matrix(3, rng);
    CHECK(rat_eq(tensor_square((a * b).eval()).matrix,
                 (tensor_square(b).matrix * tensor_square(a).matrix).eval()));
  }
}

TEST_CASE("PSD cone is invariant under lifts") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    RatMatrix g = testing::random_rational_matrix(3, rng);
    RatMatrix x = (g.transpose() * g).eval();  // PSD by construction
    REQUIRE(is_psd(x));
    RatMatrix a = testing::random_rational_matrix(3, rng);
    SymVec image = tensor_square(a).apply(sym_vectorize(x));
    CHECK(is_psd(sym_unvectorize(image)));
  }
}

TEST_CASE("exact PSD and PD tests") {
  CHECK(is_psd(rat_mat({{"1", "0"}, {"0", "0"}})));
  CHECK_FALSE(is_pd(rat_mat({{"1", "0"}, {"0", "0"}})));
  CHECK_FALSE(is_psd(rat_mat({{"0", "1"}, {"1", "0"}})));
  CHECK(is_pd(rat_mat({{"2", "1"}, {"1", "1"}})));
  CHECK_FALSE(is_psd(rat_mat({{"-1", "0"}, {"0", "1"}})));
  // Singular PSD with zero diagonal entries along the way.
  CHECK(is_psd(rat_mat({{"0", "0", "0"}, {"0", "1", "1"}, {"0", "1", "1"}})));
}

TEST_CASE("perron_in_cone canonical and one-dimensional cases") {
  // Identity operator: everything is fixed; the canonical choice is I.
  LiftedOperator id_op{2, rat_identity(3)};
  CHECK(rat_eq(sym_unvectorize(perron_in_cone(id_op)), rat_identity(2)));

  // Lift of the rotation alone: fixed matrices are multiples of I.
  LiftedOperator rot = tensor_square(testing::rotation90());
  SymVec y = perron_in_cone(rot);
  RatMatrix h = sym_unvectorize(y);
  CHECK(h(0, 1) == 0);
  CHECK(h(0, 0) == h(1, 1));
  CHECK(h(0, 0) > 0);
}

TEST_CASE("perron_in_cone reports kernels without PSD points") {
  // Fixed space span{diag(1,-1), offdiagonal}: no nonzero PSD member, so the
  // search must fail and hand back the kernel basis.
  RatMatrix m = rat_identity(3);
  RatVector u = rat_vec({"1", "1", "0"});
  m -= (u * u.transpose() * rat(1, 2)).eval();
  LiftedOperator op{2, m};
  CHECK_THROWS_AS(perron_in_cone(op), PerronSearchError);
  try {
    perron_in_cone(op);
  } catch (const PerronSearchError& e) {
    CHECK(e.kernel_basis.size() == 2);
  }
}

TEST_CASE("perron_in_cone on the Euler r=4 lifted average") {
  MatrixFamily b = gen_euler(4);
  RatMatrix avg = lifted_average(b);
  REQUIRE(has_eigenvalue_one(avg));
  SymVec y = perron_in_cone(LiftedOperator{3, avg});
  CHECK(is_psd(sym_unvectorize(y)));
  // Exact fixed point of the averaged operator.
  RatVector im = avg * y.coords;
  for (Index i = 0; i < im.size(); ++i) CHECK(im(i) == y.coords(i));
}
