#include <doctest.h>

#include "csrkit/exact.hpp"
#include "csrkit/generators.hpp"
#include "test_helpers.hpp"

using namespace csrkit;

TEST_CASE("rank of simple matrices") {
  CHECK(rank(rat_identity(2)) == 2);
  CHECK(rank(rat_mat({{"1", "0"}, {"1", "0"}})) == 1);
  CHECK(rank(rat_zero(3, 3)) == 0);
}

TEST_CASE("kernel bases") {
  CHECK(kernel_basis(rat_identity(2)).dim() == 0);

  SubspaceBasis k = kernel_basis(rat_mat({{"1", "-1"}, {"0", "0"}}));
  REQUIRE(k.dim() == 1);
  CHECK(k.vectors[0](0) == k.vectors[0](1));
  CHECK(k.vectors[0](0) != 0);
}

TEST_CASE("kernel of the Euler r=3 mean minus identity") {
  // Abar = (1/3)(D_0 + D_1) = [[2/3,1/3],[1/3,2/3]]; kernel of Abar - I is
  // spanned by (1,1): the single equation -x/3 + y/3 = 0.
  MatrixFamily b = gen_euler(3);
  RatMatrix mean = ((b[0] + b[1]) * rat(1, 2)).eval();
  RatMatrix shifted = mean - rat_identity(2);
  SubspaceBasis k = kernel_basis(shifted);
  REQUIRE(k.dim() == 1);
  CHECK(k.vectors[0](0) == k.vectors[0](1));
}

TEST_CASE("rank-nullity on random rational matrices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const Index d = 2 + static_cast<Index>(rng() % 4);
    RatMatrix m = testing::random_rational_matrix(d, rng);
    if (t % 3 == 0) m.col(0) = m.col(d - 1);  // force some rank drops
    CHECK(rank(m) + kernel_basis(m).dim() == d);
  }
}

TEST_CASE("determinant and eigenvalue-one detection") {
  CHECK(det(rat_identity(3)) == 1);
  CHECK(det(rat_mat({{"1", "2"}, {"3", "4"}})) == rat(-2));
  CHECK(has_eigenvalue_one(rat_identity(4)));
  CHECK_FALSE(has_eigenvalue_one(rat_mat({{"1/2", "0"}, {"0", "1/2"}})));

  // Column-stochastic mean of the even-r digit pair fixes the all-ones left
  // eigenvector, so det(mean - I) = 0 exactly.
  MatrixFamily b4 = gen_euler(4);
  RatMatrix mean = ((b4[0] + b4[1]) * rat(1, 2)).eval();
  CHECK(has_eigenvalue_one(mean));
}

TEST_CASE("solve and inverse") {
  RatMatrix a = rat_mat({{"2", "1"}, {"1", "1"}});
  RatVector b = rat_vec({"3", "2"});
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  CHECK(rat_eq((a * (*x)).eval(), b));

  RatMatrix inv = inverse(a);
  CHECK(rat_eq((a * inv).eval(), rat_identity(2)));

  // Inconsistent system.
  RatMatrix s = rat_mat({{"1", "1"}, {"1", "1"}});
  CHECK_FALSE(solve(s, rat_vec({"1", "2"})).has_value());
  CHECK_THROWS_AS(inverse(s), std::invalid_argument);
}

TEST_CASE("span builder membership") {
  SpanBuilder sb(3);
  CHECK(sb.add(rat_vec({"1", "0", "0"})));
  CHECK(sb.add(rat_vec({"1", "1", "0"})));
  CHECK_FALSE(sb.add(rat_vec({"3", "2", "0"})));
  CHECK(sb.dim() == 2);
  CHECK(sb.contains(rat_vec({"-1", "5", "0"})));
  CHECK_FALSE(sb.contains(rat_vec({"0", "0", "1"})));
}

TEST_CASE("rational parsing") {
  CHECK(rat_parse("-3/7") == rat(-3, 7));
  CHECK(rat_parse("4/2") == rat(2));
  CHECK(rat_str(rat(-3, 7)) == "-3/7");
  CHECK(rat_str(rat(5)) == "5");
  CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1.5"), std::invalid_argument);
}
