#include <doctest.h>

#include <random>

#include "csrkit/decision.hpp"
#include "csrkit/exact.hpp"
#include "csrkit/generators.hpp"
#include "test_helpers.hpp"

using namespace csrkit;

TEST_CASE("rational orthogonal and unimodular samplers") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const Index d = 2 + static_cast<Index>(rng() % 3);
    RatMatrix q = random_rational_orthogonal(d, rng);
    CHECK(rat_eq((q.transpose() * q).eval(), rat_identity(d)));
    RatMatrix u = random_unimodular(d, rng);
    Rational det_u = det(u);
    CHECK((det_u == 1 || det_u == -1));
  }
}

TEST_CASE("one_n matrices preserve the cube vertices") {
  std::mt19937_64 seed_rng(2);
  for (int n = 2; n <= 4; ++n) {
    MatrixFamily f = gen_one_n(n, 3, seed_rng());
    for (const auto& a : f) {
      // Exhaustive check over all 2^n vertices.
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        RatVector v(n);
        for (Index i = 0; i < n; ++i) v(i) = (mask >> i) & 1 ? 1 : -1;
        RatVector image = a * v;
        for (Index i = 0; i < n; ++i) {
          CHECK((image(i) == 1 || image(i) == -1));
        }
      }
    }
  }
}

TEST_CASE("kn matrices stay closed under products") {
  std::mt19937_64 rng(3);
  MatrixFamily inner{random_rational_orthogonal(2, rng), random_rational_orthogonal(2, rng)};
  MatrixFamily f = gen_kn(inner, 2, 3, 7);
  const Index k = 2, n = 2;
  auto block_structure_ok = [&](const RatMatrix& m) {
    for (Index br = 0; br < n; ++br) {
      int nonzero_blocks = 0;
      for (Index bc = 0; bc < n; ++bc) {
        if (!is_zero(m.block(br * k, bc * k, k, k))) ++nonzero_blocks;
      }
      if (nonzero_blocks != 1) return false;
    }
    return true;
  };
  for (const auto& a : f) CHECK(block_structure_ok(a));
  for (const auto& a : f)
    for (const auto& b : f) CHECK(block_structure_ok((a * b).eval()));
}

TEST_CASE("torsion matrices preserve the compatibility sphere") {
  std::mt19937_64 rng(11);
  const std::vector<int> kv{1, 1}, nv{2, 1};
  MatrixFamily f = gen_torsion(kv, nv, 3, 13);
  CHECK(family_dim(f) == 3);
  // Random points with equal block norms per group: x = (s*u, t*u', w).
  for (int trial = 0; trial < 100; ++trial) {
    RatVector x(3);
    Rational u = rat(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    x(0) = u * ((rng() & 1) ? 1 : -1);
    x(1) = u * ((rng() & 1) ? 1 : -1);
    x(2) = rat(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    for (const auto& a : f) {
      RatVector y = a * x;
      // Group 1 (coordinates 0,1) keeps equal norms; the total norm is kept.
      CHECK(y(0) * y(0) == y(1) * y(1));
      CHECK(y.dot(y) == x.dot(x));
    }
  }
}

TEST_CASE("tensor products multiply spectra") {
  CHECK(rat_eq(kron(rat_identity(2), rat_identity(2)), rat_identity(4)));
  std::mt19937_64 rng(17);
  for (int t = 0; t < 6; ++t) {
    RatMatrix a = testing::random_rational_matrix(2, rng);
    RatMatrix b = testing::random_rational_matrix(2, rng);
    const double ra = spectral_radius(a, 1e-9).value;
    const double rb = spectral_radius(b, 1e-9).value;
    const double rk = spectral_radius(kron(a, b), 1e-9).value;
    CHECK(rk == doctest::Approx(ra * rb).epsilon(1e-8));
  }
}

TEST_CASE("euler digit matrices match the closed form") {
  MatrixFamily d3 = euler_digit_matrices(3);
  CHECK(rat_eq(d3[0], rat_mat({{"1", "0"}, {"1", "1"}})));
  CHECK(rat_eq(d3[1], rat_mat({{"1", "1"}, {"0", "1"}})));

  MatrixFamily d5 = euler_digit_matrices(5);
  CHECK(rat_eq(d5[0], rat_mat({{"1", "0", "0", "0"},
                               {"1", "1", "1", "0"},
                               {"1", "1", "1", "1"},
                               {"0", "0", "1", "1"}})));
  CHECK(rat_eq(d5[1], rat_mat({{"1", "1", "0", "0"},
                               {"1", "1", "1", "1"},
                               {"0", "1", "1", "1"},
                               {"0", "0", "0", "1"}})));

  // Column sums of (D_0 + D_1)/2 equal r/2 for every r.
  for (int r = 3; r <= 12; ++r) {
    MatrixFamily d = euler_digit_matrices(r);
    for (Index j = 0; j < r - 1; ++j) {
      Rational sum(0);
      for (Index i = 0; i < r - 1; ++i) sum += d[0](i, j) + d[1](i, j);
      CHECK(sum == rat(r));
    }
  }

  CHECK(rat_eq(gen_euler(5)[0], (d5[0] * rat(2, 5)).eval()));
}

TEST_CASE("generated corpus families pass the depth-8 oracle") {
  std::mt19937_64 seeds(23);
  std::vector<MatrixFamily> corpus;
  corpus.push_back(gen_one_n(2, 2, seeds()));
  corpus.push_back(gen_one_n(3, 2, seeds()));
  {
    std::mt19937_64 rng(seeds());
    MatrixFamily inner{random_rational_orthogonal(2, rng), random_rational_orthogonal(2, rng)};
    corpus.push_back(gen_kn(inner, 2, 2, seeds()));
  }
  corpus.push_back(gen_torsion({1, 1}, {2, 1}, 2, seeds()));
  {
    std::mt19937_64 rng(seeds());
    MatrixFamily f1{random_rational_orthogonal(2, rng)};
    corpus.push_back(gen_tensor_product(f1, gen_one_n(2, 2, seeds()), 2, seeds()));
  }
  for (const auto& family : corpus) {
    CsrVerdict oracle = brute_force_csr(family, 8, 1e-9);
    CHECK(oracle.answer == Answer::Yes);
    CsrVerdict t_oracle = brute_force_csr(transposed(family), 8, 1e-9);
    CHECK(t_oracle.answer == Answer::Yes);
  }
}

TEST_CASE("family specs are reproducible") {
  FamilySpec spec;
  spec.kind = FamilyKind::one_n;
  spec.n = 3;
  spec.count = 4;
  spec.seed = 99;
  MatrixFamily a = generate(spec);
  MatrixFamily b = generate(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(rat_eq(a[i], b[i]));

  FamilySpec tr;
  tr.kind = FamilyKind::transpose_of;
  tr.base = std::make_shared<FamilySpec>(spec);
  MatrixFamily c = generate(tr);
  CHECK(rat_eq(c[0], a[0].transpose().eval()));
}

TEST_CASE("perturbation changes exactly one entry") {
  MatrixFamily f = gen_euler(4);
  MatrixFamily g = perturb_family(f, 5);
  int changed = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (Index r = 0; r < 3; ++r)
      for (Index c = 0; c < 3; ++c)
        if (f[i](r, c) != g[i](r, c)) ++changed;
  }
  CHECK(changed == 1);
}
