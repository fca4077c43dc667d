#include "csrkit/generators.hpp"

#include <stdexcept>

#include "csrkit/exact.hpp"

namespace csrkit {

namespace {

struct PythTriple {
  long a, b, c;
};

constexpr PythTriple kTriples[] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}, {20, 21, 29}};

RatMatrix plane_rotation(Index d, Index i, Index j, const Rational& c, const Rational& s) {
  RatMatrix g = rat_identity(d);
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = -s;
  g(j, i) = s;
  return g;
}

Index pick_index(std::mt19937_64& rng, Index n) {
  return static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
}

}  // namespace

RatMatrix random_rational_orthogonal(Index d, std::mt19937_64& rng) {
  // Signed permutation base.
  std::vector<Index> perm(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (Index i = d - 1; i > 0; --i) {
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(pick_index(rng, i + 1))]);
  }
  RatMatrix m = rat_zero(d, d);
  for (Index i = 0; i < d; ++i) {
    m(perm[static_cast<std::size_t>(i)], i) = (rng() & 1) ? 1 : -1;
  }
  if (d < 2) return m;
  const int rotations = static_cast<int>(rng() % 3);
  for (int t = 0; t < rotations; ++t) {
    Index i = pick_index(rng, d);
    Index j = pick_index(rng, d);
    if (i == j) continue;
    const PythTriple& tr = kTriples[rng() % (sizeof(kTriples) / sizeof(kTriples[0]))];
    m = (m * plane_rotation(d, std::min(i, j), std::max(i, j), rat(tr.a, tr.c), rat(tr.b, tr.c)))
            .eval();
  }
  return m;
}

RatMatrix random_unimodular(Index d, std::mt19937_64& rng, int steps) {
  RatMatrix m = rat_identity(d);
  for (int t = 0; t < steps; ++t) {
    Index i = pick_index(rng, d);
    Index j = pick_index(rng, d);
    if (i == j) continue;
    RatMatrix e = rat_identity(d);
    e(i, j) = rat(static_cast<long>(rng() % 3) - 1);
    if (e(i, j) == 0) e(i, j) = 1;
    m = (m * e).eval();
  }
  return m;
}

MatrixFamily gen_one_n(int n, int count, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_one_n: n must be >= 2");
  std::mt19937_64 rng(seed);
  MatrixFamily family;
  for (int c = 0; c < count; ++c) {
    RatMatrix m = rat_zero(n, n);
    for (Index i = 0; i < n; ++i) {
      m(i, pick_index(rng, n)) = (rng() & 1) ? 1 : -1;
    }
    family.push_back(std::move(m));
  }
  return family;
}

MatrixFamily gen_kn(const MatrixFamily& inner, int n, int count, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_kn: n must be >= 2");
  const Index k = family_dim(inner);
  std::mt19937_64 rng(seed);
  MatrixFamily family;
  for (int c = 0; c < count; ++c) {
    RatMatrix m = rat_zero(k * n, k * n);
    for (Index br = 0; br < n; ++br) {
      const Index bc = pick_index(rng, n);
      RatMatrix block = inner[static_cast<std::size_t>(pick_index(rng, static_cast<Index>(inner.size())))];
      if (rng() & 1) {
        block = (block *
                 inner[static_cast<std::size_t>(pick_index(rng, static_cast<Index>(inner.size())))])
                    .eval();
      }
      m.block(br * k, bc * k, k, k) = block;
    }
    family.push_back(std::move(m));
  }
  return family;
}

MatrixFamily gen_torsion(const std::vector<int>& k_vec, const std::vector<int>& n_vec, int count,
                         std::uint64_t seed) {
  if (k_vec.size() != n_vec.size() || k_vec.size() < 1) {
    throw std::invalid_argument("gen_torsion: k and n vectors must have equal nonzero length");
  }
  bool some_n_ge2 = false;
  Index d = 0;
  for (std::size_t i = 0; i < k_vec.size(); ++i) {
    if (k_vec[i] < 1 || n_vec[i] < 1) throw std::invalid_argument("gen_torsion: entries must be >= 1");
    if (n_vec[i] >= 2) some_n_ge2 = true;
    d += static_cast<Index>(k_vec[i]) * n_vec[i];
  }
  if (!some_n_ge2) throw std::invalid_argument("gen_torsion: some n_j must be >= 2");

  std::mt19937_64 rng(seed);
  MatrixFamily family;
  for (int t = 0; t < count; ++t) {
    // C: block diagonal; group i keeps one nonzero block column h_i whose
    // blocks are orthogonal. V: basis of the compatibility subspace L.
    RatMatrix c_mat = rat_zero(d, d);
    Index total_k = 0;
    for (int ki : k_vec) total_k += ki;
    RatMatrix v = rat_zero(d, total_k);
    Index offset = 0, col_offset = 0;
    std::vector<Rational> weights;
    for (std::size_t i = 0; i < k_vec.size(); ++i) {
      const Index ki = k_vec[i], ni = n_vec[i];
      const Index hi = pick_index(rng, ni);
      for (Index j = 0; j < ni; ++j) {
        RatMatrix q = random_rational_orthogonal(ki, rng);
        c_mat.block(offset + j * ki, offset + hi * ki, ki, ki) = q;
        v.block(offset + j * ki, col_offset, ki, ki) = q;
      }
      for (Index tcol = 0; tcol < ki; ++tcol) weights.push_back(Rational(static_cast<long>(ni)));
      offset += ki * ni;
      col_offset += ki;
    }
    // B = V O (V^T V)^-1 V^T + (I - V (V^T V)^-1 V^T), O block-diagonal
    // orthogonal per group; exact because V^T V = diag(n_i).
    RatMatrix o = rat_zero(total_k, total_k);
    Index go = 0;
    for (std::size_t i = 0; i < k_vec.size(); ++i) {
      o.block(go, go, k_vec[i], k_vec[i]) = random_rational_orthogonal(k_vec[i], rng);
      go += k_vec[i];
    }
    RatMatrix vtv_inv = rat_zero(total_k, total_k);
    for (Index i = 0; i < total_k; ++i) vtv_inv(i, i) = 1 / weights[static_cast<std::size_t>(i)];
    RatMatrix proj = v * vtv_inv * v.transpose();
    RatMatrix b = v * o * vtv_inv * v.transpose() + rat_identity(d) - proj;
    family.push_back((b * c_mat).eval());
  }
  return family;
}

MatrixFamily gen_tensor_product(const MatrixFamily& f1, const MatrixFamily& f2, int count,
                                std::uint64_t seed) {
  family_dim(f1);
  family_dim(f2);
  std::mt19937_64 rng(seed);
  MatrixFamily family;
  for (int c = 0; c < count; ++c) {
    const RatMatrix& a = f1[static_cast<std::size_t>(pick_index(rng, static_cast<Index>(f1.size())))];
    const RatMatrix& b = f2[static_cast<std::size_t>(pick_index(rng, static_cast<Index>(f2.size())))];
    family.push_back(kron(a, b));
  }
  return family;
}

MatrixFamily euler_digit_matrices(int r) {
  if (r < 3) throw std::invalid_argument("euler matrices need r >= 3");
  const Index d = r - 1;
  MatrixFamily out;
  for (int s = 0; s <= 1; ++s) {
    RatMatrix m = rat_zero(d, d);
    for (Index i = 1; i <= d; ++i) {
      for (Index j = 1; j <= d; ++j) {
        const Index t = 2 * i - j;
        if (1 - s <= t && t <= r - s) m(i - 1, j - 1) = 1;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

MatrixFamily gen_euler(int r) {
  MatrixFamily d = euler_digit_matrices(r);
  return scaled(d, rat(2, r));
}

MatrixFamily perturb_family(const MatrixFamily& family, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MatrixFamily out = family;
  const Index d = family_dim(family);
  RatMatrix& target = out[static_cast<std::size_t>(pick_index(rng, static_cast<Index>(out.size())))];
  const Index i = pick_index(rng, d), j = pick_index(rng, d);
  static const long dens[] = {4, 8, 16};
  Rational delta = rat((rng() & 1) ? 1 : -1, dens[rng() % 3]);
  target(i, j) += delta;
  target(i, j).canonicalize();
  return out;
}

MatrixFamily generate(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::orthogonal_subgroup: {
      std::mt19937_64 rng(spec.seed);
      MatrixFamily f;
      for (int c = 0; c < spec.count; ++c) f.push_back(random_rational_orthogonal(spec.n, rng));
      return f;
    }
    case FamilyKind::one_n:
      return gen_one_n(spec.n, spec.count, spec.seed);
    case FamilyKind::kn: {
      std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
      MatrixFamily inner;
      for (int c = 0; c < 2; ++c) inner.push_back(random_rational_orthogonal(spec.k, rng));
      return gen_kn(inner, spec.n, spec.count, spec.seed);
    }
    case FamilyKind::torsion:
      return gen_torsion(spec.k_vec, spec.n_vec, spec.count, spec.seed);
    case FamilyKind::tensor_product: {
      std::mt19937_64 rng(spec.seed ^ 0x51f15ead51f15eadULL);
      MatrixFamily f1, f2;
      for (int c = 0; c < 2; ++c) f1.push_back(random_rational_orthogonal(spec.k, rng));
      f2 = gen_one_n(spec.n, 2, spec.seed + 1);
      return gen_tensor_product(f1, f2, spec.count, spec.seed);
    }
    case FamilyKind::transpose_of: {
      if (!spec.base) throw std::invalid_argument("transpose_of requires a base spec");
      return transposed(generate(*spec.base));
    }
    case FamilyKind::euler:
      return gen_euler(spec.r);
    case FamilyKind::jordan_counterexample:
      return {rat_mat({{"1", "1"}, {"0", "1"}}), rat_mat({{"1", "0"}, {"1", "1"}})};
    case FamilyKind::conjugated: {
      if (!spec.base) throw std::invalid_argument("conjugated requires a base spec");
      MatrixFamily base = generate(*spec.base);
      std::mt19937_64 rng(spec.seed ^ 0xabcdef12345ULL);
      RatMatrix t = random_unimodular(family_dim(base), rng);
      RatMatrix tinv = inverse(t);
      MatrixFamily out;
      for (const auto& a : base) out.push_back((tinv * a * t).eval());
      return out;
    }
  }
  throw std::invalid_argument("unknown family kind");
}

}  // namespace csrkit
