#include "csrkit/radii.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <thread>
#include <unordered_map>

#include "csrkit/exact.hpp"
#include "csrkit/lifting.hpp"

namespace csrkit {

namespace {

// Deterministic parallel map: out[i] = f(i), order independent of scheduling.
template <typename F>
std::vector<double> parallel_map(std::size_t n, F&& f) {
  std::vector<double> out(n);
  const int threads = std::min<int>(thread_cap(), static_cast<int>(n));
  if (threads <= 1 || n < 32) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::future<void>> futures;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    futures.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
    }));
  }
  for (auto& fu : futures) fu.get();
  return out;
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

// Ellipsoidal operator norm ||C A C^-1||_2 with H = C^T C from the PSD fixed
// matrix of the lifted average, when one strictly positive definite exists.
struct EllipsoidNorm {
  bool available = false;
  Eigen::MatrixXd c;      // upper Cholesky factor
  Eigen::MatrixXd c_inv;
};

EllipsoidNorm ellipsoid_norm_from_rho2(const MatrixFamily& family) {
  EllipsoidNorm en;
  try {
    RatMatrix avg = lifted_average(family);
    if (!has_eigenvalue_one(avg)) return en;
    LiftedOperator op{family_dim(family), avg};
    SymVec y = perron_in_cone(op);
    RatMatrix h = sym_unvectorize(y);
    if (!is_pd(h)) {
      // Try to move into the interior along the rest of the eigenspace.
      RatMatrix shifted = avg;
      for (Index i = 0; i < shifted.rows(); ++i) shifted(i, i) -= 1;
      auto kernel = kernel_basis(shifted);
      auto pd = find_psd_in_subspace(kernel.vectors, nullptr, op.base_dim, true);
      if (!pd) return en;
      h = sym_unvectorize(SymVec{op.base_dim, *pd});
    }
    Eigen::LLT<Eigen::MatrixXd> llt(to_double(h));
    if (llt.info() != Eigen::Success) return en;
    en.c = llt.matrixU();
    en.c_inv = en.c.inverse();
    en.available = true;
  } catch (const PerronSearchError&) {
  }
  return en;
}

}  // namespace

int thread_cap() {
  const char* env = std::getenv("CSRKIT_THREADS");
  if (!env) return 1;
  int v = std::atoi(env);
  if (v < 1) return 1;
  return std::min(v, static_cast<int>(std::thread::hardware_concurrency() > 0
                                          ? std::thread::hardware_concurrency()
                                          : 1u));
}

ProductLevels enumerate_products(const MatrixFamily& family, int depth, std::size_t cap) {
  family_dim(family);
  if (depth < 1) throw std::invalid_argument("enumerate_products: depth must be >= 1");
  ProductLevels out;
  std::size_t total = 0;
  std::vector<ProductLevels::Entry> prev;
  for (int k = 1; k <= depth; ++k) {
    std::vector<ProductLevels::Entry> level;
    std::unordered_map<std::string, std::size_t> index;
    auto push = [&](RatMatrix m, unsigned long mult) {
      std::string key = matrix_key(m);
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(std::move(key), level.size());
        level.push_back({std::move(m), mult});
        if (++total > cap) throw CapExceededError(cap);
      } else {
        level[it->second].multiplicity += mult;
      }
    };
    if (k == 1) {
      for (const auto& a : family) push(a, 1);
    } else {
      for (const auto& e : prev) {
        for (const auto& a : family) push((a * e.value).eval(), e.multiplicity);
      }
    }
    prev = level;
    out.levels.push_back(std::move(level));
  }
  return out;
}

RhoEstimate rho_2(const MatrixFamily& family, double tol) {
  RatMatrix avg = lifted_average(family);
  SpectralResult r = spectral_radius(avg, tol);
  RhoEstimate e;
  e.value = std::sqrt(std::max(0.0, r.value));
  e.error_bound = e.value > 1e-12 ? r.error_bound / (2 * e.value) : std::sqrt(r.error_bound);
  e.error_bound += 4e-16 * (1 + e.value);
  return e;
}

RhoEstimate rho_4(const MatrixFamily& family, double tol) {
  const Index d = family_dim(family);
  const Index dd = sym_dim(d);
  RatMatrix acc = rat_zero(sym_dim(dd), sym_dim(dd));
  for (const auto& a : family) acc += tensor_fourth(a).matrix;
  const Rational inv_m(1, static_cast<unsigned long>(family.size()));
  RatMatrix avg = (acc * inv_m).eval();
  SpectralResult r = spectral_radius(avg, tol);
  RhoEstimate e;
  e.value = std::pow(std::max(0.0, r.value), 0.25);
  const double denom = 4 * std::pow(std::max(e.value, 1e-12), 3.0);
  e.error_bound = r.error_bound / denom + 4e-16 * (1 + e.value);
  return e;
}

JsrBounds jsr_bounds(const MatrixFamily& family, int depth, double tol,
                     const RadiiOptions& opts) {
  (void)tol;
  if (depth < 1) throw std::invalid_argument("jsr_bounds: depth must be >= 1");
  ProductLevels products = enumerate_products(family, depth, opts.product_cap);
  EllipsoidNorm en = ellipsoid_norm_from_rho2(family);

  JsrBounds b;
  b.norm_used = en.available ? UpperNorm::ellipsoid : UpperNorm::spectral;
  b.upper = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= depth; ++k) {
    const auto& level = products.levels[static_cast<std::size_t>(k - 1)];
    std::vector<double> rho = parallel_map(level.size(), [&](std::size_t i) {
      return spectral_radius_numeric(to_double(level[i].value));
    });
    std::vector<double> nrm = parallel_map(level.size(), [&](std::size_t i) {
      Eigen::MatrixXd m = to_double(level[i].value);
      if (en.available) m = en.c * m * en.c_inv;
      return spectral_norm(m);
    });
    double level_max_norm = 0;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const double lo = std::pow(rho[i], 1.0 / k);
      if (lo > b.lower) {
        b.lower = lo;
        b.lower_witness = level[i].value;
        b.lower_witness_length = k;
      }
      level_max_norm = std::max(level_max_norm, nrm[i]);
    }
    b.upper = std::min(b.upper, std::pow(level_max_norm, 1.0 / k));
  }
  // Norm bounds can dip below the true value only through rounding; keep the
  // sandwich ordered.
  b.upper = std::max(b.upper, b.lower);
  return b;
}

LsrBounds lsr_bounds(const MatrixFamily& family, int depth, double tol,
                     const RadiiOptions& opts) {
  (void)tol;
  if (depth < 1) throw std::invalid_argument("lsr_bounds: depth must be >= 1");
  ProductLevels products = enumerate_products(family, depth, opts.product_cap);

  LsrBounds b;
  b.upper = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= depth; ++k) {
    const auto& level = products.levels[static_cast<std::size_t>(k - 1)];
    std::vector<double> rho = parallel_map(level.size(), [&](std::size_t i) {
      return spectral_radius_numeric(to_double(level[i].value));
    });
    for (std::size_t i = 0; i < level.size(); ++i) {
      const double up = std::pow(rho[i], 1.0 / k);
      if (up < b.upper) {
        b.upper = up;
        b.upper_witness = level[i].value;
        b.upper_witness_length = k;
      }
    }
  }
  const auto& last = products.levels.back();
  std::vector<double> smin = parallel_map(last.size(), [&](std::size_t i) {
    return smallest_singular_value(to_double(last[i].value));
  });
  double lo = std::numeric_limits<double>::infinity();
  for (double s : smin) lo = std::min(lo, s);
  b.lower = last.empty() ? 0.0 : std::pow(std::max(0.0, lo), 1.0 / depth);
  b.lower = std::min(b.lower, b.upper);
  return b;
}

double p_radius_estimate(const MatrixFamily& family, double p, int length, double tol,
                         const RadiiOptions& opts) {
  (void)tol;
  if (length < 1) throw std::invalid_argument("p_radius_estimate: length must be >= 1");
  ProductLevels products = enumerate_products(family, length, opts.product_cap);
  const auto& level = products.levels.back();
  const double m = static_cast<double>(family.size());

  std::vector<double> norms = parallel_map(level.size(), [&](std::size_t i) {
    return spectral_norm(to_double(level[i].value));
  });

  const double log_total = length * std::log(m);  // log of m^k
  if (p == 0.0) {
    // Geometric mean of norms, then the 1/k-th power.
    double acc = 0;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (norms[i] <= 0) return 0.0;
      acc += static_cast<double>(level[i].multiplicity) * std::log(norms[i]);
    }
    return std::exp(acc / std::exp(log_total) / length);
  }

  // L_p mean in the log domain: (1/m^k sum n_i^p)^(1/(p k)).
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (norms[i] <= 0) {
      if (p < 0) return 0.0;
      continue;
    }
    max_log = std::max(max_log, p * std::log(norms[i]));
  }
  if (max_log == -std::numeric_limits<double>::infinity()) return 0.0;
  double acc = 0;
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (norms[i] <= 0) continue;
    acc += static_cast<double>(level[i].multiplicity) *
           std::exp(p * std::log(norms[i]) - max_log);
  }
  const double log_mean = max_log + std::log(acc) - log_total;
  return std::exp(log_mean / (p * length));
}

RadiiReport radii_report(const MatrixFamily& family, int depth, double tol,
                         const RadiiOptions& opts) {
  RadiiReport r;
  r.depth = depth;
  r.rho2 = rho_2(family, tol);
  r.rho4 = rho_4(family, tol);
  JsrBounds j = jsr_bounds(family, depth, tol, opts);
  LsrBounds l = lsr_bounds(family, depth, tol, opts);
  r.jsr_lower = j.lower;
  r.jsr_upper = j.upper;
  r.lsr_lower = l.lower;
  r.lsr_upper = l.upper;
  r.norm_used = j.norm_used;
  return r;
}

}  // namespace csrkit
