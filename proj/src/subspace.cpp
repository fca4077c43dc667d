#include "csrkit/subspace.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "csrkit/spectral.hpp"

namespace csrkit {

namespace {

// Extends the columns of `vectors` to a full basis of R^d with standard basis
// vectors; returns the invertible matrix whose first columns are `vectors`.
RatMatrix extend_to_basis(Index d, const std::vector<RatVector>& vectors) {
  SpanBuilder sb(d);
  std::vector<RatVector> cols;
  for (const auto& v : vectors) {
    if (!sb.add(v)) throw std::invalid_argument("extend_to_basis: dependent vectors");
    cols.push_back(v);
  }
  for (Index j = 0; j < d && static_cast<Index>(cols.size()) < d; ++j) {
    RatVector e = RatVector::Constant(d, Rational(0));
    e(j) = 1;
    if (sb.add(e)) cols.push_back(e);
  }
  RatMatrix t(d, d);
  for (Index j = 0; j < d; ++j) t.col(j) = cols[static_cast<std::size_t>(j)];
  return t;
}

std::vector<RatVector> standard_seeds(Index d) {
  std::vector<RatVector> seeds;
  for (Index j = 0; j < d; ++j) {
    RatVector e = RatVector::Constant(d, Rational(0));
    e(j) = 1;
    seeds.push_back(e);
  }
  return seeds;
}

std::optional<SubspaceBasis> proper_closure_search(const MatrixFamily& family) {
  const Index d = family_dim(family);
  std::optional<SubspaceBasis> best;
  auto consider = [&](const RatVector& seed) {
    SubspaceBasis s = invariant_closure(family, {seed});
    if (s.dim() == 0 || s.dim() >= d) return;
    if (!best || s.dim() < best->dim()) best = std::move(s);
  };
  for (const auto& e : standard_seeds(d)) consider(e);
  for (const auto& a : family) {
    for (const Rational& lam : rational_eigenvalues(a)) {
      RatMatrix shifted = a;
      for (Index i = 0; i < d; ++i) shifted(i, i) -= lam;
      for (const auto& v : kernel_basis(shifted).vectors) consider(v);
    }
  }
  return best;
}

SubspaceBasis orthogonal_complement(const SubspaceBasis& s) {
  RatMatrix rows(s.dim(), s.ambient_dim);
  for (Index i = 0; i < s.dim(); ++i) rows.row(i) = s.vectors[static_cast<std::size_t>(i)].transpose();
  return kernel_basis(rows);
}

// Tarjan strongly connected components of the union digraph, edge u -> v when
// some generator has a nonzero (v, u) entry. Returns component ids.
struct SccResult {
  std::vector<int> comp;
  int count = 0;
  std::vector<std::vector<int>> comp_edges;  // condensation adjacency
};

SccResult scc_of_union_digraph(const MatrixFamily& family) {
  const Index d = family_dim(family);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(d));
  for (Index u = 0; u < d; ++u) {
    for (Index v = 0; v < d; ++v) {
      bool edge = false;
      for (const auto& a : family) {
        if (a(v, u) != 0) {
          edge = true;
          break;
        }
      }
      if (edge) adj[static_cast<std::size_t>(u)].push_back(static_cast<int>(v));
    }
  }
  SccResult res;
  res.comp.assign(static_cast<std::size_t>(d), -1);
  std::vector<int> low(static_cast<std::size_t>(d)), idx(static_cast<std::size_t>(d), -1);
  std::vector<int> stack;
  std::vector<bool> on_stack(static_cast<std::size_t>(d), false);
  int counter = 0;
  // Iterative Tarjan.
  struct Frame {
    int v;
    std::size_t child;
  };
  for (int root = 0; root < d; ++root) {
    if (idx[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& edges = adj[static_cast<std::size_t>(f.v)];
      if (f.child < edges.size()) {
        int w = edges[f.child++];
        if (idx[static_cast<std::size_t>(w)] == -1) {
          idx[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], idx[static_cast<std::size_t>(w)]);
        }
      } else {
        if (low[static_cast<std::size_t>(f.v)] == idx[static_cast<std::size_t>(f.v)]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            res.comp[static_cast<std::size_t>(w)] = res.count;
            if (w == f.v) break;
          }
          ++res.count;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().v;
          low[static_cast<std::size_t>(parent)] =
              std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
        }
      }
    }
  }
  res.comp_edges.assign(static_cast<std::size_t>(res.count), {});
  for (Index u = 0; u < d; ++u) {
    for (int v : adj[static_cast<std::size_t>(u)]) {
      int cu = res.comp[static_cast<std::size_t>(u)];
      int cv = res.comp[static_cast<std::size_t>(v)];
      if (cu != cv) res.comp_edges[static_cast<std::size_t>(cu)].push_back(cv);
    }
  }
  return res;
}

BlockFactorization factorize_nonnegative(const MatrixFamily& family) {
  const Index d = family_dim(family);
  SccResult scc = scc_of_union_digraph(family);

  // Topological order of the condensation; edges must run from later blocks
  // to earlier ones in the final layout, so the final order is the reverse.
  std::vector<int> indeg(static_cast<std::size_t>(scc.count), 0);
  for (const auto& edges : scc.comp_edges)
    for (int v : edges) ++indeg[static_cast<std::size_t>(v)];
  std::deque<int> queue;
  for (int c = 0; c < scc.count; ++c)
    if (indeg[static_cast<std::size_t>(c)] == 0) queue.push_back(c);
  std::vector<int> topo;
  while (!queue.empty()) {
    // Largest id first: after the final reversal, unconstrained components
    // come out in ascending Tarjan order, which tracks the vertex order.
    auto it = std::max_element(queue.begin(), queue.end());
    int c = *it;
    queue.erase(it);
    topo.push_back(c);
    for (int v : scc.comp_edges[static_cast<std::size_t>(c)]) {
      if (--indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    }
  }
  std::reverse(topo.begin(), topo.end());

  std::vector<Index> order;  // new basis = old coordinates in this order
  std::vector<Index> sizes;
  for (int c : topo) {
    Index size = 0;
    for (Index v = 0; v < d; ++v) {
      if (scc.comp[static_cast<std::size_t>(v)] == c) {
        order.push_back(v);
        ++size;
      }
    }
    sizes.push_back(size);
  }

  BlockFactorization f;
  f.permutation_only = true;
  f.block_sizes = sizes;
  f.change_of_basis = rat_zero(d, d);
  for (Index k = 0; k < d; ++k) f.change_of_basis(order[static_cast<std::size_t>(k)], k) = 1;

  MatrixFamily conj = f.conjugated(family);
  Index offset = 0;
  for (Index size : sizes) {
    MatrixFamily block;
    for (const auto& a : conj) block.push_back(a.block(offset, offset, size, size));
    f.diagonal_blocks.push_back(std::move(block));
    offset += size;
  }
  return f;
}

// Recursive flag refinement: T maps new coordinates to old; the first k new
// coordinates span an invariant subspace.
void factorize_general(const MatrixFamily& family, RatMatrix& t, std::vector<Index>& sizes) {
  const Index d = family_dim(family);
  auto w = common_invariant_subspace(family);
  if (!w) {
    t = rat_identity(d);
    sizes = {d};
    return;
  }
  const Index k = w->dim();
  RatMatrix t1 = extend_to_basis(d, w->vectors);
  RatMatrix t1_inv = inverse(t1);

  MatrixFamily restriction, quotient;
  for (const auto& a : family) {
    RatMatrix c = t1_inv * a * t1;
    restriction.push_back(c.block(0, 0, k, k));
    quotient.push_back(c.block(k, k, d - k, d - k));
  }
  RatMatrix tr, tq;
  std::vector<Index> sr, sq;
  factorize_general(restriction, tr, sr);
  factorize_general(quotient, tq, sq);

  RatMatrix block = rat_zero(d, d);
  block.block(0, 0, k, k) = tr;
  block.block(k, k, d - k, d - k) = tq;
  t = t1 * block;
  sizes = sr;
  sizes.insert(sizes.end(), sq.begin(), sq.end());
}

}  // namespace

MatrixFamily BlockFactorization::conjugated(const MatrixFamily& family) const {
  RatMatrix inv = inverse(change_of_basis);
  MatrixFamily out;
  out.reserve(family.size());
  for (const auto& a : family) out.push_back(inv * a * change_of_basis);
  return out;
}

SubspaceBasis invariant_closure(const MatrixFamily& family,
                                const std::vector<RatVector>& seeds) {
  const Index d = family_dim(family);
  SpanBuilder sb(d);
  std::deque<RatVector> work;
  for (const auto& s : seeds) {
    if (s.size() != d) throw std::invalid_argument("invariant_closure: wrong seed length");
    if (sb.add(s)) work.push_back(s);
  }
  while (!work.empty()) {
    RatVector v = std::move(work.front());
    work.pop_front();
    for (const auto& a : family) {
      RatVector w = a * v;
      if (sb.add(w)) work.push_back(std::move(w));
    }
  }
  SubspaceBasis out;
  out.ambient_dim = d;
  out.vectors = sb.inserted();
  return out;
}

std::vector<Rational> rational_eigenvalues(const RatMatrix& m) {
  const Index d = m.rows();
  std::vector<Rational> found;
  auto try_candidate = [&](const Rational& lam) {
    for (const auto& f : found)
      if (f == lam) return;
    RatMatrix shifted = m;
    for (Index i = 0; i < d; ++i) shifted(i, i) -= lam;
    if (det(shifted) == 0) found.push_back(lam);
  };
  try_candidate(Rational(0));
  try_candidate(Rational(1));
  try_candidate(Rational(-1));

  Eigen::MatrixXd md = to_double(m);
  double scale = std::max(1.0, md.cwiseAbs().maxCoeff());
  Eigen::EigenSolver<Eigen::MatrixXd> solver(md, false);
  if (solver.info() != Eigen::Success) return found;
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto ev = solver.eigenvalues()(i);
    if (std::abs(ev.imag()) > 1e-8 * scale) continue;
    Rational lam;
    if (rationalize(ev.real(), 1000000L, 1e-7 * scale, lam)) try_candidate(lam);
  }
  return found;
}

std::optional<SubspaceBasis> common_invariant_subspace(const MatrixFamily& family) {
  const Index d = family_dim(family);
  if (d <= 1) return std::nullopt;
  if (auto s = proper_closure_search(family)) return s;
  if (auto s = proper_closure_search(transposed(family))) {
    // W invariant for all transposes <=> W-perp invariant for the family.
    return orthogonal_complement(*s);
  }
  return std::nullopt;
}

bool is_irreducible(const MatrixFamily& family) {
  return !common_invariant_subspace(family).has_value();
}

bool is_positively_irreducible(const MatrixFamily& family) {
  if (!is_nonnegative(family)) {
    throw std::invalid_argument("is_positively_irreducible requires nonnegative entries");
  }
  const Index d = family_dim(family);
  if (d == 1) return true;
  return scc_of_union_digraph(family).count == 1;
}

BlockFactorization block_factorize(const MatrixFamily& family) {
  family_dim(family);
  if (is_nonnegative(family)) return factorize_nonnegative(family);

  BlockFactorization f;
  f.permutation_only = false;
  std::vector<Index> sizes;
  RatMatrix t;
  factorize_general(family, t, sizes);
  f.change_of_basis = std::move(t);
  f.block_sizes = std::move(sizes);

  MatrixFamily conj = f.conjugated(family);
  Index offset = 0;
  for (Index size : f.block_sizes) {
    MatrixFamily block;
    for (const auto& a : conj) block.push_back(a.block(offset, offset, size, size));
    f.diagonal_blocks.push_back(std::move(block));
    offset += size;
  }
  return f;
}

}  // namespace csrkit
