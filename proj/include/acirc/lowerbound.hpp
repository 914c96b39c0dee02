#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acirc/circuit.hpp"
#include "acirc/families.hpp"
#include "acirc/oracle.hpp"
#include "acirc/properties.hpp"

namespace acirc {

// ---------------------------------------------------------------------------
// Partitions of a function's domain

/// (X, Y) as positions in a table domain of size n, each list ascending.
struct Partition {
  std::size_t n = 0;
  std::vector<std::size_t> x;
  std::vector<std::size_t> y;

  static Partition from_mask(std::size_t n, std::uint64_t x_mask) {
    Partition p{n, {}, {}};
    for (std::size_t k = 0; k < n; ++k) ((x_mask >> k) & 1U ? p.x : p.y).push_back(k);
    return p;
  }
  std::uint64_t x_mask() const {
    std::uint64_t m = 0;
    for (auto k : x) m |= std::uint64_t{1} << k;
    return m;
  }
  /// n/3 <= |X|, |Y| <= 2n/3.
  bool balanced() const {
    auto ok = [&](std::size_t s) { return 3 * s >= n && 3 * s <= 2 * n; };
    return ok(x.size()) && ok(y.size());
  }
  friend bool operator==(const Partition&, const Partition&) = default;
};

inline void check_partition(const Partition& p) {
  std::vector<int> seen(p.n, 0);
  for (const auto* side : {&p.x, &p.y})
    for (auto k : *side) {
      if (k >= p.n) throw Error(Errc::BadPartition, "position " + std::to_string(k) + " outside the domain");
      if (seen[k]++) throw Error(Errc::BadPartition, "position " + std::to_string(k) + " listed twice");
    }
  if (p.x.size() + p.y.size() != p.n) throw Error(Errc::BadPartition, "partition does not cover the domain");
}

/// Every unordered balanced split of n positions once, with position 0 in X,
/// in increasing order of the X mask.
inline std::vector<Partition> balanced_partitions(std::size_t n, std::size_t cap = 16) {
  if (n > cap || n >= 63) throw Error(Errc::TooManyVariables, std::to_string(n) + " variables exceed the cap of " + std::to_string(cap));
  std::vector<Partition> out;
  if (n == 0) return out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 1; m < total; m += 2) {
    auto s = static_cast<std::size_t>(__builtin_popcountll(m));
    if (3 * s < n || 3 * s > 2 * n || 3 * (n - s) < n || 3 * (n - s) > 2 * n) continue;
    out.push_back(Partition::from_mask(n, m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact matrices

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rational(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (auto& row : init) {
      if (row.size() != cols) throw Error(Errc::BadArgument, "ragged matrix");
      for (long v : row) a.emplace_back(v);
    }
  }
  Rational& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

namespace detail {
using IntRow = std::vector<mpz_class>;

/// Rows scaled to primitive integer vectors with a positive leading entry;
/// zero rows dropped, duplicates removed. Row space dimension is unchanged.
inline std::vector<IntRow> primitive_rows(std::vector<IntRow> rows) {
  std::vector<IntRow> out;
  for (auto& r : rows) {
    mpz_class g = 0;
    for (auto& v : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 0) continue;
    auto lead = std::find_if(r.begin(), r.end(), [](const mpz_class& v) { return v != 0; });
    if (*lead < 0) g = -g;
    for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<IntRow> transpose(const std::vector<IntRow>& m, std::size_t cols) {
  std::vector<IntRow> t(cols, IntRow(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

/// Integer rows: each rational row multiplied by the lcm of its denominators.
inline std::vector<IntRow> integer_rows(const Matrix& m, std::vector<mpz_class>* scale = nullptr) {
  std::vector<IntRow> out(m.rows, IntRow(m.cols));
  if (scale) scale->assign(m.rows, 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols; ++j) {
      mpz_class d = m.at(i, j).denominator();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols; ++j) {
      const mpq_class& q = m.at(i, j).raw();
      out[i][j] = q.get_num() * (l / q.get_den());
    }
    if (scale) (*scale)[i] = l;
  }
  return out;
}

/// Fraction-free elimination in place; returns the rank and, for square
/// input, leaves the determinant (up to `sign`) in the last pivot.
inline std::size_t bareiss(std::vector<IntRow>& m, std::size_t cols, int* sign = nullptr) {
  const std::size_t rows = m.size();
  mpz_class prev = 1, t;
  std::size_t r = 0;
  if (sign) *sign = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(m[piv], m[r]);
      if (sign) *sign = -*sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_mul(t.get_mpz_t(), m[r][c].get_mpz_t(), m[i][j].get_mpz_t());
        mpz_submul(t.get_mpz_t(), m[i][c].get_mpz_t(), m[r][j].get_mpz_t());
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}
}  // namespace detail

/// Rank over the rationals, computed exactly.
inline std::size_t rank_exact(const Matrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  auto rows = detail::primitive_rows(detail::integer_rows(m));
  if (rows.empty()) return 0;
  auto cols = detail::primitive_rows(detail::transpose(rows, m.cols));
  std::size_t nr = cols.empty() ? 0 : cols[0].size();
  if (cols.size() > nr) {
    cols = detail::transpose(cols, nr);
    return detail::bareiss(cols, cols.empty() ? 0 : cols[0].size());
  }
  return detail::bareiss(cols, nr);
}

inline Rational determinant(const Matrix& m) {
  if (m.rows != m.cols) throw Error(Errc::BadArgument, "determinant of a non-square matrix");
  if (m.rows == 0) return Rational(1);
  std::vector<mpz_class> scale;
  auto rows = detail::integer_rows(m, &scale);
  int sign = 1;
  if (detail::bareiss(rows, m.cols, &sign) < m.rows) return Rational(0);
  mpq_class det(rows.back().back());
  for (auto& s : scale) det /= s;
  if (sign < 0) det = -det;
  return Rational(det);
}

// ---------------------------------------------------------------------------
// Value matrices

struct ValueMatrix {
  Partition partition;
  Matrix m;
};

/// Entry (r, c) is F at the assignment giving X[k] bit k of r and Y[k] bit k of c.
inline ValueMatrix value_matrix(const FunctionTable& f, const Partition& p) {
  if (p.n != f.domain.size()) throw Error(Errc::BadPartition, "partition size differs from the table domain");
  check_partition(p);
  if (p.n >= 63) throw Error(Errc::TooManyVariables, "domain too large");
  ValueMatrix vm{p, Matrix(std::size_t{1} << p.x.size(), std::size_t{1} << p.y.size())};
  for (std::size_t r = 0; r < vm.m.rows; ++r) {
    std::size_t base = 0;
    for (std::size_t k = 0; k < p.x.size(); ++k)
      if ((r >> k) & 1U) base |= std::size_t{1} << p.x[k];
    for (std::size_t c = 0; c < vm.m.cols; ++c) {
      std::size_t idx = base;
      for (std::size_t k = 0; k < p.y.size(); ++k)
        if ((c >> k) & 1U) idx |= std::size_t{1} << p.y[k];
      vm.m.at(r, c) = f.values[idx];
    }
  }
  return vm;
}

// ---------------------------------------------------------------------------
// Induced matchings of a graph across a vertex partition

/// Matched edges (u, v) with u on the X side and v on the Y side.
struct InducedMatching {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t size() const { return edges.size(); }
};

/// Throws BadMatching unless the edges are graph edges crossing from X to Y,
/// with pairwise distinct endpoints and no other graph edge among them.
inline void validate_induced_matching(const Graph& g, const Partition& p, const InducedMatching& m) {
  if (p.n != g.n) throw Error(Errc::BadMatching, "partition size differs from the vertex count");
  std::vector<int> side(g.n, -1);
  for (auto v : p.x) side[v] = 0;
  for (auto v : p.y) side[v] = 1;
  std::vector<char> used(g.n, 0);
  for (auto [u, v] : m.edges) {
    if (u >= g.n || v >= g.n || !g.has_edge(u, v)) throw Error(Errc::BadMatching, "not a graph edge");
    if (side[u] != 0 || side[v] != 1) throw Error(Errc::BadMatching, "edge does not cross from X to Y");
    if (used[u] || used[v]) throw Error(Errc::BadMatching, "endpoints are not distinct");
    used[u] = used[v] = 1;
  }
  for (auto [a, b] : g.edges) {
    if (!used[a] || !used[b]) continue;
    bool matched = std::any_of(m.edges.begin(), m.edges.end(), [&](auto e) {
      return (e.first == a && e.second == b) || (e.first == b && e.second == a);
    });
    if (!matched)
      throw Error(Errc::BadMatching, "edge " + std::to_string(a) + "-" + std::to_string(b) + " joins matched vertices");
  }
}

/// Greedy extraction: crossing edges in sorted order, keeping an edge when its
/// X endpoint is new, then when its Y endpoint is new, then when it has no
/// graph edge to the endpoints already kept.
inline InducedMatching induced_matching(const Graph& g, const Partition& p) {
  if (p.n != g.n) throw Error(Errc::BadPartition, "partition size differs from the vertex count");
  check_partition(p);
  std::vector<int> side(g.n, 0);
  for (auto v : p.y) side[v] = 1;
  std::vector<std::pair<std::size_t, std::size_t>> crossing;
  for (auto [a, b] : g.edges) {
    if (side[a] == side[b]) continue;
    crossing.push_back(side[a] == 0 ? std::make_pair(a, b) : std::make_pair(b, a));
  }
  std::sort(crossing.begin(), crossing.end());
  std::vector<std::pair<std::size_t, std::size_t>> stage1, stage2;
  std::vector<char> used(g.n, 0);
  for (auto e : crossing)
    if (!used[e.first]) used[e.first] = 1, stage1.push_back(e);
  std::fill(used.begin(), used.end(), 0);
  for (auto e : stage1)
    if (!used[e.second]) used[e.second] = 1, stage2.push_back(e);
  auto adj = g.adjacency();
  std::fill(used.begin(), used.end(), 0);
  InducedMatching m;
  for (auto [u, v] : stage2) {
    bool clash = false;
    for (auto w : adj[u]) clash = clash || (w != v && used[w]);
    for (auto w : adj[v]) clash = clash || (w != u && used[w]);
    if (clash) continue;
    used[u] = used[v] = 1;
    m.edges.emplace_back(u, v);
  }
  return m;
}

// ---------------------------------------------------------------------------
// The sub-matrix on the matched variables

/// Rows and columns restricted to assignments that zero every variable except
/// the first `prefix` matched ones; row bit t is the X end of edge t, column
/// bit t its Y end. Positions are vertex indices of the table domain.
inline Matrix mstar_submatrix(const FunctionTable& f, const Partition& p, const InducedMatching& m,
                              std::optional<std::size_t> prefix = std::nullopt) {
  std::size_t k = prefix.value_or(m.size());
  if (k > m.size()) throw Error(Errc::BadMatching, "prefix longer than the matching");
  if (p.n != f.domain.size()) throw Error(Errc::BadPartition, "partition size differs from the table domain");
  std::vector<int> side(p.n, -1);
  for (auto v : p.x) side[v] = 0;
  for (auto v : p.y) side[v] = 1;
  for (auto [u, v] : m.edges)
    if (u >= p.n || v >= p.n || side[u] != 0 || side[v] != 1)
      throw Error(Errc::BadMatching, "matching edge does not cross from X to Y");
  Matrix out(std::size_t{1} << k, std::size_t{1} << k);
  for (std::size_t r = 0; r < out.rows; ++r)
    for (std::size_t c = 0; c < out.cols; ++c) {
      std::size_t idx = 0;
      for (std::size_t t = 0; t < k; ++t) {
        if ((r >> t) & 1U) idx |= std::size_t{1} << m.edges[t].first;
        if ((c >> t) & 1U) idx |= std::size_t{1} << m.edges[t].second;
      }
      out.at(r, c) = f.values[idx];
    }
  return out;
}

struct DetRecursionStep {
  std::size_t i = 0;  // M*_i -> M*_{i+1}
  Rational det_before;
  Rational det_after;
  Rational alpha;  // 2^(degree of the X end outside its matching edge)
  Rational beta;   // same for the Y end
  bool plain_block_law = false;   // M*_{i+1} = [[M, 2M], [2M, 2M]]
  bool plain_det_law = false;     // det = (-2)^(2^i) det(M*_i)^2
  bool scaled_block_law = false;  // M*_{i+1} = [[M, 2bM], [2aM, 2abM]]
  bool scaled_det_law = false;    // det = (-2ab)^(2^i) det(M*_i)^2
};

struct DetRecursionReport {
  std::vector<DetRecursionStep> steps;
  Rational final_det;
  std::size_t final_rank = 0;
  bool plain_laws_hold() const {
    return std::all_of(steps.begin(), steps.end(), [](auto& s) { return s.plain_block_law && s.plain_det_law; });
  }
  bool scaled_laws_hold() const {
    return std::all_of(steps.begin(), steps.end(), [](auto& s) { return s.scaled_block_law && s.scaled_det_law; });
  }
};

namespace detail {
inline Rational power(Rational b, std::size_t e) {
  Rational r(1);
  for (; e; e >>= 1, b *= b)
    if (e & 1U) r *= b;
  return r;
}
}  // namespace detail

/// Checks the block structure of M*_{i+1} against M*_i and the determinant
/// recursion for every i < |m|, for the edge-product function of `g`. With
/// unmatched variables at 0, each graph edge from a matched vertex to an
/// unmatched one contributes a factor 2 when the matched vertex is 1, which
/// gives the scaled laws; the plain laws are the special case where matched
/// vertices have no such edges. Throws RecursionViolated when a scaled law
/// fails.
inline DetRecursionReport verify_det_recursion(const FunctionTable& f, const Graph& g, const Partition& p,
                                               const InducedMatching& m) {
  if (m.size() > 4) throw Error(Errc::BadArgument, "matchings of more than 4 edges make matrices beyond 16x16");
  validate_induced_matching(g, p, m);
  auto deg = g.degrees();
  DetRecursionReport rep;
  Matrix prev = mstar_submatrix(f, p, m, 0);
  Rational det_prev = determinant(prev);
  for (std::size_t i = 0; i < m.size(); ++i) {
    Matrix next = mstar_submatrix(f, p, m, i + 1);
    DetRecursionStep s;
    s.i = i;
    s.det_before = det_prev;
    s.det_after = determinant(next);
    s.alpha = detail::power(Rational(2), deg[m.edges[i].first] - 1);
    s.beta = detail::power(Rational(2), deg[m.edges[i].second] - 1);
    const std::size_t h = prev.rows;
    s.plain_block_law = s.scaled_block_law = true;
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < h; ++c) {
        const Rational& v = prev.at(r, c);
        s.plain_block_law = s.plain_block_law && next.at(r, c) == v && next.at(r, c + h) == Rational(2) * v &&
                            next.at(r + h, c) == Rational(2) * v && next.at(r + h, c + h) == Rational(2) * v;
        s.scaled_block_law = s.scaled_block_law && next.at(r, c) == v &&
                             next.at(r, c + h) == Rational(2) * s.beta * v &&
                             next.at(r + h, c) == Rational(2) * s.alpha * v &&
                             next.at(r + h, c + h) == Rational(2) * s.alpha * s.beta * v;
      }
    const std::size_t e = std::size_t{1} << i;
    s.plain_det_law = s.det_after == detail::power(Rational(-2), e) * det_prev * det_prev;
    s.scaled_det_law = s.det_after == detail::power(Rational(-2) * s.alpha * s.beta, e) * det_prev * det_prev;
    if (!s.scaled_block_law || !s.scaled_det_law)
      throw Error(Errc::RecursionViolated, "step " + std::to_string(i) + ": det " + s.det_after.str());
    rep.steps.push_back(s);
    prev = std::move(next);
    det_prev = s.det_after;
  }
  rep.final_det = det_prev;
  rep.final_rank = rank_exact(prev);
  return rep;
}

// ---------------------------------------------------------------------------
// Minimum rank over balanced partitions

struct MinRankResult {
  std::size_t rank = 0;
  Partition partition;
  std::size_t partitions_checked = 0;
};

/// Minimum value-matrix rank over all balanced partitions; ties go to the
/// first partition in enumeration order.
inline MinRankResult min_rank_over_balanced(const FunctionTable& f, std::size_t cap = 16) {
  auto parts = balanced_partitions(f.domain.size(), cap);
  if (parts.empty()) throw Error(Errc::BadPartition, "no balanced partition of " + std::to_string(f.domain.size()) + " variables");
  MinRankResult best;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::size_t r = rank_exact(value_matrix(f, parts[k]).m);
    if (k == 0 || r < best.rank) best = {r, parts[k], 0};
  }
  best.partitions_checked = parts.size();
  return best;
}

// ---------------------------------------------------------------------------
// Sums of decomposable products from smooth decomposable AC

/// f(X) * h(Y) with tables over the named variables of each side.
struct DecompProduct {
  Partition partition;  // positions in the circuit's scope order
  FunctionTable f;
  FunctionTable h;
  NodeId anchor = kNoNode;  // node of the residual circuit it was read from
};

struct ExtractionResult {
  std::vector<std::string> domain;  // var(C) in table order
  std::vector<DecompProduct> products;
  std::size_t circuit_size = 0;
  bool all_balanced = true;
  bool same_partition = true;

  /// Pointwise sum of the products over `domain`.
  std::vector<Rational> sum_table() const {
    std::vector<Rational> out(std::size_t{1} << domain.size(), Rational(0));
    for (auto& p : products)
      for (std::size_t idx = 0; idx < out.size(); ++idx) {
        std::size_t ix = 0, iy = 0;
        for (std::size_t k = 0; k < p.partition.x.size(); ++k)
          if ((idx >> p.partition.x[k]) & 1U) ix |= std::size_t{1} << k;
        for (std::size_t k = 0; k < p.partition.y.size(); ++k)
          if ((idx >> p.partition.y[k]) & 1U) iy |= std::size_t{1} << k;
        out[idx] += p.f.values[ix] * p.h.values[iy];
      }
    return out;
  }
};

namespace detail {
/// Descends from the root to the first node whose scope holds at most 2n/3
/// of the n variables, following the wider child of products.
inline NodeId find_anchor(const Circuit& c, const std::vector<VarSet>& sc, std::size_t n) {
  NodeId g = c.root();
  while (3 * sc[g].count() > 2 * n) {
    const Node& nd = c.nodes()[g];
    if (nd.is_sink()) return kNoNode;
    if (nd.kind == NodeKind::Sum) {
      g = nd.left;
    } else {
      g = sc[nd.left].count() >= sc[nd.right].count() ? nd.left : nd.right;
    }
  }
  return g;
}

/// dC/dg for every node by reverse accumulation, at one valuation.
inline std::vector<Rational> adjoints(const Circuit& c, const Evaluator& ev) {
  std::vector<Rational> adj(c.size(), Rational(0));
  adj[c.root()] = Rational(1);
  for (NodeId g = c.root() + 1; g-- > 0;) {
    const Node& n = c.nodes()[g];
    if (n.is_sink() || adj[g].is_zero()) continue;
    if (n.kind == NodeKind::Sum) {
      adj[n.left] += adj[g];
      adj[n.right] += adj[g];
    } else {
      adj[n.left] += adj[g] * ev.value(n.right);
      adj[n.right] += adj[g] * ev.value(n.left);
    }
  }
  return adj;
}
}  // namespace detail

/// Peels balanced products off a smooth decomposable AC: pick an anchor v
/// with n/3 <= |var(v)| <= 2n/3, emit C_v(X) * dC/dv(Y), replace v by 0,
/// simplify, repeat until the residual is 0. Zero products are skipped.
/// Circuits with fewer than two variables come back as a single product
/// with Y empty.
inline ExtractionResult extract_products(const Circuit& c, std::size_t cap = kDefaultCap) {
  if (c.flavor() != Flavor::AC) throw Error(Errc::FlavorMismatch, "extract_products expects an AC");
  if (!is_smooth(c).holds()) throw Error(Errc::NotSmooth, "extract_products expects a smooth circuit");
  if (!is_decomposable(c).holds()) throw Error(Errc::NotDecomposable, "extract_products expects a decomposable circuit");
  ExtractionResult res;
  res.circuit_size = c.size();
  const VarSet full = circuit_scope(c);
  res.domain = names_of(c, full);
  const std::size_t n = res.domain.size();
  detail::check_cap(n, cap);
  std::vector<VarIndex> order;
  for (auto i = full.find_first(); i != VarSet::npos; i = full.find_next(i)) order.push_back(static_cast<VarIndex>(i));

  if (n < 2) {
    DecompProduct p;
    p.partition = Partition::from_mask(n, (std::uint64_t{1} << n) - 1);
    p.f = function_table(c, res.domain, cap);
    p.h = FunctionTable{Flavor::AC, {}, {Rational(1)}};
    p.anchor = c.root();
    res.all_balanced = false;
    if (std::any_of(p.f.values.begin(), p.f.values.end(), [](auto& v) { return !v.is_zero(); }))
      res.products.push_back(std::move(p));
    return res;
  }

  Circuit cur = c;
  std::size_t guard = 0;
  while (true) {
    const Node& root = cur.nodes()[cur.root()];
    if (root.kind == NodeKind::Constant && root.constant.is_zero()) break;
    if (++guard > c.size() + 1) throw Error(Errc::BadArgument, "extraction did not terminate");
    auto sc = scopes(cur);
    NodeId v = detail::find_anchor(cur, sc, n);
    if (v == kNoNode) throw Error(Errc::NotSmooth, "no anchor below the root");
    DecompProduct p;
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (sc[v].test(order[k])) mask |= std::uint64_t{1} << k;
    p.partition = Partition::from_mask(n, mask);
    p.anchor = v;
    for (auto k : p.partition.x) p.f.domain.push_back(res.domain[k]);
    for (auto k : p.partition.y) p.h.domain.push_back(res.domain[k]);
    p.f = detail::node_table(cur, v, p.f.domain, cap);
    p.h.flavor = Flavor::AC;
    Evaluator ev(cur);
    std::vector<std::uint8_t> bits(cur.variable_count(), 0);
    for (std::size_t idx = 0; idx < (std::size_t{1} << p.partition.y.size()); ++idx) {
      for (std::size_t k = 0; k < p.partition.y.size(); ++k) bits[order[p.partition.y[k]]] = (idx >> k) & 1U;
      ev.run(bits);
      p.h.values.push_back(detail::adjoints(cur, ev)[v]);
    }
    auto nonzero = [](const FunctionTable& t) {
      return std::any_of(t.values.begin(), t.values.end(), [](auto& x) { return !x.is_zero(); });
    };
    if (nonzero(p.f) && nonzero(p.h)) {
      res.all_balanced = res.all_balanced && p.partition.balanced();
      if (!res.products.empty() && !(res.products.front().partition == p.partition)) res.same_partition = false;
      res.products.push_back(std::move(p));
    }
    cur = simplify(substitute_constant(cur, v, Rational(0)));
  }
  return res;
}

// ---------------------------------------------------------------------------
// End-to-end certificate for the edge-product function of a graph

struct PartitionCertificate {
  Partition partition;
  std::size_t rank = 0;
  InducedMatching matching;
  std::size_t mstar_rank = 0;
  bool rank_at_least_matching_bound = false;  // rank >= 2^|m|
  bool submatrix_rank_consistent = false;     // rank(M*) <= rank(M)
};

struct LowerBoundReport {
  Graph graph;
  std::size_t circuit_size = 0;
  std::size_t size_bound = 0;  // 10|E| + |V|
  std::size_t min_rank = 0;
  Partition min_partition;
  std::size_t min_matching = 0;  // smallest greedy matching over the scan
  std::vector<PartitionCertificate> partitions;
  bool all_certified() const {
    return std::all_of(partitions.begin(), partitions.end(), [](auto& p) {
      return p.rank_at_least_matching_bound && p.submatrix_rank_consistent;
    });
  }
  double ratio() const { return circuit_size ? static_cast<double>(min_rank) / static_cast<double>(circuit_size) : 0; }
};

/// Builds the edge-product circuit, its table over x0..x{n-1}, and for every
/// balanced partition the exact rank, a greedy induced matching and the rank
/// of the matched sub-matrix.
inline LowerBoundReport structured_lower_bound_report(const Graph& g, std::size_t cap = 16) {
  LowerBoundReport rep;
  rep.graph = g;
  Circuit c = fg_circuit(g);
  rep.circuit_size = c.size();
  rep.size_bound = 10 * g.edges.size() + g.n;
  std::vector<std::string> domain;
  for (std::size_t i = 0; i < g.n; ++i) domain.push_back(var_name(i));
  FunctionTable f = function_table(c, domain, cap);
  auto parts = balanced_partitions(g.n, cap);
  if (parts.empty()) throw Error(Errc::BadPartition, "graph has no balanced vertex partition");
  for (std::size_t k = 0; k < parts.size(); ++k) {
    PartitionCertificate pc;
    pc.partition = parts[k];
    pc.rank = rank_exact(value_matrix(f, parts[k]).m);
    pc.matching = induced_matching(g, parts[k]);
    validate_induced_matching(g, parts[k], pc.matching);
    pc.mstar_rank = rank_exact(mstar_submatrix(f, parts[k], pc.matching));
    pc.rank_at_least_matching_bound = pc.rank >= (std::size_t{1} << pc.matching.size());
    pc.submatrix_rank_consistent = pc.mstar_rank <= pc.rank;
    if (k == 0 || pc.rank < rep.min_rank) {
      rep.min_rank = pc.rank;
      rep.min_partition = pc.partition;
    }
    if (k == 0 || pc.matching.size() < rep.min_matching) rep.min_matching = pc.matching.size();
    rep.partitions.push_back(std::move(pc));
  }
  return rep;
}

}  // namespace acirc
