#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "acirc/circuit.hpp"
#include "acirc/properties.hpp"

namespace acirc {

/// Seeded generator with a fixed algorithm for every derived quantity, so a
/// seed reproduces the same output on any platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = eng_();
    while (v >= limit);
    return v % n;
  }
  /// Uniform in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 eng_;
};

inline std::string var_name(std::size_t i) { return "x" + std::to_string(i); }

// ---------------------------------------------------------------------------
// Graphs

/// Simple undirected graph on vertices 0..n-1; edges stored as (i, j), i < j.
struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [i, j] : edges) {
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }
  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(n, 0);
    for (auto [i, j] : edges) ++d[i], ++d[j];
    return d;
  }
  bool has_edge(std::size_t i, std::size_t j) const {
    auto e = std::minmax(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::pair<std::size_t, std::size_t>{e.first, e.second});
  }
  friend bool operator==(const Graph&, const Graph&) = default;
};

/// Normalizes edge orientation and order; rejects loops, repeated edges and
/// out-of-range endpoints.
inline Graph make_graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  for (auto& [i, j] : edges) {
    if (i >= n || j >= n) throw Error(Errc::BadArgument, "edge endpoint out of range");
    if (i == j) throw Error(Errc::BadArgument, "loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw Error(Errc::BadArgument, "repeated edge");
  return Graph{n, std::move(edges)};
}

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make_graph(n, std::move(e));
}

/// "n m" then m lines "i j" (0-based).
inline std::string graph_to_text(const Graph& g) {
  std::ostringstream os;
  os << g.n << ' ' << g.edges.size() << '\n';
  for (auto [i, j] : g.edges) os << i << ' ' << j << '\n';
  return os.str();
}

inline Graph parse_graph(std::string_view text) {
  std::istringstream is{std::string(text)};
  long long n = -1, m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0) throw Error(Errc::SyntaxError, "graph header must be 'n m'");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (long long k = 0; k < m; ++k) {
    long long i, j;
    if (!(is >> i >> j) || i < 0 || j < 0)
      throw Error(Errc::SyntaxError, "edge " + std::to_string(k + 1) + ": expected two vertex ids");
    e.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  std::string rest;
  if (is >> rest) throw Error(Errc::SyntaxError, "trailing data after " + std::to_string(m) + " edges");
  return make_graph(static_cast<std::size_t>(n), std::move(e));
}

/// Pairing model with rejection of loops and repeated edges.
inline Graph random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t max_attempts = 100000) {
  if ((n * d) % 2 != 0 || (n > 0 && d >= n))
    throw Error(Errc::InfeasibleDegree, "no simple " + std::to_string(d) + "-regular graph on " + std::to_string(n) +
                                            " vertices");
  Rng rng(seed);
  std::vector<std::size_t> points;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = 0; k < d; ++k) points.push_back(v);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    rng.shuffle(points);
    std::vector<std::pair<std::size_t, std::size_t>> e;
    bool ok = true;
    for (std::size_t k = 0; k + 1 < points.size() && ok; k += 2) {
      auto [a, b] = std::minmax(points[k], points[k + 1]);
      if (a == b) ok = false;
      e.emplace_back(a, b);
    }
    if (!ok) continue;
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) continue;
    return Graph{n, std::move(e)};
  }
  throw Error(Errc::GenerationTimeout, "no simple graph after " + std::to_string(max_attempts) + " pairings");
}

struct ExpansionReport {
  bool holds = true;
  bool exhaustive = true;
  std::size_t sets_checked = 0;
  std::size_t worst_neighbors = 0;  // |N(S)| of the minimizing set
  std::vector<std::size_t> worst_set;  // empty when no set was checked
  double c_star() const {
    return worst_set.empty() ? std::numeric_limits<double>::infinity()
                             : static_cast<double>(worst_neighbors) / static_cast<double>(worst_set.size());
  }
};

/// Checks |N(S)| >= c|S| for every S with 1 <= |S| <= n/2, where N(S) is the
/// set of outside vertices adjacent to S. Exhaustive up to 24 vertices,
/// otherwise `samples` random sets.
inline ExpansionReport expansion_check(const Graph& g, double c, std::uint64_t seed = 0, std::size_t samples = 200000) {
  ExpansionReport rep;
  const std::size_t half = g.n / 2;
  auto consider = [&](const std::vector<std::size_t>& s, std::size_t nb) {
    ++rep.sets_checked;
    if (static_cast<double>(nb) < c * static_cast<double>(s.size())) rep.holds = false;
    if (rep.worst_set.empty() || nb * rep.worst_set.size() < rep.worst_neighbors * s.size()) {
      rep.worst_set = s;
      rep.worst_neighbors = nb;
    }
  };
  if (g.n <= 24) {
    std::vector<std::uint32_t> adj(g.n, 0);
    for (auto [i, j] : g.edges) {
      adj[i] |= std::uint32_t{1} << j;
      adj[j] |= std::uint32_t{1} << i;
    }
    const std::uint32_t total = g.n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << g.n) - 1);
    for (std::uint32_t s = 1; s <= total && s != 0; ++s) {
      if (static_cast<std::size_t>(__builtin_popcount(s)) > half) continue;
      std::uint32_t nb = 0;
      for (std::uint32_t r = s; r; r &= r - 1) nb |= adj[__builtin_ctz(r)];
      nb &= ~s;
      std::size_t size = __builtin_popcount(s), nsize = __builtin_popcount(nb);
      bool better = rep.worst_set.empty() || nsize * rep.worst_set.size() < rep.worst_neighbors * size;
      bool violates = static_cast<double>(nsize) < c * static_cast<double>(size);
      if (better || (violates && rep.holds)) {
        std::vector<std::size_t> set;
        for (std::uint32_t r = s; r; r &= r - 1) set.push_back(__builtin_ctz(r));
        consider(set, nsize);
      } else {
        ++rep.sets_checked;
      }
    }
    return rep;
  }
  rep.exhaustive = false;
  Rng rng(seed);
  auto adj = g.adjacency();
  std::vector<std::size_t> verts(g.n);
  for (std::size_t i = 0; i < g.n; ++i) verts[i] = i;
  for (std::size_t t = 0; t < samples && half > 0; ++t) {
    rng.shuffle(verts);
    std::size_t k = 1 + rng.below(half);
    std::vector<std::size_t> s(verts.begin(), verts.begin() + static_cast<long>(k));
    std::sort(s.begin(), s.end());
    std::vector<char> in(g.n, 0), nb(g.n, 0);
    for (auto v : s) in[v] = 1;
    std::size_t cnt = 0;
    for (auto v : s)
      for (auto u : adj[v])
        if (!in[u] && !nb[u]) nb[u] = 1, ++cnt;
    consider(s, cnt);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Function families

/// The product over edges (i, j) of 1 + max(x_i, x_j), each factor written as
/// 1 + ((x_i + x_j) + (-1)(x_i x_j)). Variables are x0..x{n-1}. Factors are
/// multiplied left-deep in edge order, or as a balanced tree.
inline Circuit fg_circuit(const Graph& g, bool balanced = false) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < g.n; ++i) names.push_back(var_name(i));
  CircuitBuilder b(Flavor::AC, names);
  if (g.edges.empty()) return b.build(b.constant(Rational(1)));
  NodeId one = b.shared_constant(Rational(1));
  NodeId minus_one = b.shared_constant(Rational(-1));
  std::vector<NodeId> factors;
  for (auto [i, j] : g.edges) {
    NodeId xi = b.shared_literal(static_cast<VarIndex>(i), true);
    NodeId xj = b.shared_literal(static_cast<VarIndex>(j), true);
    NodeId s1 = b.sum(xi, xj);
    NodeId p = b.product(xi, xj);
    NodeId np = b.product(minus_one, p);
    NodeId s2 = b.sum(s1, np);
    factors.push_back(b.sum(one, s2));
  }
  if (!balanced) {
    NodeId acc = factors[0];
    for (std::size_t k = 1; k < factors.size(); ++k) acc = b.product(acc, factors[k]);
    return b.build(acc);
  }
  while (factors.size() > 1) {
    std::vector<NodeId> next;
    for (std::size_t k = 0; k + 1 < factors.size(); k += 2) next.push_back(b.product(factors[k], factors[k + 1]));
    if (factors.size() % 2) next.push_back(factors.back());
    factors = std::move(next);
  }
  return b.build(factors[0]);
}

/// Monotone 2-CNF; clause (a, b) reads x<a> or x<b>.
struct MonotoneCnf {
  std::size_t num_vars = 0;  // largest admissible variable number
  std::vector<std::pair<std::size_t, std::size_t>> clauses;
  friend bool operator==(const MonotoneCnf&, const MonotoneCnf&) = default;
};

inline std::string cnf_to_dimacs(const MonotoneCnf& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (auto [a, b] : f.clauses) os << a << ' ' << b << " 0\n";
  return os.str();
}

/// DIMACS restricted to clauses of two distinct positive literals.
inline MonotoneCnf parse_dimacs(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  MonotoneCnf f;
  bool header = false;
  std::size_t declared = 0, lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    auto where = "line " + std::to_string(lineno) + ": ";
    if (tok == "p") {
      std::string fmt;
      long long v, m;
      if (header || !(ls >> fmt >> v >> m) || fmt != "cnf" || v < 0 || m < 0)
        throw Error(Errc::SyntaxError, where + "bad problem line");
      header = true;
      f.num_vars = static_cast<std::size_t>(v);
      declared = static_cast<std::size_t>(m);
      continue;
    }
    if (!header) throw Error(Errc::SyntaxError, where + "clause before problem line");
    std::vector<long long> lits;
    std::istringstream cs(line);
    long long x;
    while (cs >> x && x != 0) lits.push_back(x);
    if (x != 0) throw Error(Errc::SyntaxError, where + "clause must end with 0");
    if (lits.size() != 2 || lits[0] <= 0 || lits[1] <= 0 || lits[0] == lits[1])
      throw Error(Errc::SyntaxError, where + "only clauses of two distinct positive literals are supported");
    if (static_cast<std::size_t>(std::max(lits[0], lits[1])) > f.num_vars)
      throw Error(Errc::SyntaxError, where + "variable exceeds the declared count");
    f.clauses.emplace_back(static_cast<std::size_t>(lits[0]), static_cast<std::size_t>(lits[1]));
  }
  if (!header) throw Error(Errc::SyntaxError, "missing problem line");
  if (f.clauses.size() != declared) throw Error(Errc::SyntaxError, "clause count differs from the problem line");
  return f;
}

inline MonotoneCnf graph_cnf(const Graph& g) {
  MonotoneCnf f;
  f.num_vars = g.n;
  f.clauses = g.edges;
  return f;
}

inline MonotoneCnf random_monotone_cnf(std::size_t num_vars, std::size_t num_clauses, std::uint64_t seed) {
  if (num_vars < 2) throw Error(Errc::BadArgument, "need at least two variables");
  Rng rng(seed);
  MonotoneCnf f;
  f.num_vars = num_vars;
  for (std::size_t k = 0; k < num_clauses; ++k) {
    std::size_t a = 1 + rng.below(num_vars), b;
    do b = 1 + rng.below(num_vars);
    while (b == a);
    f.clauses.emplace_back(a, b);
  }
  return f;
}

/// The conjunction of the clauses as a chain of binary and-nodes.
inline Circuit cnf_circuit(const MonotoneCnf& f) {
  CircuitBuilder b(Flavor::NNF);
  if (f.clauses.empty()) return b.build(b.constant(Rational(1)));
  NodeId acc = kNoNode;
  for (auto [u, v] : f.clauses) {
    NodeId cl = b.sum(b.shared_literal(var_name(u), true), b.shared_literal(var_name(v), true));
    acc = acc == kNoNode ? cl : b.product(acc, cl);
  }
  return b.build(acc);
}

/// Edges (u, v) become clauses x<u> or x<v>; models are vertex covers.
inline Circuit vertex_cover_cnf(const Graph& g) { return cnf_circuit(graph_cnf(g)); }

struct GadgetResult {
  Circuit circuit;
  std::vector<std::string> fresh;  // z0..z{m-1}, one per clause
};

/// Each clause a or b becomes (not z and a) or (z and b) with a fresh z.
/// Forgetting the fresh variables gives back the CNF.
inline GadgetResult dwdnnf_gadget(const MonotoneCnf& f) {
  CircuitBuilder b(Flavor::NNF);
  GadgetResult res;
  if (f.clauses.empty()) {
    res.circuit = b.build(b.constant(Rational(1)));
    return res;
  }
  NodeId acc = kNoNode;
  for (std::size_t k = 0; k < f.clauses.size(); ++k) {
    auto [u, v] = f.clauses[k];
    std::string z = "z" + std::to_string(k);
    res.fresh.push_back(z);
    NodeId left = b.product(b.shared_literal(z, false), b.shared_literal(var_name(u), true));
    NodeId right = b.product(b.shared_literal(z, true), b.shared_literal(var_name(v), true));
    NodeId cl = b.sum(left, right);
    acc = acc == kNoNode ? cl : b.product(acc, cl);
  }
  res.circuit = b.build(acc);
  return res;
}

// ---------------------------------------------------------------------------
// Random circuits in a requested class

namespace detail {

inline std::size_t min_cost(std::size_t k) { return k == 0 ? 1 : 2 * k - 1; }

/// Builds circuits bottom-up over a requested scope. Every returned node has
/// exactly the requested scope (or a subset on non-smooth sums), a
/// non-negative function, and respects the forced polarities, which is what
/// keeps shared variables of products single-polarity.
class RandomCircuitBuilder {
 public:
  using Forced = std::vector<std::int8_t>;  // -1 free, 0 negative, 1 positive

  RandomCircuitBuilder(const ClassLabel& label, std::size_t n, std::uint64_t seed, bool structured)
      : label_(label), rng_(seed), structured_(structured), b_(label.family == Family::NNF ? Flavor::NNF : Flavor::AC) {
    if (label.decomposition == Decomposition::None)
      throw Error(Errc::UnsupportedClass, label.str() + " is outside the generated grammar");
    if (structured && label.decomposition != Decomposition::Full)
      throw Error(Errc::UnsupportedClass, "structured generation needs a decomposable class");
    for (std::size_t i = 0; i < n; ++i) b_.var(var_name(i));
  }

  CircuitBuilder& builder() { return b_; }
  Rng& rng() { return rng_; }

  NodeId gen(std::vector<VarIndex> y, const Forced& forced, std::size_t budget) {
    std::sort(y.begin(), y.end());
    const std::size_t k = y.size();
    const std::size_t base = min_cost(k);
    if (budget < base) throw Error(Errc::BadArgument, "budget too small");

    Key key{y, restrict(forced, y)};
    auto hit = cache_.find(key);
    if (hit != cache_.end() && rng_.chance(1, 4)) return rng_.pick(hit->second);

    const bool nnf = label_.family == Family::NNF;
    const bool acp = label_.family == Family::ACp;
    const bool weak = label_.decomposition == Decomposition::Weak;
    std::vector<VarIndex> free_vars;
    for (auto v : y)
      if (forced[v] < 0) free_vars.push_back(v);

    enum Opt { Leaf, Split, Shared, Square, Decision, Union, Scale, NegPair, Cancel };
    std::vector<Opt> opts;
    if (k <= 1) opts.push_back(Leaf);
    if (k >= 2) opts.push_back(Split);
    if (weak && k >= 1 && budget >= shared_cost(k)) opts.push_back(Shared);
    if (weak && k >= 1 && budget >= 1 + base + (acp ? 2 : 0)) opts.push_back(Square);
    if (!free_vars.empty() && budget >= 5 + 2 * min_cost(k - 1) && decision_var(y, free_vars) != kNoVar) {
      // Decisions are the only sums deterministic classes get.
      opts.insert(opts.end(), label_.deterministic ? 3 : 1, Decision);
    }
    if (!label_.deterministic && budget >= 1 + 2 * base) opts.push_back(Union);
    if (!nnf && budget >= 2 + base) opts.push_back(Scale);
    if (acp && budget >= 4 + base) opts.push_back(NegPair);
    if (acp && !label_.deterministic && budget >= 5 + base) opts.push_back(Cancel);
    // Keep small budgets mostly structural so the scope is always reachable.
    Opt opt = opts.size() > 1 && budget <= base + 1 ? opts[0] : rng_.pick(opts);

    NodeId out = kNoNode;
    switch (opt) {
      case Leaf: out = leaf(y, forced); break;
      case Split: out = split(y, forced, budget); break;
      case Shared: out = shared_product(y, forced, budget); break;
      case Square: out = square(y, forced, budget); break;
      case Decision: out = decision(y, forced, budget, decision_var(y, free_vars)); break;
      case Union: out = union_sum(y, forced, budget); break;
      case Scale: out = b_.product(b_.constant(positive_constant()), gen(y, forced, budget - 2)); break;
      case NegPair: {
        NodeId inner = b_.product(b_.constant(-Rational(rng_.range(1, 3))), gen(y, forced, budget - 4));
        out = b_.product(b_.constant(-Rational(rng_.range(1, 3))), inner);
        break;
      }
      case Cancel: {
        long a = rng_.range(1, 3), c = rng_.range(1, a);
        NodeId g = gen(y, forced, budget - 5);
        out = b_.sum(b_.product(b_.constant(Rational(a)), g), b_.product(b_.constant(Rational(-c)), g));
        break;
      }
    }
    cache_[key].push_back(out);
    return out;
  }

 private:
  using Key = std::pair<std::vector<VarIndex>, std::vector<std::int8_t>>;
  static constexpr VarIndex kNoVar = std::numeric_limits<VarIndex>::max();

  static std::vector<std::int8_t> restrict(const Forced& f, const std::vector<VarIndex>& y) {
    std::vector<std::int8_t> out;
    for (auto v : y) out.push_back(f[v]);
    return out;
  }

  static std::size_t shared_cost(std::size_t k) { return 1 + 2 * min_cost(k == 1 ? 1 : (k + 2) / 2); }

  Rational positive_constant() {
    if (label_.family == Family::NNF) return Rational(1);
    switch (rng_.below(9)) {
      case 0: return Rational(0);
      case 1: case 2: return Rational(1, 2);
      case 3: case 4: return Rational(3);
      default: return Rational(2);
    }
  }

  NodeId leaf(const std::vector<VarIndex>& y, const Forced& forced) {
    if (y.empty()) {
      if (label_.family == Family::NNF) return b_.shared_constant(Rational(rng_.chance(1, 10) ? 0 : 1));
      return b_.constant(positive_constant());
    }
    VarIndex v = y[0];
    bool pol = forced[v] >= 0 ? forced[v] == 1 : rng_.chance(1, 2);
    return b_.shared_literal(v, pol);
  }

  /// Splits `extra` budget between two children at random.
  std::pair<std::size_t, std::size_t> share(std::size_t extra) {
    std::size_t a = static_cast<std::size_t>(rng_.below(extra + 1));
    return {a, extra - a};
  }

  std::pair<std::vector<VarIndex>, std::vector<VarIndex>> fixed_split(const std::vector<VarIndex>& y) {
    if (structured_) {
      auto it = splits_.find(y);
      if (it != splits_.end()) return it->second;
    }
    std::vector<VarIndex> perm = y;
    rng_.shuffle(perm);
    std::size_t cut = 1 + rng_.below(y.size() - 1);
    std::vector<VarIndex> a(perm.begin(), perm.begin() + static_cast<long>(cut));
    std::vector<VarIndex> c(perm.begin() + static_cast<long>(cut), perm.end());
    std::sort(a.begin(), a.end());
    std::sort(c.begin(), c.end());
    if (structured_) splits_.emplace(y, std::make_pair(a, c));
    return {a, c};
  }

  NodeId split(const std::vector<VarIndex>& y, const Forced& forced, std::size_t budget) {
    auto [a, c] = fixed_split(y);
    std::size_t ma = min_cost(a.size()), mc = min_cost(c.size());
    auto [ea, ec] = share(budget - 1 - ma - mc);
    NodeId l = gen(a, forced, ma + ea);
    NodeId r = gen(c, forced, mc + ec);
    return b_.product(l, r);
  }

  /// Product whose children share a set S of variables with fixed polarity.
  NodeId shared_product(const std::vector<VarIndex>& y, const Forced& forced, std::size_t budget) {
    std::vector<VarIndex> perm = y;
    rng_.shuffle(perm);
    std::size_t s = 1 + rng_.below(std::min<std::size_t>(2, y.size()));
    std::vector<VarIndex> shared(perm.begin(), perm.begin() + static_cast<long>(s));
    std::vector<VarIndex> a = shared, c = shared;
    for (std::size_t i = s; i < perm.size(); ++i) (rng_.chance(1, 2) ? a : c).push_back(perm[i]);
    std::size_t ma = min_cost(a.size()), mc = min_cost(c.size());
    if (1 + ma + mc > budget) return split_or_leaf(y, forced, budget);
    Forced f = forced;
    for (auto v : shared)
      if (f[v] < 0) f[v] = rng_.chance(1, 2) ? 1 : 0;
    auto [ea, ec] = share(budget - 1 - ma - mc);
    NodeId l = gen(a, f, ma + ea);
    NodeId r = gen(c, f, mc + ec);
    return b_.product(l, r);
  }

  NodeId split_or_leaf(const std::vector<VarIndex>& y, const Forced& forced, std::size_t budget) {
    return y.size() <= 1 ? leaf(y, forced) : split(y, forced, budget);
  }

  /// h * h with every variable of h at a fixed polarity; in AC_p h may be a
  /// negative multiple.
  NodeId square(const std::vector<VarIndex>& y, const Forced& forced, std::size_t budget) {
    Forced f = forced;
    for (auto v : y)
      if (f[v] < 0) f[v] = rng_.chance(1, 2) ? 1 : 0;
    const bool neg = label_.family == Family::ACp && rng_.chance(1, 2);
    NodeId h = gen(y, f, budget - 1 - (neg ? 2 : 0));
    if (neg) h = b_.product(b_.constant(-Rational(rng_.range(1, 2))), h);
    return b_.product(h, h);
  }

  VarIndex decision_var(const std::vector<VarIndex>& y, const std::vector<VarIndex>& free_vars) {
    if (!structured_) return free_vars.empty() ? kNoVar : free_vars[0];
    auto it = splits_.find(y);
    if (it == splits_.end()) return free_vars.empty() ? kNoVar : free_vars[0];
    for (const auto* side : {&it->second.first, &it->second.second})
      if (side->size() == 1 && std::find(free_vars.begin(), free_vars.end(), (*side)[0]) != free_vars.end())
        return (*side)[0];
    return kNoVar;
  }

  /// (lx * A) + (not lx * B), A and B over var \ {x}; B may drop variables
  /// when the class is not smooth.
  NodeId decision(const std::vector<VarIndex>& y, const Forced& forced, std::size_t budget, VarIndex x) {
    if (!structured_) {
      std::vector<VarIndex> free_vars;
      for (auto v : y)
        if (forced[v] < 0) free_vars.push_back(v);
      x = rng_.pick(free_vars);
    }
    std::vector<VarIndex> rest;
    for (auto v : y)
      if (v != x) rest.push_back(v);
    if (structured_ && rest.size() >= 1)
      splits_.try_emplace(y, std::make_pair(std::vector<VarIndex>{x}, rest));
    std::vector<VarIndex> rest_b = rest;
    if (!label_.smooth && !structured_ && !rest.empty() && rng_.chance(1, 2)) rest_b = random_subset(rest);
    std::size_t ma = min_cost(rest.size()), mb = min_cost(rest_b.size());
    auto [ea, eb] = share(budget - 5 - ma - mb);
    bool pos_first = rng_.chance(1, 2);
    NodeId la = b_.shared_literal(x, pos_first);
    NodeId lb = b_.shared_literal(x, !pos_first);
    NodeId a = b_.product(la, gen(rest, forced, ma + ea));
    NodeId c = b_.product(lb, gen(rest_b, forced, mb + eb));
    return rng_.chance(1, 2) ? b_.sum(a, c) : b_.sum(c, a);
  }

  std::vector<VarIndex> random_subset(const std::vector<VarIndex>& y) {
    std::vector<VarIndex> out;
    for (auto v : y)
      if (rng_.chance(1, 2)) out.push_back(v);
    if (out.size() == y.size()) out.pop_back();
    return out;
  }

  NodeId union_sum(const std::vector<VarIndex>& y, const Forced& forced, std::size_t budget) {
    std::vector<VarIndex> yb = y;
    if (!label_.smooth && !y.empty() && rng_.chance(1, 2)) yb = random_subset(y);
    std::size_t ma = min_cost(y.size()), mb = min_cost(yb.size());
    auto [ea, eb] = share(budget - 1 - ma - mb);
    NodeId a = gen(y, forced, ma + ea);
    NodeId c = gen(yb, forced, mb + eb);
    return rng_.chance(1, 2) ? b_.sum(a, c) : b_.sum(c, a);
  }

  ClassLabel label_;
  Rng rng_;
  bool structured_;
  CircuitBuilder b_;
  std::map<Key, std::vector<NodeId>> cache_;
  std::map<std::vector<VarIndex>, std::pair<std::vector<VarIndex>, std::vector<VarIndex>>> splits_;
};

}  // namespace detail

/// A seeded circuit over x0..x{n-1} (all of them in scope) whose size is at
/// most `budget` and which has every property named by `label`. Only labels
/// with D or wD are generated. With `structured`, products of equal scope
/// always split it the same way.
inline Circuit random_circuit(const ClassLabel& label, std::size_t n, std::size_t budget, std::uint64_t seed,
                              bool structured = false) {
  detail::RandomCircuitBuilder gen(label, n, seed, structured);
  if (budget < detail::min_cost(n))
    throw Error(Errc::BadArgument, "budget " + std::to_string(budget) + " cannot cover " + std::to_string(n) +
                                       " variables");
  std::vector<VarIndex> all;
  for (VarIndex i = 0; i < n; ++i) all.push_back(i);
  NodeId root = gen.gen(all, detail::RandomCircuitBuilder::Forced(n, -1), budget);
  return gen.builder().build(root);
}

/// A wDNNF whose term subcircuits all mention every variable but which is in
/// general not smooth: a smooth wDNNF over x0..x{n-1} in which a set S of
/// variables has fixed polarity, with some and-nodes that guard an S-literal
/// collapsed onto their other child, conjoined with the S-literals.
inline Circuit random_equal_scope_wdnnf(std::size_t n, std::size_t budget, std::uint64_t seed, bool deterministic) {
  if (n < 2) throw Error(Errc::BadArgument, "need at least two variables");
  ClassLabel label{true, deterministic, Decomposition::Weak, Family::NNF};
  detail::RandomCircuitBuilder gen(label, n, seed, false);
  Rng& rng = gen.rng();
  std::vector<VarIndex> all;
  for (VarIndex i = 0; i < n; ++i) all.push_back(i);
  detail::RandomCircuitBuilder::Forced forced(n, -1);
  std::vector<VarIndex> perm = all;
  rng.shuffle(perm);
  std::size_t s = 1 + rng.below(n / 2);
  std::vector<Literal> fixed;
  for (std::size_t i = 0; i < s; ++i) {
    forced[perm[i]] = rng.chance(1, 2) ? 1 : 0;
    fixed.push_back({perm[i], forced[perm[i]] == 1});
  }
  std::size_t inner_budget = budget > 2 * s ? budget - 2 * s : 0;
  if (inner_budget < detail::min_cost(n)) throw Error(Errc::BadArgument, "budget too small");
  NodeId root0 = gen.gen(all, forced, inner_budget);
  Circuit d0 = gen.builder().build(root0);

  CircuitBuilder b(Flavor::NNF, d0.variables());
  std::vector<NodeId> map(d0.size(), kNoNode);
  auto is_fixed_literal = [&](NodeId g) {
    const Node& n0 = d0.nodes()[g];
    return n0.kind == NodeKind::Literal && forced[n0.literal.var] >= 0;
  };
  for (NodeId g = 0; g < d0.size(); ++g) {
    const Node& nd = d0.nodes()[g];
    if (nd.is_sink()) {
      map[g] = b.add(nd);
      b.remember_sink(map[g]);
      continue;
    }
    if (nd.kind == NodeKind::Product && nd.left != nd.right && rng.chance(1, 2)) {
      if (is_fixed_literal(nd.left)) { map[g] = map[nd.right]; continue; }
      if (is_fixed_literal(nd.right)) { map[g] = map[nd.left]; continue; }
    }
    map[g] = nd.kind == NodeKind::Sum ? b.sum(map[nd.left], map[nd.right]) : b.product(map[nd.left], map[nd.right]);
  }
  NodeId acc = map[d0.root()];
  for (auto l : fixed) acc = b.product(b.shared_literal(l.var, l.positive), acc);
  return b.build(acc);
}

}  // namespace acirc
