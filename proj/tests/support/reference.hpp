#pragma once

// Deliberately naive re-implementations used as test oracles. They share no
// code with the library beyond the circuit data structure.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "acirc/acirc.hpp"

namespace ref {

using acirc::Circuit;
using acirc::NodeId;
using acirc::NodeKind;

/// Recursive evaluation straight from the node definitions, in mpq.
inline mpq_class eval_node(const Circuit& c, NodeId g, const std::map<std::string, bool>& a) {
  const auto& n = c.nodes()[g];
  switch (n.kind) {
    case NodeKind::Literal: {
      bool v = a.at(c.variable_name(n.literal.var));
      return (v == n.literal.positive) ? 1 : 0;
    }
    case NodeKind::Constant: return n.constant.raw();
    case NodeKind::Sum: {
      mpq_class l = eval_node(c, n.left, a), r = eval_node(c, n.right, a);
      if (c.flavor() == acirc::Flavor::NNF) return (l != 0 || r != 0) ? 1 : 0;
      return l + r;
    }
    case NodeKind::Product: {
      mpq_class l = eval_node(c, n.left, a), r = eval_node(c, n.right, a);
      if (c.flavor() == acirc::Flavor::NNF) return (l != 0 && r != 0) ? 1 : 0;
      return l * r;
    }
  }
  return 0;
}

/// Literal-mentioned variables, found by walking the DAG from g.
inline std::set<std::string> vars_below(const Circuit& c, NodeId g) {
  std::set<std::string> out;
  std::vector<NodeId> stack{g};
  std::set<NodeId> seen;
  while (!stack.empty()) {
    NodeId h = stack.back();
    stack.pop_back();
    if (!seen.insert(h).second) continue;
    const auto& n = c.nodes()[h];
    if (n.kind == NodeKind::Literal) out.insert(c.variable_name(n.literal.var));
    if (n.is_internal()) {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
  return out;
}

inline std::map<std::string, bool> assignment_of(const std::vector<std::string>& domain, std::size_t idx) {
  std::map<std::string, bool> a;
  for (std::size_t k = 0; k < domain.size(); ++k) a[domain[k]] = (idx >> k) & 1U;
  return a;
}

inline std::vector<std::string> domain_of(const Circuit& c) {
  auto s = vars_below(c, c.root());
  std::vector<std::string> out;
  for (auto& v : c.variables())
    if (s.count(v)) out.push_back(v);
  return out;
}

/// Table over an explicit domain (variables outside var(C) are ignored).
inline std::vector<mpq_class> table(const Circuit& c, const std::vector<std::string>& domain) {
  std::vector<mpq_class> out;
  for (std::size_t idx = 0; idx < (std::size_t{1} << domain.size()); ++idx) {
    auto a = assignment_of(domain, idx);
    for (auto& v : c.variables()) a.emplace(v, false);
    out.push_back(eval_node(c, c.root(), a));
  }
  return out;
}

inline std::vector<mpq_class> table(const Circuit& c) { return table(c, domain_of(c)); }

inline std::vector<mpq_class> to_mpq(const std::vector<acirc::Rational>& v) {
  std::vector<mpq_class> out;
  for (auto& r : v) out.push_back(r.raw());
  return out;
}

/// Product over the edges of 1 + max(x_i, x_j), evaluated directly.
inline mpq_class edge_product(const acirc::Graph& g, std::size_t idx) {
  mpq_class v = 1;
  for (auto [i, j] : g.edges) v *= 1 + std::max((idx >> i) & 1U, (idx >> j) & 1U);
  return v;
}

/// Rank by textbook Gaussian elimination over mpq.
inline std::size_t rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t r = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

/// Determinant by elimination over mpq.
inline mpq_class det(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  mpq_class d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      mpq_class f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

inline std::vector<std::vector<mpq_class>> rows_of(const acirc::Matrix& m) {
  std::vector<std::vector<mpq_class>> out(m.rows, std::vector<mpq_class>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[i][j] = m.at(i, j).raw();
  return out;
}

/// Semantic determinism straight from the definition: for every sum node,
/// over every assignment of var(g), not both children non-zero.
inline bool deterministic(const Circuit& c) {
  for (NodeId g = 0; g < c.size(); ++g) {
    const auto& n = c.nodes()[g];
    if (n.kind != NodeKind::Sum) continue;
    auto vs = vars_below(c, g);
    std::vector<std::string> dom(vs.begin(), vs.end());
    for (std::size_t idx = 0; idx < (std::size_t{1} << dom.size()); ++idx) {
      auto a = assignment_of(dom, idx);
      for (auto& v : c.variables()) a.emplace(v, false);
      if (eval_node(c, n.left, a) != 0 && eval_node(c, n.right, a) != 0) return false;
    }
  }
  return true;
}

inline bool smooth(const Circuit& c) {
  for (NodeId g = 0; g < c.size(); ++g) {
    const auto& n = c.nodes()[g];
    if (n.kind == NodeKind::Sum && vars_below(c, n.left) != vars_below(c, n.right)) return false;
  }
  return true;
}

inline bool decomposable(const Circuit& c) {
  for (NodeId g = 0; g < c.size(); ++g) {
    const auto& n = c.nodes()[g];
    if (n.kind != NodeKind::Product) continue;
    auto l = vars_below(c, n.left), r = vars_below(c, n.right);
    for (auto& v : l)
      if (r.count(v)) return false;
  }
  return true;
}

/// Every variable shared by the children of a product occurs under the
/// product with one polarity only.
inline bool weakly_decomposable(const Circuit& c) {
  for (NodeId g = 0; g < c.size(); ++g) {
    const auto& n = c.nodes()[g];
    if (n.kind != NodeKind::Product) continue;
    auto l = vars_below(c, n.left), r = vars_below(c, n.right);
    std::set<std::pair<std::string, bool>> lits;
    std::vector<NodeId> stack{g};
    std::set<NodeId> seen;
    while (!stack.empty()) {
      NodeId h = stack.back();
      stack.pop_back();
      if (!seen.insert(h).second) continue;
      const auto& m = c.nodes()[h];
      if (m.kind == NodeKind::Literal) lits.insert({c.variable_name(m.literal.var), m.literal.positive});
      if (m.is_internal()) {
        stack.push_back(m.left);
        stack.push_back(m.right);
      }
    }
    for (auto& v : l)
      if (r.count(v) && lits.count({v, true}) && lits.count({v, false})) return false;
  }
  return true;
}

/// Arbitrary DAG with no class guarantees: random sinks, then gates over
/// random earlier nodes, rooted at the last gate.
inline Circuit random_dag(acirc::Flavor flavor, std::size_t vars, std::size_t gates, unsigned seed,
                          bool negative_constants = false) {
  std::mt19937 rng(seed);
  acirc::CircuitBuilder b(flavor);
  std::vector<NodeId> ids;
  const std::size_t sinks = vars + 2;
  for (std::size_t i = 0; i < sinks; ++i) {
    if (i < vars || rng() % 4 != 0) {
      ids.push_back(b.literal("v" + std::to_string(rng() % vars), rng() % 2 == 0));
    } else if (flavor == acirc::Flavor::NNF) {
      ids.push_back(b.constant(acirc::Rational(static_cast<long>(rng() % 2))));
    } else {
      long v = static_cast<long>(rng() % 4);
      if (negative_constants && rng() % 2) v = -v;
      ids.push_back(b.constant(acirc::Rational(v)));
    }
  }
  for (std::size_t i = 0; i < gates; ++i) {
    NodeId l = ids[rng() % ids.size()], r = ids[rng() % ids.size()];
    ids.push_back(rng() % 2 ? b.sum(l, r) : b.product(l, r));
  }
  return b.build(ids.back());
}

/// Terms by literal unfolding of the DAG into trees: every sum occurrence picks
/// one child. Expansions are grouped by node set, coefficients added (or-ed
/// for NNF).
inline std::map<std::set<NodeId>, mpq_class> unfolded_terms(const Circuit& c) {
  using Expansion = std::pair<std::set<NodeId>, mpq_class>;
  const bool nnf = c.flavor() == acirc::Flavor::NNF;
  std::function<std::vector<Expansion>(NodeId)> rec = [&](NodeId g) -> std::vector<Expansion> {
    const auto& n = c.nodes()[g];
    switch (n.kind) {
      case NodeKind::Literal: return {{{g}, 1}};
      case NodeKind::Constant: return {{{g}, nnf ? mpq_class(n.constant.is_zero() ? 0 : 1) : n.constant.raw()}};
      case NodeKind::Sum: {
        auto out = rec(n.left);
        for (auto& e : rec(n.right)) out.push_back(e);
        for (auto& e : out) e.first.insert(g);
        return out;
      }
      case NodeKind::Product: {
        std::vector<Expansion> out;
        auto ls = rec(n.left), rs = rec(n.right);
        for (auto& l : ls)
          for (auto& r : rs) {
            Expansion e{l.first, l.second * r.second};
            e.first.insert(r.first.begin(), r.first.end());
            e.first.insert(g);
            out.push_back(std::move(e));
          }
        return out;
      }
    }
    return {};
  };
  std::map<std::set<NodeId>, mpq_class> grouped;
  for (auto& [s, coef] : rec(c.root())) {
    auto [it, fresh] = grouped.try_emplace(s, coef);
    if (!fresh) {
      it->second += coef;
      if (nnf && it->second != 0) it->second = 1;
    }
  }
  return grouped;
}

}  // namespace ref
