#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "acirc/circuit.hpp"
#include "acirc/oracle.hpp"

namespace acirc {

enum class Property { Smooth, Deterministic, Decomposable, WeaklyDecomposable, Structured };

inline std::string_view property_name(Property p) {
  switch (p) {
    case Property::Smooth: return "smooth";
    case Property::Deterministic: return "deterministic";
    case Property::Decomposable: return "decomposable";
    case Property::WeaklyDecomposable: return "weakly-decomposable";
    case Property::Structured: return "structured";
  }
  return "?";
}

inline std::optional<Property> parse_property(std::string_view s) {
  for (auto p : {Property::Smooth, Property::Deterministic, Property::Decomposable, Property::WeaklyDecomposable,
                 Property::Structured})
    if (property_name(p) == s) return p;
  return std::nullopt;
}

struct Witness {
  NodeId node = kNoNode;
  std::string explanation;
  std::optional<Assignment> assignment;
  std::optional<NodeId> other;
};

struct PropertyReport {
  Property property;
  std::vector<Witness> witnesses;
  bool holds() const { return witnesses.empty(); }
};

namespace detail {
inline std::string set_text(const Circuit& c, const VarSet& s) {
  std::string out = "{";
  for (auto& n : names_of(c, s)) out += (out.size() > 1 ? "," : "") + n;
  return out + "}";
}
}  // namespace detail

inline PropertyReport is_smooth(const Circuit& c) {
  PropertyReport rep{Property::Smooth, {}};
  auto sc = scopes(c);
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    if (n.kind != NodeKind::Sum || sc[n.left] == sc[n.right]) continue;
    rep.witnesses.push_back({g, "child scopes differ: " + detail::set_text(c, sc[n.left]) + " vs " +
                                    detail::set_text(c, sc[n.right])});
  }
  return rep;
}

inline PropertyReport is_decomposable(const Circuit& c) {
  PropertyReport rep{Property::Decomposable, {}};
  auto sc = scopes(c);
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    if (n.kind != NodeKind::Product) continue;
    VarSet shared = sc[n.left] & sc[n.right];
    if (shared.any()) rep.witnesses.push_back({g, "children share " + detail::set_text(c, shared)});
  }
  return rep;
}

/// A shared variable of a product may occur under it with one polarity only.
/// Variables that are not shared are unconstrained.
inline PropertyReport is_weakly_decomposable(const Circuit& c) {
  PropertyReport rep{Property::WeaklyDecomposable, {}};
  auto sc = scopes(c);
  auto pol = polarity_sets(c);
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    if (n.kind != NodeKind::Product) continue;
    VarSet bad = sc[n.left] & sc[n.right] & pol.positive[g] & pol.negative[g];
    if (bad.any())
      rep.witnesses.push_back({g, "shared variables with both polarities below: " + detail::set_text(c, bad)});
  }
  return rep;
}

namespace detail {
inline std::optional<Literal> guard_literal(const Circuit& c, NodeId g) {
  const Node& n = c.nodes()[g];
  if (n.kind != NodeKind::Product) return std::nullopt;
  const Node& l = c.nodes()[n.left];
  const Node& r = c.nodes()[n.right];
  if (l.kind == NodeKind::Literal) return l.literal;
  if (r.kind == NodeKind::Literal) return r.literal;
  return std::nullopt;
}

/// (lx * a) + (-lx * b), children in any order.
inline bool is_decision_node(const Circuit& c, NodeId g) {
  const Node& n = c.nodes()[g];
  if (n.kind != NodeKind::Sum) return false;
  const Node& l = c.nodes()[n.left];
  const Node& r = c.nodes()[n.right];
  if (l.kind != NodeKind::Product || r.kind != NodeKind::Product) return false;
  auto literals_of = [&](const Node& p) {
    std::vector<Literal> out;
    for (NodeId ch : {p.left, p.right})
      if (c.nodes()[ch].kind == NodeKind::Literal) out.push_back(c.nodes()[ch].literal);
    return out;
  };
  for (auto a : literals_of(l))
    for (auto b : literals_of(r))
      if (a.var == b.var && a.positive != b.positive) return true;
  return false;
}

inline Assignment assignment_over(const Circuit& c, const std::vector<VarIndex>& vars, std::uint64_t idx) {
  Assignment a;
  for (std::size_t k = 0; k < vars.size(); ++k) a.set(c.variable_name(vars[k]), (idx >> k) & 1U);
  return a;
}
}  // namespace detail

/// Semantic check of every sum node: enumerate the assignments of var(g)
/// and look for one on which both children are non-zero. Decision nodes
/// (lx * a) + (-lx * b) are accepted without enumeration when
/// `syntactic_fast_path` is set.
inline PropertyReport is_deterministic(const Circuit& c, std::size_t cap = kDefaultCap,
                                       bool syntactic_fast_path = true) {
  PropertyReport rep{Property::Deterministic, {}};
  auto sc = scopes(c);
  Evaluator ev(c);
  std::vector<std::uint8_t> bits(c.variable_count(), 0);
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    if (n.kind != NodeKind::Sum) continue;
    if (syntactic_fast_path && detail::is_decision_node(c, g)) continue;
    std::vector<VarIndex> vars;
    for (auto i = sc[g].find_first(); i != VarSet::npos; i = sc[g].find_next(i)) vars.push_back(i);
    if (vars.size() > cap)
      throw Error(Errc::TooManyVariables, "node " + std::to_string(g) + " has " + std::to_string(vars.size()) +
                                              " variables, cap is " + std::to_string(cap));
    auto order = cone(c, g);
    const std::uint64_t rows = std::uint64_t{1} << vars.size();
    for (std::uint64_t idx = 0; idx < rows; ++idx) {
      for (std::size_t k = 0; k < vars.size(); ++k) bits[vars[k]] = (idx >> k) & 1U;
      ev.run(bits, order);
      if (ev.nonzero(n.left) && ev.nonzero(n.right)) {
        rep.witnesses.push_back({g, "both children are non-zero", detail::assignment_over(c, vars, idx)});
        break;
      }
    }
  }
  return rep;
}

/// Independent determinism check: one sweep over the full assignments of
/// var(C), evaluating all nodes at once.
inline PropertyReport deterministic_by_sweep(const Circuit& c, std::size_t cap = kDefaultCap) {
  PropertyReport rep{Property::Deterministic, {}};
  VarSet all = circuit_scope(c);
  std::vector<VarIndex> vars;
  for (auto i = all.find_first(); i != VarSet::npos; i = all.find_next(i)) vars.push_back(i);
  detail::check_cap(vars.size(), cap);
  auto sc = scopes(c);
  std::vector<NodeId> sums;
  for (NodeId g = 0; g < c.size(); ++g)
    if (c.nodes()[g].kind == NodeKind::Sum) sums.push_back(g);
  std::vector<char> failed(c.size(), 0);
  Evaluator ev(c);
  std::vector<std::uint8_t> bits(c.variable_count(), 0);
  const std::uint64_t rows = std::uint64_t{1} << vars.size();
  for (std::uint64_t idx = 0; idx < rows; ++idx) {
    for (std::size_t k = 0; k < vars.size(); ++k) bits[vars[k]] = (idx >> k) & 1U;
    ev.run(bits);
    for (NodeId g : sums) {
      const Node& n = c.nodes()[g];
      if (failed[g] || !ev.nonzero(n.left) || !ev.nonzero(n.right)) continue;
      failed[g] = 1;
      Assignment a;
      for (auto i = sc[g].find_first(); i != VarSet::npos; i = sc[g].find_next(i))
        a.set(c.variable_name(i), bits[i] != 0);
      rep.witnesses.push_back({g, "both children are non-zero", a});
    }
  }
  std::sort(rep.witnesses.begin(), rep.witnesses.end(),
            [](const Witness& x, const Witness& y) { return x.node < y.node; });
  return rep;
}

/// Products of equal scope must split it the same way. Products with a
/// constant child carry no split and are ignored.
inline PropertyReport is_structured(const Circuit& c) {
  if (!is_smooth(c).holds() || !is_decomposable(c).holds())
    throw Error(Errc::NotSmoothDecomposable, "structuredness is defined for smooth decomposable circuits");
  PropertyReport rep{Property::Structured, {}};
  auto sc = scopes(c);
  std::map<VarSet, std::pair<std::pair<VarSet, VarSet>, NodeId>> seen;
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    if (n.kind != NodeKind::Product || sc[n.left].none() || sc[n.right].none()) continue;
    auto split = std::minmax(sc[n.left], sc[n.right]);
    std::pair<VarSet, VarSet> key{split.first, split.second};
    auto [it, fresh] = seen.try_emplace(sc[g], key, g);
    if (fresh || it->second.first == key) continue;
    rep.witnesses.push_back({g,
                             "splits " + detail::set_text(c, sc[g]) + " as " + detail::set_text(c, key.first) + "|" +
                                 detail::set_text(c, key.second) + ", node " + std::to_string(it->second.second) +
                                 " splits it as " + detail::set_text(c, it->second.first.first) + "|" +
                                 detail::set_text(c, it->second.first.second),
                             std::nullopt, it->second.second});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Class labels: {_, s}{_, d}{D, wD}-{AC_m, AC_p, NNF}

enum class Family { ACm, ACp, NNF };
enum class Decomposition { None, Weak, Full };

struct ClassLabel {
  bool smooth = false;
  bool deterministic = false;
  Decomposition decomposition = Decomposition::Full;
  Family family = Family::ACm;

  std::string str() const {
    std::string sd = std::string(smooth ? "s" : "") + (deterministic ? "d" : "");
    if (family == Family::NNF) {
      std::string base = decomposition == Decomposition::Full ? "DNNF"
                         : decomposition == Decomposition::Weak ? "wDNNF"
                                                                : "NNF";
      return sd.empty() ? base : sd + "-" + base;
    }
    std::string dec = decomposition == Decomposition::Full ? "D" : decomposition == Decomposition::Weak ? "wD" : "";
    std::string fam = family == Family::ACm ? "AC_m" : "AC_p";
    std::string prefix = sd + dec;
    return prefix.empty() ? fam : prefix + "-" + fam;
  }

  static ClassLabel parse(std::string_view s) {
    ClassLabel l;
    auto fail = [&] { return Error(Errc::UnsupportedClass, "cannot parse class label '" + std::string(s) + "'"); };
    auto take_sd = [&](std::string_view& p) {
      if (!p.empty() && p.front() == 's') { l.smooth = true; p.remove_prefix(1); }
      if (!p.empty() && p.front() == 'd') { l.deterministic = true; p.remove_prefix(1); }
    };
    if (s.size() >= 3 && s.substr(s.size() - 3) == "NNF") {
      l.family = Family::NNF;
      std::string_view base = s;
      std::string_view prefix;
      if (auto dash = s.find('-'); dash != std::string_view::npos) {
        prefix = s.substr(0, dash);
        base = s.substr(dash + 1);
        if (prefix.empty()) throw fail();
      }
      take_sd(prefix);
      if (!prefix.empty()) throw fail();
      if (base == "DNNF") l.decomposition = Decomposition::Full;
      else if (base == "wDNNF") l.decomposition = Decomposition::Weak;
      else if (base == "NNF") l.decomposition = Decomposition::None;
      else throw fail();
      return l;
    }
    std::string_view fam = s, prefix;
    if (auto dash = s.find('-'); dash != std::string_view::npos) {
      prefix = s.substr(0, dash);
      fam = s.substr(dash + 1);
      if (prefix.empty()) throw fail();
    }
    if (fam == "AC_m") l.family = Family::ACm;
    else if (fam == "AC_p") l.family = Family::ACp;
    else throw fail();
    take_sd(prefix);
    if (prefix == "D") l.decomposition = Decomposition::Full;
    else if (prefix == "wD") l.decomposition = Decomposition::Weak;
    else if (prefix.empty()) l.decomposition = Decomposition::None;
    else throw fail();
    return l;
  }

  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
  friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;
};

struct Classification {
  ClassLabel label;
  bool smooth = false;
  bool deterministic = false;
  bool decomposable = false;
  bool weakly_decomposable = false;
  bool monotone = false;  // all constants >= 0 (AC only)
};

/// Most specific label of the circuit. AC with only non-negative constants
/// are reported as AC_m although they are AC_p as well.
inline Classification classify(const Circuit& c, std::size_t cap = kDefaultCap) {
  Classification out;
  out.smooth = is_smooth(c).holds();
  out.decomposable = is_decomposable(c).holds();
  out.weakly_decomposable = out.decomposable || is_weakly_decomposable(c).holds();
  out.deterministic = is_deterministic(c, cap).holds();
  if (c.flavor() == Flavor::NNF) {
    out.label.family = Family::NNF;
  } else {
    out.monotone = std::all_of(c.nodes().begin(), c.nodes().end(), [](const Node& n) {
      return n.kind != NodeKind::Constant || n.constant.sign() >= 0;
    });
    if (out.monotone) {
      out.label.family = Family::ACm;
    } else if (is_nonnegative(function_table(c, cap))) {
      out.label.family = Family::ACp;
    } else {
      throw Error(Errc::NotPositive, "the circuit takes a negative value");
    }
  }
  out.label.smooth = out.smooth;
  out.label.deterministic = out.deterministic;
  out.label.decomposition = out.decomposable          ? Decomposition::Full
                            : out.weakly_decomposable ? Decomposition::Weak
                                                      : Decomposition::None;
  return out;
}

// ---------------------------------------------------------------------------
// Term subcircuits

inline constexpr std::size_t kDefaultTermCap = 200000;

/// One term: the node set of the subcircuit and the term it computes,
/// coefficient * product of literals.
struct TermSubcircuit {
  std::vector<NodeId> nodes;
  Rational coefficient;
  std::vector<Literal> literals;

  VarSet scope(std::size_t var_count) const {
    VarSet s(var_count);
    for (auto l : literals) s.set(l.var);
    return s;
  }
  /// Value under a full valuation of the circuit's variable table.
  Rational evaluate(std::span<const std::uint8_t> bits) const {
    for (auto l : literals)
      if ((bits[l.var] != 0) != l.positive) return Rational(0);
    return coefficient;
  }
};

/// Enumerates term subcircuits. Choices at sum nodes are made per occurrence
/// in the unfolded DAG; choices that reach the same node set are merged and
/// their coefficients added (or-ed for NNF), so the terms always sum to C.
inline std::vector<TermSubcircuit> term_subcircuits(const Circuit& c, std::size_t cap = kDefaultTermCap) {
  if (!is_weakly_decomposable(c).holds())
    throw Error(Errc::NotWeaklyDecomposable, "term subcircuits need a weakly decomposable circuit");
  const bool nnf = c.flavor() == Flavor::NNF;
  using NodeSet = boost::dynamic_bitset<>;
  using Terms = std::map<NodeSet, Rational>;
  auto order = cone(c, c.root());
  std::vector<Terms> memo(c.size());
  std::vector<int> uses(c.size(), 0);
  for (NodeId g : order) {
    const Node& n = c.nodes()[g];
    if (n.is_internal()) {
      ++uses[n.left];
      ++uses[n.right];
    }
  }
  auto add = [&](Terms& t, NodeSet s, const Rational& coef) {
    auto [it, fresh] = t.try_emplace(std::move(s), coef);
    if (!fresh) {
      it->second += coef;
      if (nnf && !it->second.is_zero()) it->second = Rational(1);
    }
    if (t.size() > cap)
      throw Error(Errc::TermExplosion, "more than " + std::to_string(cap) + " term subcircuits");
  };
  for (NodeId g : order) {
    const Node& n = c.nodes()[g];
    Terms& out = memo[g];
    NodeSet self(c.size());
    self.set(g);
    switch (n.kind) {
      case NodeKind::Literal: add(out, self, Rational(1)); break;
      case NodeKind::Constant: add(out, self, nnf ? Rational(n.constant.is_zero() ? 0 : 1) : n.constant); break;
      case NodeKind::Sum:
        for (NodeId ch : {n.left, n.right})
          for (auto& [s, coef] : memo[ch]) add(out, s | self, coef);
        break;
      case NodeKind::Product:
        for (auto& [sl, cl] : memo[n.left])
          for (auto& [sr, cr] : memo[n.right]) add(out, sl | sr | self, cl * cr);
        break;
    }
    if (n.is_internal()) {
      for (NodeId ch : {n.left, n.right})
        if (--uses[ch] == 0 && ch != c.root()) Terms().swap(memo[ch]);
    }
  }
  std::vector<TermSubcircuit> result;
  for (auto& [s, coef] : memo[c.root()]) {
    TermSubcircuit t;
    std::set<Literal> lits;
    for (auto i = s.find_first(); i != NodeSet::npos; i = s.find_next(i)) {
      t.nodes.push_back(static_cast<NodeId>(i));
      const Node& n = c.nodes()[i];
      if (n.kind == NodeKind::Literal) lits.insert(n.literal);
    }
    t.coefficient = coef;
    t.literals.assign(lits.begin(), lits.end());
    result.push_back(std::move(t));
  }
  return result;
}

/// Variables of var(C) that some term subcircuit misses. Computed without
/// enumerating terms: a node can miss x when it is not a literal of x, a
/// sum whose either child can miss x, or a product whose both children can.
inline VarSet term_scope_gaps(const Circuit& c) {
  VarSet all(c.variable_count());
  all.set();
  std::vector<VarSet> miss(c.size(), all);
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    switch (n.kind) {
      case NodeKind::Literal: miss[g].reset(n.literal.var); break;
      case NodeKind::Constant: break;
      case NodeKind::Sum: miss[g] = miss[n.left] | miss[n.right]; break;
      case NodeKind::Product: miss[g] = miss[n.left] & miss[n.right]; break;
    }
  }
  return miss[c.root()] & circuit_scope(c);
}

struct TermLawReport {
  std::size_t term_count = 0;
  bool smooth_claim_applicable = false;
  bool all_terms_full_scope = true;
  bool deterministic_claim_applicable = false;
  bool pairwise_products_zero = true;
  std::vector<std::string> violations;

  bool holds() const {
    return (!smooth_claim_applicable || all_terms_full_scope) &&
           (!deterministic_claim_applicable || pairwise_products_zero);
  }
};

namespace detail {
inline bool term_product_is_zero(const TermSubcircuit& a, const TermSubcircuit& b) {
  if (a.coefficient.is_zero() || b.coefficient.is_zero()) return true;
  for (auto la : a.literals)
    for (auto lb : b.literals)
      if (la.var == lb.var && la.positive != lb.positive) return true;
  return false;
}
}  // namespace detail

/// For smooth circuits every term mentions every variable; for deterministic
/// circuits distinct terms multiply (resp. conjoin) to zero.
inline TermLawReport check_term_laws(const Circuit& c, std::size_t term_cap = kDefaultTermCap,
                                     std::size_t cap = kDefaultCap) {
  TermLawReport rep;
  auto terms = term_subcircuits(c, term_cap);
  rep.term_count = terms.size();
  rep.smooth_claim_applicable = is_smooth(c).holds();
  rep.deterministic_claim_applicable = is_deterministic(c, cap).holds();
  const VarSet full = circuit_scope(c);
  if (rep.smooth_claim_applicable) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (terms[i].scope(c.variable_count()) != full) {
        rep.all_terms_full_scope = false;
        rep.violations.push_back("term " + std::to_string(i) + " misses a variable");
      }
    }
  }
  if (rep.deterministic_claim_applicable) {
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (std::size_t j = i + 1; j < terms.size(); ++j)
        if (!detail::term_product_is_zero(terms[i], terms[j])) {
          rep.pairwise_products_zero = false;
          rep.violations.push_back("terms " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
        }
  }
  return rep;
}

}  // namespace acirc
