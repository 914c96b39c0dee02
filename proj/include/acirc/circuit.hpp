#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "acirc/error.hpp"
#include "acirc/rational.hpp"

namespace acirc {

using NodeId = std::uint32_t;
using VarIndex = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Set of variables, indexed by the owning circuit's variable table.
using VarSet = boost::dynamic_bitset<>;

/// AC circuits use + and x over rational constants; NNF circuits read the same
/// node kinds as "or" / "and" over the constants 0 and 1.
enum class Flavor { AC, NNF };

inline std::string_view flavor_name(Flavor f) { return f == Flavor::AC ? "ac" : "nnf"; }

enum class NodeKind : std::uint8_t { Literal, Constant, Sum, Product };

struct Literal {
  VarIndex var = 0;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Node {
  NodeKind kind = NodeKind::Constant;
  Literal literal{};
  Rational constant{};
  NodeId left = kNoNode;
  NodeId right = kNoNode;

  static Node make_literal(VarIndex v, bool positive) {
    Node n;
    n.kind = NodeKind::Literal;
    n.literal = {v, positive};
    return n;
  }
  static Node make_constant(Rational c) {
    Node n;
    n.kind = NodeKind::Constant;
    n.constant = std::move(c);
    return n;
  }
  static Node make_sum(NodeId l, NodeId r) {
    Node n;
    n.kind = NodeKind::Sum;
    n.left = l;
    n.right = r;
    return n;
  }
  static Node make_product(NodeId l, NodeId r) {
    Node n;
    n.kind = NodeKind::Product;
    n.left = l;
    n.right = r;
    return n;
  }

  bool is_sink() const { return kind == NodeKind::Literal || kind == NodeKind::Constant; }
  bool is_internal() const { return !is_sink(); }

  friend bool operator==(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case NodeKind::Literal: return a.literal == b.literal;
      case NodeKind::Constant: return a.constant == b.constant;
      default: return a.left == b.left && a.right == b.right;
    }
  }
};

/// Rooted DAG stored as a flat, topologically ordered node array: children
/// always carry smaller ids than their parents. Immutable once built.
class Circuit {
 public:
  Circuit() = default;
  Circuit(Flavor flavor, std::vector<std::string> vars, std::vector<Node> nodes, NodeId root)
      : flavor_(flavor), vars_(std::move(vars)), nodes_(std::move(nodes)), root_(root) {
    for (VarIndex i = 0; i < vars_.size(); ++i) index_.emplace(vars_[i], i);
  }

  Flavor flavor() const { return flavor_; }
  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t variable_count() const { return vars_.size(); }
  const std::string& variable_name(VarIndex v) const { return vars_.at(v); }
  std::optional<VarIndex> find_variable(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId g) const {
    if (g >= nodes_.size()) throw Error(Errc::UnknownNode, "node " + std::to_string(g));
    return nodes_[g];
  }
  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.flavor_ == b.flavor_ && a.vars_ == b.vars_ && a.nodes_ == b.nodes_ && a.root_ == b.root_;
  }

 private:
  Flavor flavor_ = Flavor::AC;
  std::vector<std::string> vars_;
  std::vector<Node> nodes_;
  NodeId root_ = 0;
  std::unordered_map<std::string, VarIndex> index_;
};

inline std::string literal_text(const Circuit& c, Literal l) {
  return (l.positive ? "" : "-") + c.variable_name(l.var);
}

// ---------------------------------------------------------------------------
// Construction

/// Appends nodes in order. `shared_literal` / `shared_constant` hash-cons sinks
/// for transforms that are allowed to merge them; the plain factories never do.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(Flavor flavor, std::vector<std::string> vars = {}) : flavor_(flavor) {
    for (auto& v : vars) var(v);
  }

  Flavor flavor() const { return flavor_; }

  VarIndex var(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    auto idx = static_cast<VarIndex>(vars_.size());
    vars_.emplace_back(name);
    index_.emplace(std::string(name), idx);
    return idx;
  }
  const std::vector<std::string>& variables() const { return vars_; }

  NodeId add(Node n) {
    if (n.is_internal() && (n.left >= nodes_.size() || n.right >= nodes_.size()))
      throw Error(Errc::ForwardReference, "child must already exist");
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
  }
  NodeId literal(VarIndex v, bool positive) { return add(Node::make_literal(v, positive)); }
  NodeId literal(std::string_view name, bool positive) { return literal(var(name), positive); }
  NodeId constant(Rational c) { return add(Node::make_constant(std::move(c))); }
  NodeId sum(NodeId l, NodeId r) { return add(Node::make_sum(l, r)); }
  NodeId product(NodeId l, NodeId r) { return add(Node::make_product(l, r)); }

  NodeId shared_literal(VarIndex v, bool positive) {
    auto key = std::make_pair(v, positive);
    auto it = lit_cache_.find(key);
    if (it != lit_cache_.end()) return it->second;
    NodeId id = literal(v, positive);
    lit_cache_.emplace(key, id);
    return id;
  }
  NodeId shared_literal(std::string_view name, bool positive) { return shared_literal(var(name), positive); }
  NodeId shared_constant(const Rational& c) {
    auto key = c.str();
    auto it = const_cache_.find(key);
    if (it != const_cache_.end()) return it->second;
    NodeId id = constant(c);
    const_cache_.emplace(key, id);
    return id;
  }
  /// Registers an already-emitted sink so later shared_* calls reuse it.
  void remember_sink(NodeId id) {
    const Node& n = nodes_.at(id);
    if (n.kind == NodeKind::Literal)
      lit_cache_.try_emplace({n.literal.var, n.literal.positive}, id);
    else if (n.kind == NodeKind::Constant)
      const_cache_.try_emplace(n.constant.str(), id);
  }

  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }

  /// Keeps exactly the nodes reachable from `root`, preserving relative order.
  Circuit build(NodeId root) const {
    if (root >= nodes_.size()) throw Error(Errc::UnknownNode, "root " + std::to_string(root));
    std::vector<char> keep(nodes_.size(), 0);
    keep[root] = 1;
    for (NodeId g = root + 1; g-- > 0;) {
      if (!keep[g]) continue;
      const Node& n = nodes_[g];
      if (n.is_internal()) keep[n.left] = keep[n.right] = 1;
    }
    std::vector<NodeId> remap(nodes_.size(), kNoNode);
    std::vector<Node> out;
    for (NodeId g = 0; g <= root; ++g) {
      if (!keep[g]) continue;
      Node n = nodes_[g];
      if (n.is_internal()) {
        n.left = remap[n.left];
        n.right = remap[n.right];
      }
      remap[g] = static_cast<NodeId>(out.size());
      out.push_back(std::move(n));
    }
    return Circuit(flavor_, vars_, std::move(out), remap[root]);
  }

  /// Keeps every node; the caller guarantees the result has a single source.
  Circuit build_unpruned(NodeId root) const { return Circuit(flavor_, vars_, nodes_, root); }

 private:
  Flavor flavor_;
  std::vector<std::string> vars_;
  std::unordered_map<std::string, VarIndex> index_;
  std::vector<Node> nodes_;
  std::map<std::pair<VarIndex, bool>, NodeId> lit_cache_;
  std::map<std::string, NodeId> const_cache_;
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationIssue {
  Errc code;
  NodeId node;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

inline ValidationReport validate(const Circuit& c) {
  ValidationReport rep;
  auto issue = [&](Errc code, NodeId g, std::string msg) { rep.issues.push_back({code, g, std::move(msg)}); };
  const auto& nodes = c.nodes();
  if (nodes.empty()) {
    issue(Errc::UnknownNode, kNoNode, "circuit has no nodes");
    return rep;
  }
  if (c.root() >= nodes.size()) {
    issue(Errc::UnknownNode, c.root(), "root does not name a node");
    return rep;
  }
  std::vector<int> parents(nodes.size(), 0);
  for (NodeId g = 0; g < nodes.size(); ++g) {
    const Node& n = nodes[g];
    if (n.is_sink()) {
      if (n.left != kNoNode || n.right != kNoNode) issue(Errc::BadArity, g, "sink with successors");
      if (n.kind == NodeKind::Literal && n.literal.var >= c.variable_count())
        issue(Errc::UnknownVariable, g, "literal references unknown variable");
      if (n.kind == NodeKind::Constant && c.flavor() == Flavor::NNF && !n.constant.is_zero() &&
          !n.constant.is_one())
        issue(Errc::NonBooleanNNFConstant, g, "NNF constant " + n.constant.str());
      continue;
    }
    if (n.left == kNoNode || n.right == kNoNode) {
      issue(Errc::BadArity, g, "internal node needs exactly two successors");
      continue;
    }
    bool ordered = true;
    for (NodeId ch : {n.left, n.right}) {
      if (ch >= g) {
        issue(Errc::CycleDetected, g, "successor " + std::to_string(ch) + " does not precede node " +
                                          std::to_string(g));
        ordered = false;
      }
    }
    if (ordered) {
      ++parents[n.left];
      if (n.right != n.left) ++parents[n.right];
    }
  }
  for (NodeId g = 0; g < nodes.size(); ++g)
    if (g != c.root() && parents[g] == 0)
      issue(Errc::MultipleSources, g, "node " + std::to_string(g) + " is a second source");
  return rep;
}

inline void require_valid(const Circuit& c) {
  auto rep = validate(c);
  if (!rep.ok()) {
    const auto& i = rep.issues.front();
    throw Error(i.code, "node " + std::to_string(i.node) + ": " + i.message);
  }
}

// ---------------------------------------------------------------------------
// Scopes

/// var(g) for every node, bottom-up.
inline std::vector<VarSet> scopes(const Circuit& c) {
  std::vector<VarSet> out(c.size(), VarSet(c.variable_count()));
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    switch (n.kind) {
      case NodeKind::Literal: out[g].set(n.literal.var); break;
      case NodeKind::Constant: break;
      default: out[g] = out[n.left] | out[n.right];
    }
  }
  return out;
}

inline VarSet scope(const Circuit& c, NodeId g) {
  c.node(g);
  return scopes(c)[g];
}

inline VarSet circuit_scope(const Circuit& c) { return scope(c, c.root()); }

/// Nodes reachable from g, in increasing id order.
inline std::vector<NodeId> cone(const Circuit& c, NodeId g) {
  c.node(g);
  std::vector<char> mark(g + 1, 0);
  mark[g] = 1;
  for (NodeId h = g + 1; h-- > 0;) {
    if (!mark[h]) continue;
    const Node& n = c.nodes()[h];
    if (n.is_internal()) mark[n.left] = mark[n.right] = 1;
  }
  std::vector<NodeId> out;
  for (NodeId h = 0; h <= g; ++h)
    if (mark[h]) out.push_back(h);
  return out;
}

/// Variables whose positive (resp. negative) literal sinks are reachable, per node.
struct PolaritySets {
  std::vector<VarSet> positive;
  std::vector<VarSet> negative;
};

inline PolaritySets polarity_sets(const Circuit& c) {
  PolaritySets p{std::vector<VarSet>(c.size(), VarSet(c.variable_count())),
                 std::vector<VarSet>(c.size(), VarSet(c.variable_count()))};
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    if (n.kind == NodeKind::Literal) {
      (n.literal.positive ? p.positive : p.negative)[g].set(n.literal.var);
    } else if (n.is_internal()) {
      p.positive[g] = p.positive[n.left] | p.positive[n.right];
      p.negative[g] = p.negative[n.left] | p.negative[n.right];
    }
  }
  return p;
}

inline std::vector<std::string> names_of(const Circuit& c, const VarSet& s) {
  std::vector<std::string> out;
  for (auto i = s.find_first(); i != VarSet::npos; i = s.find_next(i)) out.push_back(c.variable_name(i));
  return out;
}

// ---------------------------------------------------------------------------
// Assignments

/// 0/1 valuation of a finite set of named variables.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<std::string, bool>> init) {
    for (auto& [k, v] : init) values_[k] = v;
  }

  void set(const std::string& name, bool value) { values_[name] = value; }
  std::optional<bool> get(std::string_view name) const {
    auto it = values_.find(std::string(name));
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(std::string_view name) const { return values_.count(std::string(name)) != 0; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::map<std::string, bool>& values() const { return values_; }

  /// "x=1,y=0"; the empty string is the empty assignment.
  static Assignment parse(std::string_view text) {
    Assignment a;
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto comma = text.find(',', pos);
      auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0 || eq + 2 != item.size() ||
          (item.back() != '0' && item.back() != '1'))
        throw Error(Errc::SyntaxError, "bad assignment item '" + std::string(item) + "'");
      std::string name(item.substr(0, eq));
      bool value = item.back() == '1';
      if (auto prev = a.get(name); prev && *prev != value)
        throw Error(Errc::InconsistentUnion, "variable " + name + " assigned twice");
      a.set(name, value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return a;
  }

  std::string str() const {
    std::string s;
    for (auto& [k, v] : values_) {
      if (!s.empty()) s += ',';
      s += k + "=" + (v ? "1" : "0");
    }
    return s;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::map<std::string, bool> values_;
};

inline int weight(const Assignment& a) {
  int w = 0;
  for (auto& [k, v] : a.values()) w += v ? 1 : 0;
  return w;
}

/// a ∪ b; both must agree on shared variables.
inline Assignment merge(const Assignment& a, const Assignment& b) {
  Assignment out = a;
  for (auto& [k, v] : b.values()) {
    if (auto prev = a.get(k); prev && *prev != v)
      throw Error(Errc::InconsistentUnion, "variable " + k + " has conflicting values");
    out.set(k, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {
struct IntOverflow {};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw IntOverflow{};
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntOverflow{};
  return r;
}
}  // namespace detail

/// Computes the value of every node under a full 0/1 valuation of the
/// circuit's variable table. NNF circuits run in Boolean mode; AC circuits
/// with integer constants run on checked int64 and switch to exact rationals
/// the first time an intermediate value overflows.
class Evaluator {
 public:
  explicit Evaluator(const Circuit& c) : c_(&c) {
    if (c.flavor() == Flavor::NNF) {
      mode_ = Mode::Boolean;
      bools_.assign(c.size(), 0);
      return;
    }
    mode_ = Mode::Integer;
    int_consts_.assign(c.size(), 0);
    for (NodeId g = 0; g < c.size(); ++g) {
      const Node& n = c.nodes()[g];
      if (n.kind != NodeKind::Constant) continue;
      auto v = n.constant.as_int64();
      if (!v) {
        mode_ = Mode::Exact;
        break;
      }
      int_consts_[g] = *v;
    }
    if (mode_ == Mode::Integer)
      ints_.assign(c.size(), 0);
    else
      exact_.assign(c.size(), mpq_class(0));
  }

  /// `bits[v]` is the value of variable v of the circuit's table.
  void run(std::span<const std::uint8_t> bits) { run_impl(bits, nullptr); }
  /// Evaluates only `order`, which must be closed under successors and ascending.
  void run(std::span<const std::uint8_t> bits, std::span<const NodeId> order) { run_impl(bits, &order); }

  bool nonzero(NodeId g) const {
    switch (mode_) {
      case Mode::Boolean: return bools_[g] != 0;
      case Mode::Integer: return ints_[g] != 0;
      case Mode::Exact: return sgn(exact_[g]) != 0;
    }
    return false;
  }
  int sign(NodeId g) const {
    switch (mode_) {
      case Mode::Boolean: return bools_[g] ? 1 : 0;
      case Mode::Integer: return ints_[g] > 0 ? 1 : (ints_[g] < 0 ? -1 : 0);
      case Mode::Exact: return sgn(exact_[g]);
    }
    return 0;
  }
  Rational value(NodeId g) const {
    switch (mode_) {
      case Mode::Boolean: return Rational(bools_[g] ? 1 : 0);
      case Mode::Integer: return Rational(static_cast<long>(ints_[g]));
      case Mode::Exact: return Rational(exact_[g]);
    }
    return {};
  }

 private:
  enum class Mode { Boolean, Integer, Exact };

  void run_impl(std::span<const std::uint8_t> bits, const std::span<const NodeId>* order) {
    if (mode_ == Mode::Integer) {
      try {
        run_mode(bits, order);
        return;
      } catch (const detail::IntOverflow&) {
        mode_ = Mode::Exact;
        ints_.clear();
        exact_.assign(c_->size(), mpq_class(0));
      }
    }
    run_mode(bits, order);
  }

  void run_mode(std::span<const std::uint8_t> bits, const std::span<const NodeId>* order) {
    if (order) {
      for (NodeId g : *order) step(g, bits);
    } else {
      for (NodeId g = 0; g < c_->size(); ++g) step(g, bits);
    }
  }

  void step(NodeId g, std::span<const std::uint8_t> bits) {
    const Node& n = c_->nodes()[g];
    switch (mode_) {
      case Mode::Boolean:
        switch (n.kind) {
          case NodeKind::Literal: bools_[g] = (bits[n.literal.var] != 0) == n.literal.positive; break;
          case NodeKind::Constant: bools_[g] = !n.constant.is_zero(); break;
          case NodeKind::Sum: bools_[g] = bools_[n.left] || bools_[n.right]; break;
          case NodeKind::Product: bools_[g] = bools_[n.left] && bools_[n.right]; break;
        }
        break;
      case Mode::Integer:
        switch (n.kind) {
          case NodeKind::Literal: ints_[g] = ((bits[n.literal.var] != 0) == n.literal.positive) ? 1 : 0; break;
          case NodeKind::Constant: ints_[g] = int_consts_[g]; break;
          case NodeKind::Sum: ints_[g] = detail::checked_add(ints_[n.left], ints_[n.right]); break;
          case NodeKind::Product: ints_[g] = detail::checked_mul(ints_[n.left], ints_[n.right]); break;
        }
        break;
      case Mode::Exact:
        switch (n.kind) {
          case NodeKind::Literal: exact_[g] = ((bits[n.literal.var] != 0) == n.literal.positive) ? 1 : 0; break;
          case NodeKind::Constant: exact_[g] = n.constant.raw(); break;
          case NodeKind::Sum: mpq_add(exact_[g].get_mpq_t(), exact_[n.left].get_mpq_t(), exact_[n.right].get_mpq_t()); break;
          case NodeKind::Product: mpq_mul(exact_[g].get_mpq_t(), exact_[n.left].get_mpq_t(), exact_[n.right].get_mpq_t()); break;
        }
        break;
    }
  }

  const Circuit* c_;
  Mode mode_;
  std::vector<std::uint8_t> bools_;
  std::vector<std::int64_t> int_consts_;
  std::vector<std::int64_t> ints_;
  std::vector<mpq_class> exact_;
};

/// Value of the root at `a`; NNF circuits yield 0 or 1.
inline Rational evaluate(const Circuit& c, const Assignment& a) {
  VarSet sc = circuit_scope(c);
  std::vector<std::uint8_t> bits(c.variable_count(), 0);
  for (VarIndex v = 0; v < c.variable_count(); ++v) {
    auto val = a.get(c.variable_name(v));
    if (val) {
      bits[v] = *val ? 1 : 0;
    } else if (sc.test(v)) {
      throw Error(Errc::IncompleteAssignment, "no value for variable " + c.variable_name(v));
    }
  }
  Evaluator ev(c);
  auto order = cone(c, c.root());
  ev.run(bits, order);
  return ev.value(c.root());
}

// ---------------------------------------------------------------------------
// Rewrites that keep the graph

/// Replaces every sink of an assigned variable by the matching constant.
/// Node count and edges are unchanged.
inline Circuit condition(const Circuit& c, const Assignment& a) {
  VarSet sc = circuit_scope(c);
  std::vector<int> value(c.variable_count(), -1);
  for (auto& [name, v] : a.values()) {
    auto idx = c.find_variable(name);
    if (!idx || !sc.test(*idx)) throw Error(Errc::UnknownVariable, name + " is not a variable of the circuit");
    value[*idx] = v ? 1 : 0;
  }
  std::vector<Node> nodes = c.nodes();
  for (auto& n : nodes) {
    if (n.kind != NodeKind::Literal || value[n.literal.var] < 0) continue;
    int v = value[n.literal.var];
    n = Node::make_constant(Rational(n.literal.positive ? v : 1 - v));
  }
  return Circuit(c.flavor(), c.variables(), std::move(nodes), c.root());
}

/// Replaces node g by a constant sink, leaving its former successors in place.
inline Circuit substitute_constant(const Circuit& c, NodeId g, const Rational& value) {
  c.node(g);
  std::vector<Node> nodes = c.nodes();
  nodes[g] = Node::make_constant(value);
  return Circuit(c.flavor(), c.variables(), std::move(nodes), c.root());
}

/// Constant propagation plus removal of unreachable nodes. Every input node
/// maps to at most one output node, so the size never grows.
inline Circuit simplify(const Circuit& c) {
  CircuitBuilder b(c.flavor(), c.variables());
  std::vector<NodeId> map(c.size(), kNoNode);
  auto const_of = [&](NodeId newid) -> const Rational* {
    const Node& n = b.node(newid);
    return n.kind == NodeKind::Constant ? &n.constant : nullptr;
  };
  const bool nnf = c.flavor() == Flavor::NNF;
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    if (n.is_sink()) {
      map[g] = b.add(n);
      continue;
    }
    NodeId l = map[n.left], r = map[n.right];
    const Rational* cl = const_of(l);
    const Rational* cr = const_of(r);
    if (n.kind == NodeKind::Sum) {
      if (cl && cr) {
        map[g] = b.constant(nnf ? Rational((cl->is_zero() && cr->is_zero()) ? 0 : 1) : *cl + *cr);
      } else if (cl && cl->is_zero()) {
        map[g] = r;
      } else if (cr && cr->is_zero()) {
        map[g] = l;
      } else if (nnf && ((cl && cl->is_one()) || (cr && cr->is_one()))) {
        map[g] = cl && cl->is_one() ? l : r;
      } else {
        map[g] = b.sum(l, r);
      }
    } else {
      if (cl && cr) {
        map[g] = b.constant(nnf ? Rational((cl->is_zero() || cr->is_zero()) ? 0 : 1) : *cl * *cr);
      } else if (cl && cl->is_zero()) {
        map[g] = l;
      } else if (cr && cr->is_zero()) {
        map[g] = r;
      } else if (cl && cl->is_one()) {
        map[g] = r;
      } else if (cr && cr->is_one()) {
        map[g] = l;
      } else {
        map[g] = b.product(l, r);
      }
    }
  }
  return b.build(map[c.root()]);
}

}  // namespace acirc
