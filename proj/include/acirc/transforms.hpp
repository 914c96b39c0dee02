#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "acirc/circuit.hpp"
#include "acirc/oracle.hpp"
#include "acirc/properties.hpp"

namespace acirc {

/// Monotone AC -> NNF on the same graph: + becomes or, x becomes and, and
/// every non-zero constant becomes 1.
inline Circuit ac_to_nnf(const Circuit& c) {
  if (c.flavor() != Flavor::AC) throw Error(Errc::FlavorMismatch, "ac_to_nnf expects an AC");
  std::vector<Node> nodes = c.nodes();
  for (NodeId g = 0; g < nodes.size(); ++g) {
    Node& n = nodes[g];
    if (n.kind != NodeKind::Constant) continue;
    if (n.constant.sign() < 0)
      throw Error(Errc::NegativeConstant, "node " + std::to_string(g) + " holds " + n.constant.str());
    if (!n.constant.is_zero()) n.constant = Rational(1);
  }
  return Circuit(Flavor::NNF, c.variables(), std::move(nodes), c.root());
}

/// NNF -> monotone AC on the same graph: or becomes +, and becomes x.
inline Circuit nnf_to_ac(const Circuit& d) {
  if (d.flavor() != Flavor::NNF) throw Error(Errc::FlavorMismatch, "nnf_to_ac expects an NNF");
  return Circuit(Flavor::AC, d.variables(), d.nodes(), d.root());
}

/// An inserted conjunction/product with a literal on the edge parent -> child.
struct LinkInsertion {
  NodeId parent;
  NodeId child;
  Literal literal;
};

struct SmoothingResult {
  Circuit circuit;
  std::size_t inserted_nodes = 0;
  std::vector<LinkInsertion> links;  // only filled by smooth_by_links
};

/// Smooths a weakly decomposable circuit whose term subcircuits all mention
/// every variable. For each sum/or node g and each x in var(g_l) \ var(g_r),
/// the edge (g, g_r) receives a link with the unique literal of x found under
/// g_l, and symmetrically. Scopes of original nodes do not change, so one
/// pass in topological order suffices.
inline SmoothingResult smooth_by_links(const Circuit& d) {
  if (is_smooth(d).holds()) return {d, 0, {}};
  if (!is_weakly_decomposable(d).holds())
    throw Error(Errc::NotWeaklyDecomposable, "smooth_by_links expects a weakly decomposable circuit");
  if (VarSet gaps = term_scope_gaps(d); gaps.any())
    throw Error(Errc::PreconditionTermScopesDiffer,
                "some term subcircuit misses " + detail::set_text(d, gaps));
  auto sc = scopes(d);
  auto pol = polarity_sets(d);
  CircuitBuilder b(d.flavor(), d.variables());
  std::vector<NodeId> map(d.size(), kNoNode);
  SmoothingResult res;
  for (NodeId g = 0; g < d.size(); ++g) {
    const Node& n = d.nodes()[g];
    if (n.is_sink()) {
      map[g] = b.add(n);
      b.remember_sink(map[g]);
      continue;
    }
    NodeId l = map[n.left], r = map[n.right];
    if (n.kind == NodeKind::Sum) {
      auto link = [&](NodeId from, NodeId to, NodeId target) {
        VarSet missing = sc[from] - sc[to];
        for (auto x = missing.find_first(); x != VarSet::npos; x = missing.find_next(x)) {
          bool p = pol.positive[from].test(x), q = pol.negative[from].test(x);
          if (p && q)
            throw Error(Errc::AmbiguousPolarity, d.variable_name(x) + " occurs with both polarities below node " +
                                                     std::to_string(from));
          std::size_t before = b.size();
          NodeId lit = b.shared_literal(static_cast<VarIndex>(x), p);
          target = b.product(target, lit);
          res.inserted_nodes += b.size() - before;
          res.links.push_back({g, to, Literal{static_cast<VarIndex>(x), p}});
        }
        return target;
      };
      NodeId r2 = link(n.left, n.right, r);
      NodeId l2 = link(n.right, n.left, l);
      map[g] = b.sum(l2, r2);
    } else {
      map[g] = b.product(l, r);
    }
  }
  res.circuit = b.build(map[d.root()]);
  return res;
}

/// Smooths a decomposable circuit by multiplying the narrower child of every
/// sum/or node with (x + x̄) for each missing x. One gadget per variable is
/// shared across the circuit.
inline SmoothingResult smooth_by_padding(const Circuit& c) {
  if (is_smooth(c).holds()) return {c, 0, {}};
  if (!is_decomposable(c).holds()) throw Error(Errc::NotDecomposable, "smooth_by_padding expects a decomposable circuit");
  auto sc = scopes(c);
  CircuitBuilder b(c.flavor(), c.variables());
  std::vector<NodeId> map(c.size(), kNoNode);
  // Sinks first so the gadgets can reuse existing literal sinks.
  for (NodeId g = 0; g < c.size(); ++g) {
    if (!c.nodes()[g].is_sink()) continue;
    map[g] = b.add(c.nodes()[g]);
    b.remember_sink(map[g]);
  }
  std::vector<NodeId> gadget(c.variable_count(), kNoNode);
  std::size_t inserted = 0;
  auto pad = [&](NodeId target, const VarSet& missing) {
    for (auto x = missing.find_first(); x != VarSet::npos; x = missing.find_next(x)) {
      std::size_t before = b.size();
      if (gadget[x] == kNoNode)
        gadget[x] = b.sum(b.shared_literal(static_cast<VarIndex>(x), true),
                          b.shared_literal(static_cast<VarIndex>(x), false));
      target = b.product(target, gadget[x]);
      inserted += b.size() - before;
    }
    return target;
  };
  for (NodeId g = 0; g < c.size(); ++g) {
    const Node& n = c.nodes()[g];
    if (n.is_sink()) continue;
    NodeId l = map[n.left], r = map[n.right];
    if (n.kind == NodeKind::Sum) {
      NodeId l2 = pad(l, sc[n.right] - sc[n.left]);
      NodeId r2 = pad(r, sc[n.left] - sc[n.right]);
      map[g] = b.sum(l2, r2);
    } else {
      map[g] = b.product(l, r);
    }
  }
  return {b.build(map[c.root()]), inserted, {}};
}

/// Replaces every negative constant by its absolute value. Valid for
/// deterministic weakly decomposable AC with a non-negative table, where
/// every term carries a non-negative coefficient.
inline Circuit flip_negative_constants(const Circuit& c, std::size_t cap = kDefaultCap) {
  if (c.flavor() != Flavor::AC) throw Error(Errc::FlavorMismatch, "flip_negative_constants expects an AC");
  if (auto rep = is_weakly_decomposable(c); !rep.holds())
    throw Error(Errc::NotWeaklyDecomposable, "node " + std::to_string(rep.witnesses.front().node) + ": " +
                                                 rep.witnesses.front().explanation);
  if (auto rep = is_deterministic(c, cap); !rep.holds())
    throw Error(Errc::NotDeterministic, "node " + std::to_string(rep.witnesses.front().node) + ": " +
                                            rep.witnesses.front().explanation);
  if (!is_nonnegative(function_table(c, cap))) throw Error(Errc::NotPositive, "the circuit takes a negative value");
  std::vector<Node> nodes = c.nodes();
  for (auto& n : nodes)
    if (n.kind == NodeKind::Constant && n.constant.sign() < 0) n.constant = -n.constant;
  return Circuit(c.flavor(), c.variables(), std::move(nodes), c.root());
}

/// Existential quantification of Z: sinks of Z-variables become 1. Requires
/// that no and-node shares a Z-variable between its children (decomposable
/// circuits always qualify).
inline Circuit forget(const Circuit& d, const std::vector<std::string>& z) {
  if (d.flavor() != Flavor::NNF) throw Error(Errc::FlavorMismatch, "forget expects an NNF");
  VarSet zs(d.variable_count());
  VarSet all = circuit_scope(d);
  for (auto& name : z) {
    auto v = d.find_variable(name);
    if (!v || !all.test(*v)) throw Error(Errc::UnknownVariable, name + " is not a variable of the circuit");
    zs.set(*v);
  }
  auto sc = scopes(d);
  for (NodeId g = 0; g < d.size(); ++g) {
    const Node& n = d.nodes()[g];
    if (n.kind != NodeKind::Product) continue;
    VarSet shared = sc[n.left] & sc[n.right] & zs;
    if (shared.any())
      throw Error(Errc::NotDecomposable, "node " + std::to_string(g) + " shares " + detail::set_text(d, shared));
  }
  std::vector<Node> nodes = d.nodes();
  for (auto& n : nodes)
    if (n.kind == NodeKind::Literal && zs.test(n.literal.var)) n = Node::make_constant(Rational(1));
  return Circuit(d.flavor(), d.variables(), std::move(nodes), d.root());
}

/// Models of weight exactly k. Each node g gets one copy per weight w its
/// proof trees can reach; impossible copies are dropped rather than replaced
/// by 0, so the output stays smooth. With `auto_smooth` a non-smooth input is
/// padded first.
inline Circuit fix_weight(const Circuit& d, int k, bool auto_smooth = false) {
  if (d.flavor() != Flavor::NNF) throw Error(Errc::FlavorMismatch, "fix_weight expects an NNF");
  if (!is_decomposable(d).holds()) throw Error(Errc::NotDecomposable, "fix_weight expects a decomposable NNF");
  const int n = static_cast<int>(circuit_scope(d).count());
  if (k < 0 || k > n) throw Error(Errc::BadWeight, "weight " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  if (!is_smooth(d).holds()) {
    if (!auto_smooth) throw Error(Errc::NotSmooth, "fix_weight expects a smooth NNF");
    return fix_weight(smooth_by_padding(d).circuit, k, false);
  }
  auto sc = scopes(d);
  CircuitBuilder b(Flavor::NNF, d.variables());
  std::vector<std::vector<NodeId>> copy(d.size());
  for (NodeId g = 0; g < d.size(); ++g) {
    const Node& nd = d.nodes()[g];
    const int top = std::min<int>(k, static_cast<int>(sc[g].count()));
    auto& out = copy[g];
    out.assign(top + 1, kNoNode);
    switch (nd.kind) {
      case NodeKind::Literal:
        if (nd.literal.positive && top >= 1) out[1] = b.shared_literal(nd.literal.var, true);
        if (!nd.literal.positive) out[0] = b.shared_literal(nd.literal.var, false);
        break;
      case NodeKind::Constant:
        if (!nd.constant.is_zero()) out[0] = b.shared_constant(Rational(1));
        break;
      case NodeKind::Sum:
        for (int w = 0; w <= top; ++w) {
          auto at = [&](NodeId ch) { return w < static_cast<int>(copy[ch].size()) ? copy[ch][w] : kNoNode; };
          NodeId a = at(nd.left), c2 = at(nd.right);
          if (a != kNoNode && c2 != kNoNode) out[w] = b.sum(a, c2);
          else out[w] = a != kNoNode ? a : c2;
        }
        break;
      case NodeKind::Product:
        for (int w = 0; w <= top; ++w) {
          NodeId acc = kNoNode;
          const auto& L = copy[nd.left];
          const auto& R = copy[nd.right];
          for (int wl = 0; wl < static_cast<int>(L.size()) && wl <= w; ++wl) {
            int wr = w - wl;
            if (L[wl] == kNoNode || wr >= static_cast<int>(R.size()) || R[wr] == kNoNode) continue;
            NodeId p = b.product(L[wl], R[wr]);
            acc = acc == kNoNode ? p : b.sum(acc, p);
          }
          out[w] = acc;
        }
        break;
    }
  }
  const auto& rc = copy[d.root()];
  if (k >= static_cast<int>(rc.size()) || rc[k] == kNoNode) {
    CircuitBuilder empty(Flavor::NNF, d.variables());
    return empty.build(empty.constant(Rational(0)));
  }
  return b.build(rc[k]);
}

}  // namespace acirc
