#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "acirc/circuit.hpp"

namespace acirc {

inline constexpr std::size_t kDefaultCap = 16;

/// Exact value of a function for every full assignment of `domain`.
/// Entry i belongs to the assignment giving domain[k] the value of bit k of i.
struct FunctionTable {
  Flavor flavor = Flavor::AC;
  std::vector<std::string> domain;
  std::vector<Rational> values;

  std::size_t size() const { return values.size(); }
  const Rational& operator[](std::size_t i) const { return values[i]; }

  std::size_t index_of(const Assignment& a) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < domain.size(); ++k) {
      auto v = a.get(domain[k]);
      if (!v) throw Error(Errc::IncompleteAssignment, "no value for " + domain[k]);
      if (*v) idx |= std::size_t{1} << k;
    }
    return idx;
  }
  Assignment assignment_at(std::size_t idx) const {
    Assignment a;
    for (std::size_t k = 0; k < domain.size(); ++k) a.set(domain[k], (idx >> k) & 1U);
    return a;
  }
  const Rational& at(const Assignment& a) const { return values.at(index_of(a)); }

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
};

namespace detail {
inline void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap || n >= 63)
    throw Error(Errc::TooManyVariables, std::to_string(n) + " variables exceed the cap of " + std::to_string(cap));
}

/// Evaluates node g of c for every assignment of `domain` (a superset of var(g)).
inline FunctionTable node_table(const Circuit& c, NodeId g, const std::vector<std::string>& domain,
                                std::size_t cap) {
  check_cap(domain.size(), cap);
  VarSet sc = scope(c, g);
  std::vector<VarIndex> pos(domain.size(), kNoNode);
  VarSet covered(c.variable_count());
  for (std::size_t k = 0; k < domain.size(); ++k) {
    if (auto v = c.find_variable(domain[k])) {
      pos[k] = *v;
      covered.set(*v);
    }
  }
  if (!sc.is_subset_of(covered))
    throw Error(Errc::ScopeMismatch, "table domain does not cover the scope of node " + std::to_string(g));
  FunctionTable t{c.flavor(), domain, {}};
  const std::size_t rows = std::size_t{1} << domain.size();
  t.values.reserve(rows);
  std::vector<std::uint8_t> bits(c.variable_count(), 0);
  auto order = cone(c, g);
  Evaluator ev(c);
  for (std::size_t idx = 0; idx < rows; ++idx) {
    for (std::size_t k = 0; k < domain.size(); ++k)
      if (pos[k] != kNoNode) bits[pos[k]] = (idx >> k) & 1U;
    ev.run(bits, order);
    t.values.push_back(ev.value(g));
  }
  return t;
}
}  // namespace detail

/// Table of the root over var(C), variables in the circuit's table order.
inline FunctionTable function_table(const Circuit& c, std::size_t cap = kDefaultCap) {
  return detail::node_table(c, c.root(), names_of(c, circuit_scope(c)), cap);
}

/// Table of the root over an explicit domain that must contain var(C).
inline FunctionTable function_table(const Circuit& c, const std::vector<std::string>& domain,
                                    std::size_t cap = kDefaultCap) {
  return detail::node_table(c, c.root(), domain, cap);
}

/// Table of the subcircuit rooted at g, over var(g).
inline FunctionTable subcircuit_table(const Circuit& c, NodeId g, std::size_t cap = kDefaultCap) {
  return detail::node_table(c, g, names_of(c, scope(c, g)), cap);
}

/// A set of full assignments to `domain`, kept as sorted table indices.
struct ModelSet {
  std::vector<std::string> domain;
  std::vector<std::uint64_t> indices;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  std::vector<Assignment> assignments() const {
    std::vector<Assignment> out;
    for (auto idx : indices) {
      Assignment a;
      for (std::size_t k = 0; k < domain.size(); ++k) a.set(domain[k], (idx >> k) & 1U);
      out.push_back(std::move(a));
    }
    return out;
  }
  friend bool operator==(const ModelSet&, const ModelSet&) = default;
};

inline ModelSet support_of(const FunctionTable& t) {
  ModelSet m{t.domain, {}};
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!t[i].is_zero()) m.indices.push_back(i);
  return m;
}

/// supp(C) for AC, sat(C) for NNF.
inline ModelSet support(const Circuit& c, std::size_t cap = kDefaultCap) {
  return support_of(function_table(c, cap));
}

inline ModelSet node_support(const Circuit& c, NodeId g, std::size_t cap = kDefaultCap) {
  return support_of(subcircuit_table(c, g, cap));
}

namespace detail {
inline std::set<std::string> scope_name_set(const Circuit& c) {
  auto v = names_of(c, circuit_scope(c));
  return {v.begin(), v.end()};
}
}  // namespace detail

/// Table equality over the shared scope; the scopes must coincide.
inline bool equivalent(const Circuit& a, const Circuit& b, std::size_t cap = kDefaultCap) {
  if (detail::scope_name_set(a) != detail::scope_name_set(b))
    throw Error(Errc::ScopeMismatch, "circuits have different variable sets");
  auto dom = names_of(a, circuit_scope(a));
  return function_table(a, dom, cap).values == function_table(b, dom, cap).values;
}

/// supp(C) == sat(D) for an AC C and an NNF D over the same variables.
inline bool support_equal(const Circuit& ac, const Circuit& nnf, std::size_t cap = kDefaultCap) {
  if (ac.flavor() != Flavor::AC || nnf.flavor() != Flavor::NNF)
    throw Error(Errc::FlavorMismatch, "support_equal expects an AC and an NNF");
  if (detail::scope_name_set(ac) != detail::scope_name_set(nnf))
    throw Error(Errc::ScopeMismatch, "circuits have different variable sets");
  auto dom = names_of(ac, circuit_scope(ac));
  return support_of(function_table(ac, dom, cap)) == support_of(function_table(nnf, dom, cap));
}

inline bool is_nonnegative(const FunctionTable& t) {
  return std::all_of(t.values.begin(), t.values.end(), [](const Rational& r) { return r.sign() >= 0; });
}

// ---------------------------------------------------------------------------
// CSV: one column per domain variable, then "value" as an exact fraction.

inline std::string to_csv(const FunctionTable& t) {
  std::ostringstream os;
  for (const auto& v : t.domain) os << v << ',';
  os << "value\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t k = 0; k < t.domain.size(); ++k) os << ((i >> k) & 1U) << ',';
    os << t[i].str() << '\n';
  }
  return os.str();
}

inline FunctionTable table_from_csv(std::string_view text, Flavor flavor = Flavor::AC) {
  auto split = [](std::string_view line) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
      auto comma = line.find(',', pos);
      cells.emplace_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return cells;
  };
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) throw Error(Errc::SyntaxError, "empty table");
  auto header = split(lines[0]);
  if (header.empty() || header.back() != "value") throw Error(Errc::SyntaxError, "header must end with 'value'");
  FunctionTable t{flavor, {header.begin(), header.end() - 1}, {}};
  detail::check_cap(t.domain.size(), 62);
  const std::size_t rows = std::size_t{1} << t.domain.size();
  if (lines.size() - 1 != rows) throw Error(Errc::SyntaxError, "expected " + std::to_string(rows) + " rows");
  t.values.assign(rows, Rational(0));
  std::vector<char> seen(rows, 0);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto cells = split(lines[li]);
    if (cells.size() != header.size())
      throw Error(Errc::SyntaxError, "line " + std::to_string(li + 1) + ": wrong number of cells");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < t.domain.size(); ++k) {
      if (cells[k] == "1") idx |= std::size_t{1} << k;
      else if (cells[k] != "0") throw Error(Errc::SyntaxError, "line " + std::to_string(li + 1) + ": bit expected");
    }
    if (seen[idx]) throw Error(Errc::SyntaxError, "line " + std::to_string(li + 1) + ": duplicate row");
    seen[idx] = 1;
    t.values[idx] = Rational::parse(cells.back());
  }
  return t;
}

}  // namespace acirc
