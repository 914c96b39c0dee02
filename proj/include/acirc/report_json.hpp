#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "acirc/acirc.hpp"

namespace acirc {

inline constexpr int kReportSchemaVersion = 1;

using json = nlohmann::ordered_json;

inline json report_header(const std::string& command) {
  return json{{"schema_version", kReportSchemaVersion}, {"command", command}};
}

inline json to_json(const Assignment& a) {
  json j = json::object();
  for (auto& [k, v] : a.values()) j[k] = v ? 1 : 0;
  return j;
}

inline json to_json(const PropertyReport& r) {
  json w = json::array();
  for (auto& x : r.witnesses) {
    json e{{"node", x.node}, {"explanation", x.explanation}};
    if (x.assignment) e["assignment"] = to_json(*x.assignment);
    if (x.other) e["other_node"] = *x.other;
    w.push_back(std::move(e));
  }
  return json{{"property", std::string(property_name(r.property))}, {"holds", r.holds()}, {"witnesses", w}};
}

inline json to_json(const Classification& c) {
  return json{{"label", c.label.str()},
              {"smooth", c.smooth},
              {"deterministic", c.deterministic},
              {"decomposable", c.decomposable},
              {"weakly_decomposable", c.weakly_decomposable}};
}

inline json to_json(const FunctionTable& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.size(); ++i) rows.push_back(t[i].str());
  return json{{"domain", t.domain}, {"values", rows}};
}

inline json partition_json(const Partition& p, const std::vector<std::string>& domain) {
  std::vector<std::string> x, y;
  for (auto k : p.x) x.push_back(domain[k]);
  for (auto k : p.y) y.push_back(domain[k]);
  return json{{"x_mask", p.x_mask()}, {"x", x}, {"y", y}, {"balanced", p.balanced()}};
}

inline json to_json(const Circuit& c, const TermSubcircuit& t) {
  std::vector<std::string> lits;
  for (auto l : t.literals) lits.push_back(literal_text(c, l));
  return json{{"nodes", t.nodes}, {"coefficient", t.coefficient.str()}, {"literals", lits}};
}

inline json to_json(const TermLawReport& r) {
  return json{{"term_count", r.term_count},
              {"smooth", r.smooth_claim_applicable},
              {"all_terms_full_scope", r.all_terms_full_scope},
              {"deterministic", r.deterministic_claim_applicable},
              {"pairwise_products_zero", r.pairwise_products_zero},
              {"holds", r.holds()},
              {"violations", r.violations}};
}

inline json to_json(const ExpansionReport& e) {
  json j{{"exhaustive", e.exhaustive}, {"sets_checked", e.sets_checked}, {"holds", e.holds}};
  if (!e.worst_set.empty()) {
    j["c_star"] = e.c_star();
    j["worst_set"] = e.worst_set;
    j["worst_neighbors"] = e.worst_neighbors;
  }
  return j;
}

inline json to_json(const InducedMatching& m) {
  json e = json::array();
  for (auto [u, v] : m.edges) e.push_back({u, v});
  return e;
}

inline json to_json(const LowerBoundReport& r, bool per_partition) {
  std::vector<std::string> domain;
  for (std::size_t i = 0; i < r.graph.n; ++i) domain.push_back(var_name(i));
  json j{{"vertices", r.graph.n},
         {"edges", r.graph.edges.size()},
         {"circuit_size", r.circuit_size},
         {"circuit_size_bound", r.size_bound},
         {"min_rank", r.min_rank},
         {"min_rank_partition", partition_json(r.min_partition, domain)},
         {"min_matching", r.min_matching},
         {"partitions_checked", r.partitions.size()},
         {"all_certified", r.all_certified()},
         {"rank_per_node", r.ratio()}};
  if (per_partition) {
    json rows = json::array();
    for (auto& p : r.partitions)
      rows.push_back({{"x_mask", p.partition.x_mask()},
                      {"rank", p.rank},
                      {"matching", to_json(p.matching)},
                      {"mstar_rank", p.mstar_rank},
                      {"rank_at_least_2_pow_m", p.rank_at_least_matching_bound},
                      {"mstar_rank_le_rank", p.submatrix_rank_consistent}});
    j["partitions"] = rows;
  }
  return j;
}

inline json to_json(const ExtractionResult& r) {
  json prods = json::array();
  for (auto& p : r.products)
    prods.push_back({{"partition", partition_json(p.partition, r.domain)}, {"f", to_json(p.f)}, {"h", to_json(p.h)}});
  return json{{"domain", r.domain},
              {"circuit_size", r.circuit_size},
              {"product_count", r.products.size()},
              {"all_balanced", r.all_balanced},
              {"same_partition", r.same_partition},
              {"products", prods}};
}

inline json to_json(const DetRecursionReport& r) {
  json steps = json::array();
  for (auto& s : r.steps)
    steps.push_back({{"i", s.i},
                     {"det_before", s.det_before.str()},
                     {"det_after", s.det_after.str()},
                     {"alpha", s.alpha.str()},
                     {"beta", s.beta.str()},
                     {"plain_block_law", s.plain_block_law},
                     {"plain_det_law", s.plain_det_law},
                     {"scaled_block_law", s.scaled_block_law},
                     {"scaled_det_law", s.scaled_det_law}});
  return json{{"steps", steps}, {"final_det", r.final_det.str()}, {"final_rank", r.final_rank}};
}

}  // namespace acirc
