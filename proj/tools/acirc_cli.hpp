#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "acirc/acirc.hpp"
#include "acirc/report_json.hpp"

namespace acirc::cli {

inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

/// Thrown for problems with the command line or input files (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw UsageError("cannot write '" + path + "'");
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

/// A circuit file starts with an "ac"/"nnf" header after comments; anything
/// else is read as a CSV table.
inline bool looks_like_circuit(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    return tok == "ac" || tok == "nnf";
  }
  return false;
}

inline bool is_input_error(Errc e) {
  switch (e) {
    case Errc::SyntaxError:
    case Errc::ForwardReference:
    case Errc::DuplicateId:
    case Errc::CycleDetected:
    case Errc::BadArity:
    case Errc::MultipleSources:
    case Errc::NonBooleanNNFConstant:
    case Errc::UnknownNode:
    case Errc::BadArgument:
    case Errc::UnsupportedClass:
    case Errc::BadPartition:
    case Errc::InfeasibleDegree:
      return true;
    default:
      return false;
  }
}

struct Options {
  std::string file;
  std::string out_path;
  bool as_json = false;
  std::size_t cap = kDefaultCap;
  std::string props;
  std::string assign;
  std::string op;
  std::string vars;
  int weight = -1;
  bool auto_smooth = false;
  std::size_t term_cap = kDefaultTermCap;
  std::string kind;
  std::string graph_file;
  std::string cnf_file;
  std::string label;
  std::size_t n = 0;
  std::size_t d = 3;
  std::size_t budget = 40;
  std::uint64_t seed = 0;
  bool structured = false;
  bool balanced = false;
  std::string partition = "auto";
  bool exhaustive = false;
};

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline int cmd_check(const Options& o, std::ostream& out) {
  Circuit c = parse_circuit(read_input(o.file));
  std::vector<Property> props;
  if (o.props.empty()) {
    props = {Property::Smooth, Property::Deterministic, Property::Decomposable, Property::WeaklyDecomposable};
  } else {
    for (auto& name : split_list(o.props)) {
      auto p = parse_property(name);
      if (!p) throw UsageError("unknown property '" + name + "' (smooth, deterministic, decomposable, weakly-decomposable, structured)");
      props.push_back(*p);
    }
  }
  bool all = true;
  json reports = json::array();
  for (auto p : props) {
    PropertyReport r{p, {}};
    std::string note;
    switch (p) {
      case Property::Smooth: r = is_smooth(c); break;
      case Property::Deterministic: r = is_deterministic(c, o.cap); break;
      case Property::Decomposable: r = is_decomposable(c); break;
      case Property::WeaklyDecomposable: r = is_weakly_decomposable(c); break;
      case Property::Structured:
        try {
          r = is_structured(c);
        } catch (const Error& e) {
          if (e.code() != Errc::NotSmoothDecomposable) throw;
          r.witnesses.push_back({c.root(), "not applicable: the circuit is not smooth and decomposable"});
        }
        break;
    }
    all = all && r.holds();
    if (o.as_json) {
      reports.push_back(to_json(r));
      continue;
    }
    out << property_name(p) << ": " << (r.holds() ? "yes" : "no") << '\n';
    for (auto& w : r.witnesses) {
      out << "  node " << w.node << ": " << w.explanation;
      if (w.assignment) out << " at " << w.assignment->str();
      out << '\n';
    }
  }
  if (o.as_json) {
    json j = report_header("check");
    j["holds"] = all;
    j["reports"] = reports;
    emit(out, j);
  }
  return all ? kOk : kCheckFailed;
}

inline int cmd_classify(const Options& o, std::ostream& out) {
  Circuit c = parse_circuit(read_input(o.file));
  Classification cl = classify(c, o.cap);
  if (o.as_json) {
    json j = report_header("classify");
    j.update(to_json(cl));
    emit(out, j);
  } else {
    out << cl.label.str() << '\n';
  }
  return kOk;
}

inline int cmd_eval(const Options& o, std::ostream& out) {
  Circuit c = parse_circuit(read_input(o.file));
  Rational v = evaluate(c, Assignment::parse(o.assign));
  if (o.as_json) {
    json j = report_header("eval");
    j["value"] = v.str();
    emit(out, j);
  } else {
    out << v << '\n';
  }
  return kOk;
}

inline int cmd_support(const Options& o, std::ostream& out) {
  Circuit c = parse_circuit(read_input(o.file));
  ModelSet m = support(c, o.cap);
  if (o.as_json) {
    json j = report_header("support");
    j["domain"] = m.domain;
    json models = json::array();
    for (auto& a : m.assignments()) models.push_back(to_json(a));
    j["count"] = m.size();
    j["models"] = models;
    emit(out, j);
  } else {
    out << m.size() << " model" << (m.size() == 1 ? "" : "s") << '\n';
    for (auto& a : m.assignments()) out << (a.empty() ? "(empty assignment)" : a.str()) << '\n';
  }
  return kOk;
}

inline int cmd_table(const Options& o, std::ostream& out) {
  Circuit c = parse_circuit(read_input(o.file));
  FunctionTable t = function_table(c, o.cap);
  if (o.as_json) {
    json j = report_header("table");
    j.update(to_json(t));
    emit(out, j);
  } else {
    out << to_csv(t);
  }
  return kOk;
}

inline int cmd_transform(const Options& o, std::ostream& out, std::ostream& err) {
  Circuit c = parse_circuit(read_input(o.file));
  Circuit result;
  std::size_t inserted = 0;
  if (o.op == "phi") {
    result = ac_to_nnf(c);
  } else if (o.op == "psi") {
    result = nnf_to_ac(c);
  } else if (o.op == "smooth-links") {
    auto r = smooth_by_links(c);
    result = std::move(r.circuit);
    inserted = r.inserted_nodes;
  } else if (o.op == "smooth-pad") {
    auto r = smooth_by_padding(c);
    result = std::move(r.circuit);
    inserted = r.inserted_nodes;
  } else if (o.op == "monotonize") {
    result = flip_negative_constants(c, o.cap);
  } else if (o.op == "condition") {
    result = condition(c, Assignment::parse(o.assign));
  } else if (o.op == "forget") {
    result = forget(c, split_list(o.vars));
  } else if (o.op == "fixweight") {
    if (o.weight < 0) throw UsageError("fixweight needs --k");
    result = fix_weight(c, o.weight, o.auto_smooth);
  } else {
    throw UsageError("unknown --op '" + o.op + "'");
  }
  std::string text = serialize_circuit(result);
  if (o.as_json) {
    json j = report_header("transform");
    j["op"] = o.op;
    j["input_size"] = c.size();
    j["output_size"] = result.size();
    j["inserted_nodes"] = inserted;
    if (o.out_path.empty()) j["circuit"] = text;
    else write_output(o.out_path, text, out);
    emit(out, j);
  } else {
    write_output(o.out_path, text, out);
    err << o.op << ": " << c.size() << " -> " << result.size() << " nodes, " << inserted << " inserted\n";
  }
  return kOk;
}

inline int cmd_terms(const Options& o, std::ostream& out) {
  Circuit c = parse_circuit(read_input(o.file));
  auto terms = term_subcircuits(c, o.term_cap);
  auto laws = check_term_laws(c, o.term_cap, o.cap);
  if (o.as_json) {
    json j = report_header("terms");
    json arr = json::array();
    for (auto& t : terms) arr.push_back(to_json(c, t));
    j["terms"] = arr;
    j["laws"] = to_json(laws);
    emit(out, j);
  } else {
    out << terms.size() << " term subcircuit" << (terms.size() == 1 ? "" : "s") << '\n';
    for (auto& t : terms) {
      out << "  " << t.coefficient;
      for (auto l : t.literals) out << ' ' << literal_text(c, l);
      out << "  nodes";
      for (auto g : t.nodes) out << ' ' << g;
      out << '\n';
    }
    if (laws.smooth_claim_applicable)
      out << "full scope in every term: " << (laws.all_terms_full_scope ? "yes" : "no") << '\n';
    if (laws.deterministic_claim_applicable)
      out << "distinct terms multiply to zero: " << (laws.pairwise_products_zero ? "yes" : "no") << '\n';
  }
  return laws.holds() ? kOk : kCheckFailed;
}

inline Graph read_graph(const std::string& path) {
  if (path.empty()) throw UsageError("missing --graph");
  return parse_graph(read_input(path));
}

inline int cmd_family(const Options& o, std::ostream& out) {
  std::string text;
  if (o.kind == "fg") {
    text = serialize_circuit(fg_circuit(read_graph(o.graph_file), o.balanced));
  } else if (o.kind == "vccnf") {
    text = serialize_circuit(vertex_cover_cnf(read_graph(o.graph_file)));
  } else if (o.kind == "gadget") {
    MonotoneCnf f;
    if (!o.cnf_file.empty()) f = parse_dimacs(read_input(o.cnf_file));
    else f = graph_cnf(read_graph(o.graph_file));
    auto g = dwdnnf_gadget(f);
    text = "c fresh";
    for (auto& z : g.fresh) text += " " + z;
    text += "\n" + serialize_circuit(g.circuit);
  } else if (o.kind == "random-circuit") {
    if (o.label.empty()) throw UsageError("random-circuit needs --class");
    text = serialize_circuit(random_circuit(ClassLabel::parse(o.label), o.n, o.budget, o.seed, o.structured));
  } else if (o.kind == "random-regular") {
    text = graph_to_text(random_regular_graph(o.n, o.d, o.seed));
  } else {
    throw UsageError("unknown family '" + o.kind + "' (fg, vccnf, gadget, random-circuit, random-regular)");
  }
  write_output(o.out_path, text, out);
  return kOk;
}

inline int cmd_rank(const Options& o, std::ostream& out) {
  std::string text = read_input(o.file);
  FunctionTable t = looks_like_circuit(text) ? function_table(parse_circuit(text), o.cap) : table_from_csv(text);
  Partition p;
  std::size_t rank = 0;
  if (o.partition == "auto") {
    auto best = min_rank_over_balanced(t, o.cap);
    p = best.partition;
    rank = best.rank;
  } else {
    if (o.partition.rfind("X=", 0) != 0) throw UsageError("--partition must be 'auto' or 'X=a,b,...'");
    std::uint64_t mask = 0;
    for (auto& name : split_list(o.partition.substr(2))) {
      auto it = std::find(t.domain.begin(), t.domain.end(), name);
      if (it == t.domain.end()) throw UsageError("'" + name + "' is not a variable of the table");
      mask |= std::uint64_t{1} << (it - t.domain.begin());
    }
    p = Partition::from_mask(t.domain.size(), mask);
    rank = rank_exact(value_matrix(t, p).m);
  }
  if (o.as_json) {
    json j = report_header("rank");
    j["rank"] = rank;
    j["partition"] = partition_json(p, t.domain);
    j["minimum_over_balanced"] = o.partition == "auto";
    emit(out, j);
  } else {
    out << "rank " << rank << " for X = {";
    for (std::size_t k = 0; k < p.x.size(); ++k) out << (k ? "," : "") << t.domain[p.x[k]];
    out << "}" << (o.partition == "auto" ? " (minimum over balanced partitions)" : "") << '\n';
  }
  return kOk;
}

inline int cmd_lowerbound(const Options& o, std::ostream& out) {
  Graph g = read_graph(o.file);
  auto rep = structured_lower_bound_report(g, o.cap);
  auto exp = expansion_check(g, 0.0, o.seed);
  if (o.as_json) {
    json j = report_header("lowerbound");
    j.update(to_json(rep, o.exhaustive));
    j["expansion"] = to_json(exp);
    emit(out, j);
  } else {
    out << "vertices " << g.n << ", edges " << g.edges.size() << '\n';
    out << "circuit size " << rep.circuit_size << " (bound " << rep.size_bound << ")\n";
    out << "balanced partitions " << rep.partitions.size() << '\n';
    out << "min rank " << rep.min_rank << " at X mask " << rep.min_partition.x_mask() << '\n';
    out << "smallest greedy induced matching " << rep.min_matching << '\n';
    out << "measured expansion c* " << exp.c_star() << '\n';
    out << "certified " << (rep.all_certified() ? "yes" : "no") << '\n';
    if (o.exhaustive) {
      out << "x_mask,rank,matching,mstar_rank\n";
      for (auto& p : rep.partitions)
        out << p.partition.x_mask() << ',' << p.rank << ',' << p.matching.size() << ',' << p.mstar_rank << '\n';
    }
  }
  return rep.all_certified() ? kOk : kCheckFailed;
}

inline int cmd_decompose(const Options& o, std::ostream& out) {
  Circuit c = parse_circuit(read_input(o.file));
  auto r = extract_products(c, o.cap);
  bool sums = r.sum_table() == function_table(c, r.domain, o.cap).values;
  if (o.as_json) {
    json j = report_header("decompose");
    j.update(to_json(r));
    j["sum_matches_table"] = sums;
    emit(out, j);
  } else {
    out << r.products.size() << " products from a circuit of size " << r.circuit_size << '\n';
    out << "all balanced: " << (r.all_balanced ? "yes" : "no") << ", same partition: "
        << (r.same_partition ? "yes" : "no") << ", sum equals table: " << (sums ? "yes" : "no") << '\n';
    for (auto& p : r.products) {
      out << "  X = {";
      for (std::size_t k = 0; k < p.partition.x.size(); ++k) out << (k ? "," : "") << r.domain[p.partition.x[k]];
      out << "}\n";
    }
  }
  return sums ? kOk : kCheckFailed;
}

/// Runs one command line; `args` excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic circuit and NNF toolkit", "acirc_cli"};
  app.require_subcommand(1);
  Options o;
  auto json_flag = [&](CLI::App* s) { s->add_flag("--json", o.as_json, "emit a JSON report"); };
  auto cap_opt = [&](CLI::App* s) { s->add_option("--cap", o.cap, "largest variable count for exhaustive checks"); };
  auto file_arg = [&](CLI::App* s, const char* what) { s->add_option("file", o.file, what)->required(); };

  auto* check = app.add_subcommand("check", "check structural and semantic properties");
  file_arg(check, "circuit file");
  check->add_option("--props", o.props, "comma-separated: smooth, deterministic, decomposable, weakly-decomposable, structured");
  cap_opt(check);
  json_flag(check);

  auto* cls = app.add_subcommand("classify", "most specific class label");
  file_arg(cls, "circuit file");
  cap_opt(cls);
  json_flag(cls);

  auto* ev = app.add_subcommand("eval", "value at one assignment");
  file_arg(ev, "circuit file");
  ev->add_option("--assign", o.assign, "x=1,y=0")->required();
  json_flag(ev);

  auto* sup = app.add_subcommand("support", "assignments with a non-zero value");
  file_arg(sup, "circuit file");
  cap_opt(sup);
  json_flag(sup);

  auto* tab = app.add_subcommand("table", "full value table as CSV");
  file_arg(tab, "circuit file");
  cap_opt(tab);
  json_flag(tab);

  auto* tr = app.add_subcommand("transform", "rewrite a circuit");
  file_arg(tr, "circuit file");
  tr->add_option("--op", o.op, "phi, psi, smooth-links, smooth-pad, monotonize, condition, forget, fixweight")->required();
  tr->add_option("-o,--output", o.out_path, "output file (default: stdout)");
  tr->add_option("--assign", o.assign, "assignment for condition");
  tr->add_option("--vars", o.vars, "variables for forget");
  tr->add_option("--k", o.weight, "weight for fixweight");
  tr->add_flag("--auto-smooth", o.auto_smooth, "pad a non-smooth input before fixweight");
  cap_opt(tr);
  json_flag(tr);

  auto* te = app.add_subcommand("terms", "enumerate term subcircuits");
  file_arg(te, "circuit file");
  te->add_option("--cap", o.term_cap, "largest number of terms");
  te->add_option("--oracle-cap", o.cap, "largest variable count for exhaustive checks");
  json_flag(te);

  auto* fam = app.add_subcommand("family", "generate graphs and circuits");
  fam->add_option("kind", o.kind, "fg, vccnf, gadget, random-circuit, random-regular")->required();
  fam->add_option("--graph", o.graph_file, "edge-list graph file");
  fam->add_option("--cnf", o.cnf_file, "DIMACS file of positive 2-clauses");
  fam->add_option("--class", o.label, "class label such as sdD-AC_m");
  fam->add_option("--n", o.n, "number of variables or vertices");
  fam->add_option("--d", o.d, "degree");
  fam->add_option("--budget", o.budget, "largest circuit size");
  fam->add_option("--seed", o.seed, "random seed");
  fam->add_flag("--structured", o.structured, "one split per scope");
  fam->add_flag("--balanced", o.balanced, "balanced product tree for fg");
  fam->add_option("-o,--output", o.out_path, "output file (default: stdout)");

  auto* rk = app.add_subcommand("rank", "exact value-matrix rank");
  file_arg(rk, "circuit file or CSV table");
  rk->add_option("--partition", o.partition, "auto or X=a,b,...");
  cap_opt(rk);
  json_flag(rk);

  auto* lb = app.add_subcommand("lowerbound", "rank certificate for the edge-product function of a graph");
  file_arg(lb, "edge-list graph file");
  lb->add_flag("--exhaustive", o.exhaustive, "list every balanced partition");
  lb->add_option("--seed", o.seed, "seed for sampled expansion checks");
  cap_opt(lb);
  json_flag(lb);

  auto* dec = app.add_subcommand("decompose", "sum of balanced products from a smooth decomposable AC");
  file_arg(dec, "circuit file");
  cap_opt(dec);
  json_flag(dec);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (check->parsed()) return cmd_check(o, out);
    if (cls->parsed()) return cmd_classify(o, out);
    if (ev->parsed()) return cmd_eval(o, out);
    if (sup->parsed()) return cmd_support(o, out);
    if (tab->parsed()) return cmd_table(o, out);
    if (tr->parsed()) return cmd_transform(o, out, err);
    if (te->parsed()) return cmd_terms(o, out);
    if (fam->parsed()) return cmd_family(o, out);
    if (rk->parsed()) return cmd_rank(o, out);
    if (lb->parsed()) return cmd_lowerbound(o, out);
    if (dec->parsed()) return cmd_decompose(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kUsage : kCheckFailed;
  }
  return kUsage;
}

}  // namespace acirc::cli
