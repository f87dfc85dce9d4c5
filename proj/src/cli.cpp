#include "ctxfam/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "ctxfam/errors.hpp"
#include "ctxfam/fdlogic.hpp"
#include "ctxfam/format.hpp"
#include "ctxfam/realisability.hpp"
#include "ctxfam/semantics.hpp"

namespace ctxfam {

namespace {

struct InputError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string positioned(const std::string& path, const ParseError& e) { return path + ":" + e.what(); }

ContextualFamily load_family(const std::string& path) {
  const auto text = read_file(path);
  try {
    return parse_family(text);
  } catch (const ParseError& e) {
    throw InputError(positioned(path, e));
  }
}

std::vector<FD> load_fds(const std::string& path) {
  const auto text = read_file(path);
  try {
    return parse_fd_document(text);
  } catch (const ParseError& e) {
    throw InputError(positioned(path, e));
  }
}

FD query_fd(const std::string& text) {
  try {
    return parse_fd(text);
  } catch (const ParseError& e) {
    throw InputError(std::string("--query: ") + e.what());
  }
}

MonoidKind cancellative_kind(const std::string& text) {
  const auto kind = parse_kind(text);
  if (!kind || !is_cancellative(*kind)) throw InputError("--monoid must be N or Q");
  return *kind;
}

void list_uncovered(std::ostream& out, const OverlapProjectionGraph& g, const CycleCover& cover) {
  for (auto e : cover.uncovered) {
    const auto& edge = g.edges()[e];
    out << "uncovered edge: " << g.vertex_label(edge.from) << " -> " << g.vertex_label(edge.to) << " ("
        << g.edge_label(e) << ")\n";
  }
}

int cmd_check(const std::string& path, std::ostream& out) {
  const auto text = read_file(path);
  FamilyDocument doc;
  try {
    doc = parse_family_document(text);
  } catch (const ParseError& e) {
    throw InputError(positioned(path, e));
  }
  auto checked = validate_document(doc);
  if (auto* v = std::get_if<ConsistencyViolation>(&checked)) {
    std::vector<VarSet> contexts;
    for (const auto& r : doc.relations) contexts.push_back(r.vars());
    out << "locally inconsistent\n" << v->describe(ContextSet(std::move(contexts))) << '\n';
    return 1;
  }
  const auto& family = std::get<ContextualFamily>(checked);
  out << "locally consistent\n"
      << "monoid " << kind_name(family.kind()) << ", " << family.contexts().size() << " contexts, "
      << family.assignment_count() << " assignments\n";
  return 0;
}

int cmd_global(const std::string& path, std::ostream& out) {
  const auto family = load_family(path);
  const auto result = check_global_consistency(family);
  if (!result.consistent) {
    out << "globally inconsistent\n";
    if (!result.detail.empty()) out << result.detail << '\n';
    return 1;
  }
  out << "globally consistent\n";
  const auto& w = *result.witness;
  out << serialize_family(make_family(ContextSet({w.vars()}), w.kind(), {w}));
  return 0;
}

int cmd_opg(const std::string& path, const std::string& dot_path, std::ostream& out) {
  const auto family = load_family(path);
  auto cls = classify_chordless_cycle(family.contexts());
  if (auto* nc = std::get_if<NotChordless>(&cls)) throw UnsupportedError("not a chordless cycle: " + nc->reason);
  const auto graph = build_opg(family, std::get<CycleOrdering>(cls));
  const auto cover = has_edge_cycle_cover(graph);
  out << (cover.covered ? "edge cycle cover\n" : "no edge cycle cover\n");
  out << graph.vertices().size() << " vertices, " << graph.edges().size() << " edges\n";
  list_uncovered(out, graph, cover);
  if (!dot_path.empty()) {
    std::ofstream dot(dot_path, std::ios::binary);
    if (!dot) throw InputError("cannot write '" + dot_path + "'");
    dot << to_dot(graph);
  }
  return cover.covered ? 0 : 1;
}

// Chordless cycles use the graph criterion; other context sets the LP.
int cmd_realisable(const std::string& path, MonoidKind kind, std::ostream& out) {
  const auto family = load_family(path);
  const std::string name(kind_name(kind));
  auto cls = classify_chordless_cycle(family.contexts());
  if (auto* ordering = std::get_if<CycleOrdering>(&cls)) {
    const auto graph = build_opg(family, *ordering);
    const auto cover = has_edge_cycle_cover(graph);
    out << (cover.covered ? "realisable over " : "not realisable over ") << name << '\n';
    list_uncovered(out, graph, cover);
    return cover.covered ? 0 : 1;
  }
  const auto lp = realisable_lp(family, kind);
  out << (lp.feasible ? "realisable over " : "not realisable over ") << name << '\n';
  out << "decided by linear feasibility (" << std::get<NotChordless>(cls).reason << ")\n";
  return lp.feasible ? 0 : 1;
}

int cmd_realise(const std::string& path, MonoidKind kind, const std::string& weight_text, std::ostream& out) {
  const auto family = load_family(path);
  const std::string name(kind_name(kind));
  MonoidValue weight = MonoidValue::one(kind);
  try {
    weight = MonoidValue::parse(weight_text, kind);
  } catch (const Error& e) {
    throw InputError(std::string("--weight: ") + e.what());
  }
  if (weight.is_zero()) throw InputError("--weight must be nonzero");
  auto cls = classify_chordless_cycle(family.contexts());
  if (auto* ordering = std::get_if<CycleOrdering>(&cls)) {
    const auto graph = build_opg(family, *ordering);
    const auto cover = has_edge_cycle_cover(graph);
    if (!cover.covered) {
      out << "not realisable over " << name << '\n';
      list_uncovered(out, graph, cover);
      return 1;
    }
    out << "realisable over " << name << '\n' << serialize_family(realise(family, kind, weight));
    return 0;
  }
  const auto lp = realisable_lp(family, kind);
  if (!lp.feasible) {
    out << "not realisable over " << name << '\n';
    return 1;
  }
  out << "realisable over " << name << '\n' << serialize_family(*lp.witness);
  return 0;
}

int cmd_decompose(const std::string& path, std::ostream& out) {
  const auto family = load_family(path);
  const auto cycles = decompose_cycles(family);
  out << "decomposed into " << cycles.size() << " cycles\n";
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    out << "\n# cycle " << i + 1 << " weight " << cycles[i].weight.to_string() << '\n'
        << serialize_family(cycles[i].cycle);
  }
  return 0;
}

int cmd_derive(const std::string& path, const std::string& query, const std::string& rules_text, bool trace,
               std::ostream& out) {
  const auto sigma = load_fds(path);
  const auto goal = query_fd(query);
  const auto rules = parse_rule_set(rules_text);
  if (!rules) throw InputError("--rules must be cr, full, classical or nra");
  const auto result = derives(sigma, goal, *rules);
  out << (result.derivable ? "derivable: " : "not derivable: ") << goal.to_string() << " under "
      << rule_set_name(*rules) << '\n';
  if (result.derivable && trace) out << result.trace->to_string();
  return result.derivable ? 0 : 1;
}

int cmd_entail(const std::string& path, const std::string& query, std::size_t domain, std::size_t rows,
               std::ostream& out) {
  const auto sigma = load_fds(path);
  const auto goal = query_fd(query);
  const auto verdict = semantic_entails_oracle(sigma, goal, {domain, rows});
  if (verdict.holds) {
    out << "holds" << (verdict.conclusive ? "\n" : " (bounded only)\n");
    out << "searched domain " << domain << ", at most " << rows << " rows per context\n";
    return 0;
  }
  out << "does not hold\n" << serialize_family(*verdict.counterexample);
  return 1;
}

int cmd_counterexample(const std::string& path, const std::string& query, const std::string& monoid,
                       std::ostream& out) {
  const auto sigma = load_fds(path);
  const auto goal = query_fd(query);
  const auto kind = parse_kind(monoid);
  if (!kind) throw InputError("--monoid must be B, N or Q");
  if (goal.is_unary() && derives(sigma, goal, RuleSet::Cr).derivable) {
    out << "no counterexample: " << goal.to_string() << " is derivable\n";
    return 1;
  }
  out << "counterexample\n" << serialize_family(build_counterexample(sigma, goal, *kind));
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contextual families of annotated relations and dependency reasoning", "ctxfam"};
  app.require_subcommand(1);

  std::string file, dot, monoid, counter_monoid = "B", weight = "1", query, rules = "full";
  bool trace = false;
  std::size_t domain = 2, rows = 4;

  auto* check = app.add_subcommand("check", "Check local consistency of a family");
  check->add_option("FILE", file, "Family file")->required();
  auto* global = app.add_subcommand("global", "Decide global consistency");
  global->add_option("FILE", file, "Family file")->required();
  auto* opg = app.add_subcommand("opg", "Overlap projection graph of a chordless-cycle family");
  opg->add_option("FILE", file, "Family file")->required();
  opg->add_option("--dot", dot, "Write Graphviz output to this file");
  auto* realisable = app.add_subcommand("realisable", "Decide whether the family is a support of a K-family");
  realisable->add_option("FILE", file, "Family file")->required();
  realisable->add_option("--monoid", monoid, "N or Q")->required();
  auto* realise_cmd = app.add_subcommand("realise", "Emit a K-family with the same support");
  realise_cmd->add_option("FILE", file, "Family file")->required();
  realise_cmd->add_option("--monoid", monoid, "N or Q")->required();
  realise_cmd->add_option("--weight", weight, "Weight of each cycle lift");
  auto* decompose = app.add_subcommand("decompose", "Split an N/Q family over a chordless cycle into cycles");
  decompose->add_option("FILE", file, "Family file")->required();
  auto* derive = app.add_subcommand("derive", "Syntactic derivability");
  derive->add_option("FDS", file, "Dependency file")->required();
  derive->add_option("--query", query, "Goal dependency")->required();
  derive->add_option("--rules", rules, "cr, full, classical or nra");
  derive->add_flag("--trace", trace, "Print the derivation");
  auto* entail = app.add_subcommand("entail", "Bounded semantic entailment search");
  entail->add_option("FDS", file, "Dependency file")->required();
  entail->add_option("--query", query, "Goal dependency")->required();
  entail->add_option("--domain", domain, "Number of values")->check(CLI::PositiveNumber);
  entail->add_option("--max-rows", rows, "Rows per context")->check(CLI::PositiveNumber);
  auto* counter = app.add_subcommand("counterexample", "Family satisfying FDS and violating the query");
  counter->add_option("FDS", file, "Dependency file")->required();
  counter->add_option("--query", query, "Goal dependency")->required();
  counter->add_option("--monoid", counter_monoid, "B, N or Q");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(file, out);
    if (global->parsed()) return cmd_global(file, out);
    if (opg->parsed()) return cmd_opg(file, dot, out);
    if (realisable->parsed()) return cmd_realisable(file, cancellative_kind(monoid), out);
    if (realise_cmd->parsed()) return cmd_realise(file, cancellative_kind(monoid), weight, out);
    if (decompose->parsed()) return cmd_decompose(file, out);
    if (derive->parsed()) return cmd_derive(file, query, rules, trace, out);
    if (entail->parsed()) return cmd_entail(file, query, domain, rows, out);
    if (counter->parsed()) return cmd_counterexample(file, query, counter_monoid, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace ctxfam
