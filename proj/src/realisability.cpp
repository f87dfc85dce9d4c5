#include "ctxfam/realisability.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "ctxfam/errors.hpp"
#include "ctxfam/lp.hpp"

namespace ctxfam {

std::variant<CycleOrdering, NotChordless> classify_chordless_cycle(const ContextSet& contexts) {
  const std::size_t n = contexts.size();
  if (n < 3) return NotChordless{"a chordless cycle needs at least three maximal contexts, found " + std::to_string(n)};
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !intersect(contexts[i], contexts[j]).empty()) adj[i].push_back(j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (adj[i].size() != 2) {
      return NotChordless{"context {" + join(contexts[i], ",") + "} meets " + std::to_string(adj[i].size()) +
                          " other contexts, expected 2"};
    }
  }
  CycleOrdering ordering;
  std::vector<bool> seen(n, false);
  std::size_t prev = n;
  std::size_t cur = 0;
  while (!seen[cur]) {
    seen[cur] = true;
    ordering.contexts.push_back(cur);
    const std::size_t next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
  }
  if (ordering.contexts.size() != n) {
    return NotChordless{"the intersection graph of the contexts is not a single cycle"};
  }
  return ordering;
}

OverlapProjectionGraph::OverlapProjectionGraph(const ContextualFamily& family, CycleOrdering ordering)
    : ordering_(std::move(ordering)) {
  const auto& cs = family.contexts();
  const std::size_t n = ordering_.length();
  if (n < 3 || n != cs.size()) throw ContractError("ordering does not match the family's context set");
  for (std::size_t p = 0; p < n; ++p) {
    context_vars_.push_back(cs[ordering_.contexts[p]]);
    boundaries_.push_back(intersect(cs[ordering_.contexts[p]], cs[ordering_.contexts[(p + 1) % n]]));
  }
  std::vector<std::vector<std::size_t>> left(n), right(n);
  for (std::size_t p = 0; p < n; ++p) {
    left[p] = positions_of(boundaries_[(p + n - 1) % n], context_vars_[p]);
    right[p] = positions_of(boundaries_[p], context_vars_[p]);
  }
  std::set<std::pair<std::size_t, Tuple>> keys;
  for (std::size_t p = 0; p < n; ++p) {
    for (const auto& [row, w] : family.relation(ordering_.contexts[p]).rows()) {
      keys.emplace((p + n - 1) % n, project(row, left[p]));
      keys.emplace(p, project(row, right[p]));
    }
  }
  for (const auto& [b, vals] : keys) vertices_.push_back({b, vals});
  out_.resize(vertices_.size());
  for (std::size_t p = 0; p < n; ++p) {
    for (const auto& [row, w] : family.relation(ordering_.contexts[p]).rows()) {
      const auto from = *find_vertex((p + n - 1) % n, project(row, left[p]));
      const auto to = *find_vertex(p, project(row, right[p]));
      out_[from].push_back(edges_.size());
      edges_.push_back({from, to, p, row});
    }
  }
}

std::optional<std::size_t> OverlapProjectionGraph::find_vertex(std::size_t boundary, const Tuple& values) const {
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), std::make_pair(boundary, values),
                                   [](const Vertex& v, const std::pair<std::size_t, Tuple>& key) {
                                     return std::tie(v.boundary, v.values) < std::tie(key.first, key.second);
                                   });
  if (it == vertices_.end() || it->boundary != boundary || it->values != values) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::string OverlapProjectionGraph::vertex_label(std::size_t vertex) const {
  const auto& v = vertices_.at(vertex);
  std::string out = std::to_string(v.boundary) + ":";
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    if (i) out += ',';
    out += v.values[i];
  }
  return out;
}

std::string OverlapProjectionGraph::edge_label(std::size_t edge) const {
  const auto& e = edges_.at(edge);
  const auto& vars = context_vars_[e.position];
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ',';
    out += vars[i] + "=" + e.assignment[i];
  }
  return out;
}

OverlapProjectionGraph build_opg(const ContextualFamily& family, const CycleOrdering& ordering) {
  return OverlapProjectionGraph(family, ordering);
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Iterative Tarjan; returns the component id of every vertex.
std::vector<std::size_t> strongly_connected_components(const OverlapProjectionGraph& g) {
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.vertices().size();
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;
  struct Frame {
    std::size_t vertex;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& outs = g.out_edges(f.vertex);
      if (f.next_edge < outs.size()) {
        const std::size_t w = g.edges()[outs[f.next_edge++]].to;
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.vertex] = std::min(low[f.vertex], index[w]);
        }
        continue;
      }
      const std::size_t v = f.vertex;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().vertex] = std::min(low[frames.back().vertex], low[v]);
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
    }
  }
  return comp;
}

// Shortest path (as edge indices) from `source` to `target` by BFS, trying
// out-edges in edge order. Empty optional if unreachable.
std::optional<std::vector<std::size_t>> shortest_path(const OverlapProjectionGraph& g, std::size_t source,
                                                      std::size_t target) {
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> via(g.vertices().size(), unset);
  std::vector<bool> seen(g.vertices().size(), false);
  std::deque<std::size_t> queue{source};
  seen[source] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    if (v == target) break;
    for (auto e : g.out_edges(v)) {
      const std::size_t w = g.edges()[e].to;
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = e;
      queue.push_back(w);
    }
  }
  if (!seen[target]) return std::nullopt;
  std::vector<std::size_t> path;
  for (std::size_t v = target; v != source; v = g.edges()[via[v]].from) path.push_back(via[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Shortest cycle through `vertex`: the first out-edge (in edge order) whose
// return path is shortest.
std::optional<std::vector<std::size_t>> shortest_cycle_at(const OverlapProjectionGraph& g, std::size_t vertex) {
  std::optional<std::vector<std::size_t>> best;
  for (auto e : g.out_edges(vertex)) {
    auto back = shortest_path(g, g.edges()[e].to, vertex);
    if (!back) continue;
    if (!best || back->size() + 1 < best->size()) {
      std::vector<std::size_t> cycle{e};
      cycle.insert(cycle.end(), back->begin(), back->end());
      best = std::move(cycle);
    }
  }
  return best;
}

ContextualFamily require_family(LocalCheck checked, const char* what) {
  if (std::holds_alternative<ConsistencyViolation>(checked)) {
    throw std::logic_error(std::string(what) + " is not locally consistent");
  }
  return std::get<ContextualFamily>(std::move(checked));
}

CycleOrdering require_chordless(const ContextSet& contexts) {
  auto cls = classify_chordless_cycle(contexts);
  if (auto* bad = std::get_if<NotChordless>(&cls)) throw UnsupportedError("not a chordless-cycle context set: " + bad->reason);
  return std::get<CycleOrdering>(std::move(cls));
}

ContextualFamily empty_family(const ContextSet& contexts, MonoidKind kind) {
  std::vector<KRelation> parts;
  for (const auto& c : contexts.maximal()) parts.emplace_back(c, kind);
  return make_family(contexts, kind, std::move(parts));
}

}  // namespace

std::string to_dot(const OverlapProjectionGraph& graph) {
  std::string out = "digraph opg {\n";
  for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
    out += "  n" + std::to_string(v) + " [label=" + dot_quote(graph.vertex_label(v)) + "];\n";
  }
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    out += "  n" + std::to_string(edge.from) + " -> n" + std::to_string(edge.to) +
           " [label=" + dot_quote(graph.edge_label(e)) + "];\n";
  }
  out += "}\n";
  return out;
}

CycleCover has_edge_cycle_cover(const OverlapProjectionGraph& graph) {
  const auto comp = strongly_connected_components(graph);
  CycleCover cover;
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    if (comp[edge.from] != comp[edge.to]) cover.uncovered.push_back(e);
  }
  cover.covered = cover.uncovered.empty();
  return cover;
}

std::vector<std::size_t> find_simple_cycle_through(const OverlapProjectionGraph& graph, std::size_t edge) {
  const auto& e = graph.edges().at(edge);
  auto back = shortest_path(graph, e.to, e.from);
  if (!back) throw ContractError("edge " + graph.edge_label(edge) + " lies on no cycle");
  std::vector<std::size_t> cycle{edge};
  cycle.insert(cycle.end(), back->begin(), back->end());
  return cycle;
}

ContextualFamily cycle_family(const ContextualFamily& family, const OverlapProjectionGraph& graph,
                              const std::vector<std::size_t>& cycle) {
  const auto& cs = family.contexts();
  std::vector<KRelation> parts;
  for (const auto& c : cs.maximal()) parts.emplace_back(c, MonoidKind::Boolean);
  for (auto e : cycle) {
    const auto& edge = graph.edges().at(e);
    parts[graph.ordering().contexts[edge.position]].add_row(edge.assignment, MonoidValue::one(MonoidKind::Boolean));
  }
  return require_family(check_local_consistency(cs, MonoidKind::Boolean, std::move(parts)), "cycle sub-family");
}

bool is_simply_cyclic(const ContextualFamily& family, const CycleOrdering& ordering) {
  const OverlapProjectionGraph g(family, ordering);
  const std::size_t m = g.edges().size();
  if (m == 0 || g.vertices().size() != m) return false;
  for (std::size_t v = 0; v < g.vertices().size(); ++v) {
    if (g.out_edges(v).size() != 1) return false;
  }
  // Out-degree 1 everywhere and |V| = |E|: one cycle iff the walk from
  // vertex 0 returns after visiting every edge.
  std::size_t v = 0;
  for (std::size_t step = 0; step < m; ++step) {
    v = g.edges()[g.out_edges(v).front()].to;
    if (v == 0 && step + 1 < m) return false;
  }
  return v == 0;
}

ContextualFamily lift_uniform(const ContextualFamily& family, const CycleOrdering& ordering,
                              const MonoidValue& weight) {
  if (weight.is_zero()) throw ContractError("lift_uniform: weight must be nonzero");
  if (!is_simply_cyclic(family_support(family), ordering)) {
    throw ContractError("lift_uniform: family is not simply cyclic");
  }
  return require_family(scalar_family(weight, family_support(family)), "uniform lift");
}

bool realisable_chordless(const ContextualFamily& family, MonoidKind kind) {
  if (!is_cancellative(kind)) throw UnsupportedError("the cycle-cover criterion needs a cancellative monoid");
  const auto ordering = require_chordless(family.contexts());
  return has_edge_cycle_cover(build_opg(family_support(family), ordering)).covered;
}

ContextualFamily realise(const ContextualFamily& family, MonoidKind kind, const MonoidValue& weight) {
  if (!is_cancellative(kind)) throw UnsupportedError("realise needs a cancellative monoid (N or Q)");
  if (weight.kind() != kind) throw ContractError("realise: weight kind differs from target kind");
  const auto ordering = require_chordless(family.contexts());
  const auto base = family_support(family);
  const auto graph = build_opg(base, ordering);
  const auto cover = has_edge_cycle_cover(graph);
  if (!cover.covered) {
    throw ContractError("family is not realisable: edge " + graph.edge_label(cover.uncovered.front()) +
                        " lies on no cycle");
  }
  std::optional<ContextualFamily> total;
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto cycle = find_simple_cycle_through(graph, e);
    auto lifted = lift_uniform(cycle_family(base, graph, cycle), ordering, weight);
    total = total ? add_families(*total, lifted) : std::move(lifted);
  }
  if (!total) return empty_family(family.contexts(), kind);
  if (!(family_support(*total) == base)) throw std::logic_error("realisation changed the support");
  return *std::move(total);
}

std::vector<WeightedCycle> decompose_cycles(const ContextualFamily& family) {
  if (!is_cancellative(family.kind())) throw ContractError("decompose_cycles expects an N- or Q-family");
  std::vector<WeightedCycle> out;
  if (family.assignment_count() == 0) return out;
  const auto ordering = require_chordless(family.contexts());
  ContextualFamily current = family;
  while (current.assignment_count() > 0) {
    const auto base = family_support(current);
    const auto graph = build_opg(base, ordering);
    std::optional<std::vector<std::size_t>> cycle;
    for (std::size_t v = 0; v < graph.vertices().size() && !cycle; ++v) cycle = shortest_cycle_at(graph, v);
    if (!cycle) throw std::logic_error("support of a cancellative family has no cycle");

    std::optional<MonoidValue> least;
    for (auto e : *cycle) {
      const auto& edge = graph.edges()[e];
      auto w = current.relation(ordering.contexts[edge.position]).annotation(edge.assignment);
      if (!least || w.as_rational() < least->as_rational()) least = w;
    }
    std::vector<KRelation> parts = current.relations();
    std::vector<KRelation> reduced;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      KRelation r(parts[i].vars(), family.kind());
      for (const auto& [row, w] : parts[i].rows()) {
        bool on_cycle = false;
        for (auto e : *cycle) {
          const auto& edge = graph.edges()[e];
          if (ordering.contexts[edge.position] == i && edge.assignment == row) on_cycle = true;
        }
        r.add_row(row, on_cycle ? subtract(w, *least) : w);
      }
      reduced.push_back(std::move(r));
    }
    out.push_back({*least, cycle_family(base, graph, *cycle)});
    current = require_family(check_local_consistency(family.contexts(), family.kind(), std::move(reduced)),
                             "cycle remainder");
  }
  return out;
}

ContextualFamily recompose_cycles(const std::vector<WeightedCycle>& cycles, const ContextSet& contexts,
                                  MonoidKind kind) {
  ContextualFamily total = empty_family(contexts, kind);
  for (const auto& wc : cycles) {
    total = add_families(total, require_family(scalar_family(wc.weight, wc.cycle), "weighted cycle"));
  }
  return total;
}

LpRealisation realisable_lp(const ContextualFamily& family, MonoidKind kind) {
  if (kind == MonoidKind::Boolean) throw UnsupportedError("realisable_lp targets N or Q");
  const auto base = family_support(family);
  const auto& cs = base.contexts();

  // Unknown index of every (context, row).
  std::vector<std::map<Tuple, std::size_t>> unknown(cs.size());
  std::size_t columns = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (const auto& [row, w] : base.relation(i).rows()) unknown[i][row] = columns++;
  }

  // Homogeneous marginal equalities A x = 0, shifted by x = 1 + y so that
  // A y = -A 1 with y >= 0.
  lp::EqualitySystem system(columns);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const auto overlap = intersect(cs[i], cs[j]);
      const auto pi = positions_of(overlap, cs[i]);
      const auto pj = positions_of(overlap, cs[j]);
      std::map<Tuple, std::vector<mpq_class>> rows;
      auto row_for = [&](const Tuple& key) -> std::vector<mpq_class>& {
        auto it = rows.find(key);
        if (it == rows.end()) it = rows.emplace(key, std::vector<mpq_class>(columns, mpq_class(0))).first;
        return it->second;
      };
      for (const auto& [row, idx] : unknown[i]) row_for(project(row, pi))[idx] += 1;
      for (const auto& [row, idx] : unknown[j]) row_for(project(row, pj))[idx] -= 1;
      for (auto& [key, coeffs] : rows) {
        mpq_class shift = 0;
        for (const auto& c : coeffs) shift -= c;
        system.add_row(std::move(coeffs), shift);
      }
    }
  }

  LpRealisation out;
  const auto solution = lp::solve_nonnegative(system);
  if (!solution) return out;
  std::vector<mpq_class> weights;
  for (const auto& y : *solution) weights.push_back(y + 1);
  if (kind == MonoidKind::Natural) {
    const mpz_class scale = lp::denominator_lcm(weights);
    for (auto& w : weights) {
      w *= scale;
      w.canonicalize();
    }
  }
  std::vector<KRelation> parts;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    KRelation r(cs[i], kind);
    for (const auto& [row, idx] : unknown[i]) {
      r.add_row(row, kind == MonoidKind::Natural ? MonoidValue::natural(weights[idx].get_num())
                                                 : MonoidValue::rational(weights[idx]));
    }
    parts.push_back(std::move(r));
  }
  out.feasible = true;
  out.witness = require_family(check_local_consistency(cs, kind, std::move(parts)), "LP witness");
  return out;
}

}  // namespace ctxfam
