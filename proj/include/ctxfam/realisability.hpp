#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ctxfam/family.hpp"
#include "ctxfam/monoid.hpp"

namespace ctxfam {

/// Maximal contexts C_0 ... C_{n-1} (as indices into a ContextSet), n >= 3,
/// where C_i and C_j intersect exactly when i = j +- 1 (mod n).
struct CycleOrdering {
  std::vector<std::size_t> contexts;

  std::size_t length() const noexcept { return contexts.size(); }
  friend bool operator==(const CycleOrdering&, const CycleOrdering&) = default;
};

struct NotChordless {
  std::string reason;
};

/// Walks the intersection graph of the maximal contexts from context 0,
/// taking the lower-indexed neighbour first.
std::variant<CycleOrdering, NotChordless> classify_chordless_cycle(const ContextSet& contexts);

/// Overlap projection graph of a family over a chordless-cycle context set.
///
/// Boundary i is C_i ∩ C_{i+1} (positions in the ordering, mod n). A vertex
/// is a boundary index with an assignment on that boundary. The assignment
/// s of C_i yields the edge s|(C_{i-1} ∩ C_i) -> s|(C_i ∩ C_{i+1}). Vertices
/// are sorted by (boundary, values); edges by (position, assignment).
class OverlapProjectionGraph {
 public:
  struct Vertex {
    std::size_t boundary;
    Tuple values;
  };
  struct Edge {
    std::size_t from;
    std::size_t to;
    /// Position in the ordering of the context generating the edge.
    std::size_t position;
    Tuple assignment;
  };

  OverlapProjectionGraph(const ContextualFamily& family, CycleOrdering ordering);

  const CycleOrdering& ordering() const noexcept { return ordering_; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& out_edges(std::size_t vertex) const { return out_[vertex]; }
  const VarSet& boundary_vars(std::size_t boundary) const { return boundaries_[boundary]; }
  /// Variables of the context at `position` of the ordering.
  const VarSet& context_vars(std::size_t position) const { return context_vars_[position]; }

  /// Lookup by (boundary, values).
  std::optional<std::size_t> find_vertex(std::size_t boundary, const Tuple& values) const;

  /// `i:v1,v2` for a vertex.
  std::string vertex_label(std::size_t vertex) const;
  /// `x=a,y=b` for the generating assignment.
  std::string edge_label(std::size_t edge) const;

 private:
  CycleOrdering ordering_;
  std::vector<VarSet> boundaries_;
  std::vector<VarSet> context_vars_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

OverlapProjectionGraph build_opg(const ContextualFamily& family, const CycleOrdering& ordering);

/// Byte-stable Graphviz rendering.
std::string to_dot(const OverlapProjectionGraph& graph);

struct CycleCover {
  bool covered = false;
  /// Edges lying on no directed cycle, in edge order.
  std::vector<std::size_t> uncovered;
};

/// An edge u -> v lies on a cycle iff u and v share a strongly connected
/// component.
CycleCover has_edge_cycle_cover(const OverlapProjectionGraph& graph);

/// A shortest path from the head of `edge` back to its tail, closed by the
/// edge itself. Returned as edge indices starting with `edge`. Throws
/// ContractError if the edge lies on no cycle.
std::vector<std::size_t> find_simple_cycle_through(const OverlapProjectionGraph& graph, std::size_t edge);

/// The Boolean sub-family made of the assignments generating `cycle`.
ContextualFamily cycle_family(const ContextualFamily& family, const OverlapProjectionGraph& graph,
                              const std::vector<std::size_t>& cycle);

/// True iff the overlap projection graph of `family` is one simple cycle
/// through every assignment.
bool is_simply_cyclic(const ContextualFamily& family, const CycleOrdering& ordering);

/// Annotates a simply cyclic family uniformly with `weight`.
/// Throws ContractError if the family is not simply cyclic or weight is zero.
ContextualFamily lift_uniform(const ContextualFamily& family, const CycleOrdering& ordering,
                              const MonoidValue& weight);

/// Decides K-realisability over a chordless cycle for cancellative K via the
/// edge-cycle-cover criterion. Uses the support of `family`. Throws
/// UnsupportedError for K = B or a context set that is not a chordless cycle.
bool realisable_chordless(const ContextualFamily& family, MonoidKind kind);

/// Sums uniform lifts (by `weight`) of one cycle through every assignment.
/// The result has the same support as `family`. Throws UnsupportedError as
/// realisable_chordless and ContractError if the family is not realisable.
ContextualFamily realise(const ContextualFamily& family, MonoidKind kind, const MonoidValue& weight);

struct WeightedCycle {
  MonoidValue weight;
  /// Simply cyclic Boolean family.
  ContextualFamily cycle;
};

/// Splits an N- or Q-family over a chordless cycle into positively weighted
/// simple cycles. Each step takes the least vertex lying on a cycle, a
/// shortest cycle through it (out-edges tried in edge order), and subtracts
/// its minimum weight.
std::vector<WeightedCycle> decompose_cycles(const ContextualFamily& family);

/// Rebuilds sum_i w_i * S_i; `contexts` is used when the list is empty.
ContextualFamily recompose_cycles(const std::vector<WeightedCycle>& cycles, const ContextSet& contexts,
                                  MonoidKind kind);

struct LpRealisation {
  bool feasible = false;
  /// A contextual family of the requested kind whose support is the input.
  std::optional<ContextualFamily> witness;
};

/// Exact realisability over any context set: one unknown per assignment,
/// marginal equalities for every pair of maximal contexts, and each unknown
/// at least 1 (the system is homogeneous, so any positive solution scales).
/// N witnesses are the rational witness scaled by the denominator lcm.
LpRealisation realisable_lp(const ContextualFamily& family, MonoidKind kind);

}  // namespace ctxfam
