#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pcineq/labels.hpp"

namespace pcineq {

enum class EdgeKind { Undirected, Directed, Bidirected };

// Endpoint mark of an edge at one of its vertices.
enum class Mark { Tail, Arrow };

enum class GraphClass { UndirectedGraph, Tree, Forest, DAG, Polytree, MAG, Invalid };

std::string_view to_string(GraphClass cls);
std::string_view to_string(EdgeKind kind);

struct Edge {
  std::size_t u;  // tail for directed edges
  std::size_t v;  // head for directed edges
  EdgeKind kind;
};

// Vertex set plus typed edge set. At most one edge per unordered vertex pair
// and no self-loops. Vertex order is insertion order.
class MixedGraph {
 public:
  struct Incidence {
    std::size_t other;
    std::size_t edge;
    Mark near;  // mark at this vertex
    Mark far;   // mark at `other`
  };

  MixedGraph() = default;

  // Returns the index of `label`, adding it if absent.
  std::size_t add_vertex(const std::string& label);
  // Directed edges run u -> v. Throws PreconditionError on self-loops and on a
  // second edge between the same pair.
  void add_edge(const std::string& u, const std::string& v, EdgeKind kind);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(std::string_view label) const;
  // Throws LabelError for unknown labels.
  std::size_t index_of(std::string_view label) const;
  std::vector<std::size_t> indices_of(const LabelSet& labels) const;
  LabelSet labels_of(const std::vector<std::size_t>& idx) const;

  const std::vector<Incidence>& incident(std::size_t v) const { return adjacency_[v]; }
  std::optional<std::size_t> edge_between(std::size_t u, std::size_t v) const;
  bool adjacent(std::size_t u, std::size_t v) const { return edge_between(u, v).has_value(); }

  std::vector<std::size_t> parents(std::size_t v) const;
  std::vector<std::size_t> children(std::size_t v) const;
  std::vector<std::size_t> spouses(std::size_t v) const;
  std::vector<std::size_t> neighbours(std::size_t v) const;

  bool has_kind(EdgeKind kind) const;
  std::size_t count_kind(EdgeKind kind) const;

  // Same vertex sequence and the same edge set.
  friend bool operator==(const MixedGraph& lhs, const MixedGraph& rhs);

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index_;
};

// A simple path in the skeleton. steps[i] joins vertices[i] and
// vertices[i + 1]; the marks record edge orientation along the path.
struct PathStep {
  Mark left;   // mark at vertices[i]
  Mark right;  // mark at vertices[i + 1]
};

struct Path {
  std::vector<std::string> vertices;
  std::vector<PathStep> steps;

  bool contains(std::string_view label) const;
  LabelSet as_set() const { return LabelSet(vertices); }
};

enum class PathStatus { Found, NotUnique, NoPath };

struct PathResult {
  PathStatus status = PathStatus::NoPath;
  Path path;  // valid when status == Found
};

GraphClass classify(const MixedGraph& g);

bool is_undirected(const MixedGraph& g);
bool is_directed_acyclic(const MixedGraph& g);
bool is_ancestral(const MixedGraph& g);
// Number of connected components of the skeleton.
std::size_t skeleton_components(const MixedGraph& g);
bool skeleton_is_forest(const MixedGraph& g);
// Topological order over the directed edges; empty optional on a cycle.
std::optional<std::vector<std::size_t>> topological_order(const MixedGraph& g);

// The skeleton path between x and y if it is the only one. Edge direction is
// ignored for connectivity and kept in the returned steps.
PathResult unique_path(const MixedGraph& g, std::string_view x, std::string_view y);

// Reflexive ancestor set over directed edges.
LabelSet ancestors(const MixedGraph& g, const LabelSet& xs);
// Reflexive anterior set: undirected edges, or directed edges pointing
// toward the target set.
LabelSet anteriors(const MixedGraph& g, const LabelSet& xs);
LabelSet descendants(const MixedGraph& g, const LabelSet& xs);

MixedGraph induced_subgraph(const MixedGraph& g, const LabelSet& keep);

}  // namespace pcineq
