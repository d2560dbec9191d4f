#include "pcineq/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

namespace pcineq {

std::string_view to_string(GraphClass cls) {
  switch (cls) {
    case GraphClass::UndirectedGraph: return "UndirectedGraph";
    case GraphClass::Tree: return "Tree";
    case GraphClass::Forest: return "Forest";
    case GraphClass::DAG: return "DAG";
    case GraphClass::Polytree: return "Polytree";
    case GraphClass::MAG: return "MAG";
    case GraphClass::Invalid: return "Invalid";
  }
  return "Invalid";
}

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Undirected: return "--";
    case EdgeKind::Directed: return "->";
    case EdgeKind::Bidirected: return "<->";
  }
  return "?";
}

namespace {

std::pair<std::size_t, std::size_t> ordered(std::size_t u, std::size_t v) {
  return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

}  // namespace

std::size_t MixedGraph::add_vertex(const std::string& label) {
  if (label.empty()) throw LabelError("empty vertex label");
  auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  std::size_t idx = labels_.size();
  labels_.push_back(label);
  index_.emplace(label, idx);
  adjacency_.emplace_back();
  return idx;
}

void MixedGraph::add_edge(const std::string& u, const std::string& v, EdgeKind kind) {
  if (u == v) throw PreconditionError("self-loop on " + u);
  std::size_t iu = add_vertex(u);
  std::size_t iv = add_vertex(v);
  auto key = ordered(iu, iv);
  if (pair_index_.count(key)) throw PreconditionError("duplicate edge between " + u + " and " + v);
  std::size_t e = edges_.size();
  edges_.push_back({iu, iv, kind});
  pair_index_.emplace(key, e);

  Mark at_u = Mark::Tail, at_v = Mark::Tail;
  if (kind == EdgeKind::Directed) at_v = Mark::Arrow;
  if (kind == EdgeKind::Bidirected) at_u = at_v = Mark::Arrow;
  adjacency_[iu].push_back({iv, e, at_u, at_v});
  adjacency_[iv].push_back({iu, e, at_v, at_u});
}

bool MixedGraph::has_vertex(std::string_view label) const {
  return index_.count(std::string(label)) > 0;
}

std::size_t MixedGraph::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) throw LabelError("unknown vertex '" + std::string(label) + "'");
  return it->second;
}

std::vector<std::size_t> MixedGraph::indices_of(const LabelSet& labels) const {
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(index_of(l));
  return out;
}

LabelSet MixedGraph::labels_of(const std::vector<std::size_t>& idx) const {
  LabelSet out;
  for (auto i : idx) out.insert(labels_[i]);
  return out;
}

std::optional<std::size_t> MixedGraph::edge_between(std::size_t u, std::size_t v) const {
  auto it = pair_index_.find(ordered(u, v));
  if (it == pair_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> MixedGraph::parents(std::size_t v) const {
  std::vector<std::size_t> out;
  for (const auto& inc : adjacency_[v])
    if (inc.near == Mark::Arrow && inc.far == Mark::Tail) out.push_back(inc.other);
  return out;
}

std::vector<std::size_t> MixedGraph::children(std::size_t v) const {
  std::vector<std::size_t> out;
  for (const auto& inc : adjacency_[v])
    if (inc.near == Mark::Tail && inc.far == Mark::Arrow) out.push_back(inc.other);
  return out;
}

std::vector<std::size_t> MixedGraph::spouses(std::size_t v) const {
  std::vector<std::size_t> out;
  for (const auto& inc : adjacency_[v])
    if (inc.near == Mark::Arrow && inc.far == Mark::Arrow) out.push_back(inc.other);
  return out;
}

std::vector<std::size_t> MixedGraph::neighbours(std::size_t v) const {
  std::vector<std::size_t> out;
  for (const auto& inc : adjacency_[v])
    if (inc.near == Mark::Tail && inc.far == Mark::Tail) out.push_back(inc.other);
  return out;
}

bool MixedGraph::has_kind(EdgeKind kind) const { return count_kind(kind) > 0; }

std::size_t MixedGraph::count_kind(EdgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.kind == kind; }));
}

bool operator==(const MixedGraph& lhs, const MixedGraph& rhs) {
  if (lhs.labels_ != rhs.labels_ || lhs.edges_.size() != rhs.edges_.size()) return false;
  for (const auto& e : lhs.edges_) {
    auto other = rhs.edge_between(e.u, e.v);
    if (!other) return false;
    const Edge& f = rhs.edges_[*other];
    if (f.kind != e.kind) return false;
    if (e.kind == EdgeKind::Directed && (f.u != e.u || f.v != e.v)) return false;
  }
  return true;
}

bool Path::contains(std::string_view label) const {
  return std::find(vertices.begin(), vertices.end(), label) != vertices.end();
}

// ---------------------------------------------------------------------------

bool is_undirected(const MixedGraph& g) {
  return !g.has_kind(EdgeKind::Directed) && !g.has_kind(EdgeKind::Bidirected);
}

std::optional<std::vector<std::size_t>> topological_order(const MixedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& e : g.edges())
    if (e.kind == EdgeKind::Directed) ++indeg[e.v];
  // Smallest index first, so the order is deterministic and follows the file.
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.insert(v);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (auto ch : g.children(v))
      if (--indeg[ch] == 0) ready.insert(ch);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

bool is_directed_acyclic(const MixedGraph& g) { return topological_order(g).has_value(); }

std::size_t skeleton_components(const MixedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = n;
  for (const auto& e : g.edges()) {
    auto ru = find(e.u), rv = find(e.v);
    if (ru != rv) {
      parent[ru] = rv;
      --comps;
    }
  }
  return comps;
}

bool skeleton_is_forest(const MixedGraph& g) {
  return g.edges().size() + skeleton_components(g) == g.size();
}

namespace {

// Vertices reachable from `start` (inclusive) by walking edges backwards
// into the start set: u joins when u -> w (or u -- w if `undirected`) for
// some already-reached w.
std::vector<char> reach_back(const MixedGraph& g, const std::vector<std::size_t>& start,
                             bool undirected) {
  std::vector<char> seen(g.size(), 0);
  std::deque<std::size_t> queue;
  for (auto s : start)
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    auto w = queue.front();
    queue.pop_front();
    for (const auto& inc : g.incident(w)) {
      bool into_w = inc.near == Mark::Arrow && inc.far == Mark::Tail;
      bool plain = inc.near == Mark::Tail && inc.far == Mark::Tail;
      if ((into_w || (undirected && plain)) && !seen[inc.other]) {
        seen[inc.other] = 1;
        queue.push_back(inc.other);
      }
    }
  }
  return seen;
}

}  // namespace

// Ancestral: no vertex is anterior to one of its parents or spouses, and a
// vertex with a neighbour has neither parents nor spouses.
bool is_ancestral(const MixedGraph& g) {
  if (!is_directed_acyclic(g)) return false;
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (const auto& inc : g.incident(v)) {
      if (inc.near != Mark::Arrow) continue;
      // inc.other is a parent or spouse of v; v must not be anterior to it.
      auto ant_other = reach_back(g, {inc.other}, true);
      if (ant_other[v]) return false;
    }
    if (!g.neighbours(v).empty() && (!g.parents(v).empty() || !g.spouses(v).empty())) return false;
  }
  return true;
}

GraphClass classify(const MixedGraph& g) {
  bool directed = g.has_kind(EdgeKind::Directed);
  bool bidirected = g.has_kind(EdgeKind::Bidirected);
  bool undirected = g.has_kind(EdgeKind::Undirected);

  if (!directed && !bidirected) {
    if (g.size() > 0 && skeleton_is_forest(g))
      return skeleton_components(g) == 1 ? GraphClass::Tree : GraphClass::Forest;
    return GraphClass::UndirectedGraph;
  }
  if (!bidirected && !undirected) {
    if (!is_directed_acyclic(g)) return GraphClass::Invalid;
    if (skeleton_is_forest(g) && skeleton_components(g) == 1) return GraphClass::Polytree;
    return GraphClass::DAG;
  }
  return is_ancestral(g) ? GraphClass::MAG : GraphClass::Invalid;
}

PathResult unique_path(const MixedGraph& g, std::string_view x, std::string_view y) {
  std::size_t ix = g.index_of(x), iy = g.index_of(y);
  PathResult res;
  if (ix == iy) {
    res.status = PathStatus::Found;
    res.path.vertices = {g.label(ix)};
    return res;
  }

  // BFS tree from x, then check that no edge of the found path is on a cycle
  // of the skeleton. A second simple x-y path exists iff some path edge lies
  // on a cycle.
  const std::size_t n = g.size();
  std::vector<std::ptrdiff_t> prev(n, -1);
  std::vector<std::size_t> prev_edge(n, 0);
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue{ix};
  seen[ix] = 1;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (const auto& inc : g.incident(v)) {
      if (seen[inc.other]) continue;
      seen[inc.other] = 1;
      prev[inc.other] = static_cast<std::ptrdiff_t>(v);
      prev_edge[inc.other] = inc.edge;
      queue.push_back(inc.other);
    }
  }
  if (!seen[iy]) {
    res.status = PathStatus::NoPath;
    return res;
  }

  std::vector<std::size_t> verts{iy};
  std::vector<std::size_t> edges;
  for (auto v = iy; v != ix; v = static_cast<std::size_t>(prev[v])) {
    edges.push_back(prev_edge[v]);
    verts.push_back(static_cast<std::size_t>(prev[v]));
  }
  std::reverse(verts.begin(), verts.end());
  std::reverse(edges.begin(), edges.end());

  // An edge is a bridge iff removing it disconnects its endpoints.
  auto connected_without = [&](std::size_t skip) {
    const Edge& e = g.edges()[skip];
    std::vector<char> vis(n, 0);
    std::deque<std::size_t> q{e.u};
    vis[e.u] = 1;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      if (v == e.v) return true;
      for (const auto& inc : g.incident(v)) {
        if (inc.edge == skip || vis[inc.other]) continue;
        vis[inc.other] = 1;
        q.push_back(inc.other);
      }
    }
    return false;
  };
  for (auto e : edges)
    if (connected_without(e)) {
      res.status = PathStatus::NotUnique;
      return res;
    }

  res.status = PathStatus::Found;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    res.path.vertices.push_back(g.label(verts[i]));
    if (i + 1 < verts.size()) {
      for (const auto& inc : g.incident(verts[i]))
        if (inc.edge == edges[i]) {
          res.path.steps.push_back({inc.near, inc.far});
          break;
        }
    }
  }
  return res;
}

LabelSet ancestors(const MixedGraph& g, const LabelSet& xs) {
  auto seen = reach_back(g, g.indices_of(xs), false);
  LabelSet out;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (seen[v]) out.insert(g.label(v));
  return out;
}

LabelSet anteriors(const MixedGraph& g, const LabelSet& xs) {
  auto seen = reach_back(g, g.indices_of(xs), true);
  LabelSet out;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (seen[v]) out.insert(g.label(v));
  return out;
}

LabelSet descendants(const MixedGraph& g, const LabelSet& xs) {
  std::vector<char> seen(g.size(), 0);
  std::deque<std::size_t> queue;
  for (auto s : g.indices_of(xs))
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto ch : g.children(v))
      if (!seen[ch]) {
        seen[ch] = 1;
        queue.push_back(ch);
      }
  }
  LabelSet out;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (seen[v]) out.insert(g.label(v));
  return out;
}

MixedGraph induced_subgraph(const MixedGraph& g, const LabelSet& keep) {
  for (const auto& l : keep) g.index_of(l);
  MixedGraph out;
  for (const auto& l : g.labels())
    if (keep.contains(l)) out.add_vertex(l);
  for (const auto& e : g.edges()) {
    const auto& u = g.label(e.u);
    const auto& v = g.label(e.v);
    if (keep.contains(u) && keep.contains(v)) out.add_edge(u, v, e.kind);
  }
  return out;
}

}  // namespace pcineq
