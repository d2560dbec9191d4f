#include "pcineq/separation.hpp"

#include <algorithm>
#include <deque>
#include <vector>

namespace pcineq {

std::string to_string(const Triple& t) {
  std::string out = t.t1.joined() + " _||_ " + t.t2.joined();
  if (!t.t3.empty()) out += " | " + t.t3.joined();
  return out;
}

ColliderStatus collider_status(const Path& p, std::string_view v) {
  auto it = std::find(p.vertices.begin(), p.vertices.end(), v);
  if (it == p.vertices.end()) throw LabelError("vertex '" + std::string(v) + "' is not on the path");
  auto i = static_cast<std::size_t>(it - p.vertices.begin());
  if (i == 0 || i + 1 == p.vertices.size()) return ColliderStatus::Endpoint;
  bool in_arrow = p.steps[i - 1].right == Mark::Arrow;
  bool out_arrow = p.steps[i].left == Mark::Arrow;
  return in_arrow && out_arrow ? ColliderStatus::Collider : ColliderStatus::NonCollider;
}

namespace {

void check_disjoint(const MixedGraph& g, const LabelSet& x, const LabelSet& y, const LabelSet& z) {
  for (const auto* s : {&x, &y, &z})
    for (const auto& l : *s) g.index_of(l);
  if (x.intersects(y) || x.intersects(z) || y.intersects(z))
    throw PreconditionError("separation query sets must be pairwise disjoint");
}

std::vector<char> mask_of(const MixedGraph& g, const LabelSet& s) {
  std::vector<char> m(g.size(), 0);
  for (auto i : g.indices_of(s)) m[i] = 1;
  return m;
}

// Connecting-walk search over (edge, direction) states. A walk may turn at
// v from edge e onto edge f != e when v is a collider in `collider_ok`, or a
// non-collider outside Z.
bool connected(const MixedGraph& g, const LabelSet& x, const LabelSet& y, const LabelSet& z,
               const LabelSet& collider_ok) {
  if (x.empty() || y.empty()) return false;
  auto in_z = mask_of(g, z);
  auto in_y = mask_of(g, y);
  auto ok = mask_of(g, collider_ok);

  const std::size_t m = g.edges().size();
  // state index: edge * 2 + (1 if travelling u -> v, 0 if v -> u)
  std::vector<char> seen(2 * m, 0);
  std::deque<std::size_t> queue;
  auto push = [&](std::size_t edge, std::size_t from) {
    const Edge& e = g.edges()[edge];
    std::size_t s = edge * 2 + (from == e.u ? 1 : 0);
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  };
  for (auto s : g.indices_of(x))
    for (const auto& inc : g.incident(s)) push(inc.edge, s);

  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    std::size_t edge = s / 2;
    const Edge& e = g.edges()[edge];
    std::size_t v = (s % 2) ? e.v : e.u;
    if (in_y[v]) return true;

    Mark arrive = Mark::Tail;
    for (const auto& inc : g.incident(v))
      if (inc.edge == edge) arrive = inc.near;
    for (const auto& inc : g.incident(v)) {
      if (inc.edge == edge) continue;
      bool collider = arrive == Mark::Arrow && inc.near == Mark::Arrow;
      bool legal = collider ? ok[v] != 0 : in_z[v] == 0;
      if (legal) push(inc.edge, v);
    }
  }
  return false;
}

}  // namespace

bool ug_separated(const MixedGraph& g, const LabelSet& a, const LabelSet& c, const LabelSet& z) {
  if (!is_undirected(g)) throw ClassMismatch("UG separation needs an undirected graph");
  check_disjoint(g, a, c, z);
  if (a.empty() || c.empty()) return true;
  auto in_z = mask_of(g, z);
  auto in_c = mask_of(g, c);
  std::vector<char> seen(g.size(), 0);
  std::deque<std::size_t> queue;
  for (auto s : g.indices_of(a)) {
    seen[s] = 1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (in_c[v]) return false;
    for (const auto& inc : g.incident(v)) {
      if (seen[inc.other] || in_z[inc.other]) continue;
      seen[inc.other] = 1;
      queue.push_back(inc.other);
    }
  }
  return true;
}

bool d_separated(const MixedGraph& g, const LabelSet& x, const LabelSet& y, const LabelSet& z) {
  if (g.has_kind(EdgeKind::Undirected) || g.has_kind(EdgeKind::Bidirected) || !is_directed_acyclic(g))
    throw ClassMismatch("d-separation needs a DAG");
  check_disjoint(g, x, y, z);
  return !connected(g, x, y, z, ancestors(g, z));
}

bool m_separated(const MixedGraph& g, const LabelSet& x, const LabelSet& y, const LabelSet& z) {
  if (classify(g) == GraphClass::Invalid) throw ClassMismatch("m-separation needs an ancestral graph");
  check_disjoint(g, x, y, z);
  return !connected(g, x, y, z, anteriors(g, z));
}

MixedGraph condition_model(const MixedGraph& g, const LabelSet& z) {
  if (!is_undirected(g)) throw ClassMismatch("conditioning a model needs an undirected graph");
  for (const auto& l : z) g.index_of(l);
  return induced_subgraph(g, LabelSet(g.labels()) - z);
}

bool separation_oracle(const MixedGraph& g, GraphClass cls, const Triple& t) {
  switch (cls) {
    case GraphClass::UndirectedGraph:
    case GraphClass::Tree:
    case GraphClass::Forest:
      return ug_separated(g, t.t1, t.t2, t.t3);
    case GraphClass::DAG:
    case GraphClass::Polytree:
      return d_separated(g, t.t1, t.t2, t.t3);
    case GraphClass::MAG:
      return m_separated(g, t.t1, t.t2, t.t3);
    case GraphClass::Invalid:
      break;
  }
  throw ClassMismatch("no separation criterion for an invalid graph");
}

bool separation_oracle(const MixedGraph& g, const Triple& t) {
  return separation_oracle(g, classify(g), t);
}

}  // namespace pcineq
