#include "pcineq/tree_rules.hpp"

#include <deque>

namespace pcineq {

namespace {

void require_tree(const MixedGraph& g) {
  if (classify(g) != GraphClass::Tree) throw ClassMismatch("operation needs an undirected tree");
}

Path path_between(const MixedGraph& g, const std::string& x, const std::string& y) {
  auto r = unique_path(g, x, y);
  if (r.status != PathStatus::Found) throw PreconditionError("no unique path between " + x + " and " + y);
  return r.path;
}

bool meets(const Path& p, const LabelSet& s) {
  for (const auto& v : p.vertices)
    if (s.contains(v)) return true;
  return false;
}

// Every path from a or c to each vertex of `far` meets `near`.
bool paths_blocked(const MixedGraph& g, const std::string& a, const std::string& c, const LabelSet& near,
                   const LabelSet& far, std::vector<Triple>& used) {
  for (const auto& z : far) {
    if (!meets(path_between(g, a, z), near) || !meets(path_between(g, c, z), near)) return false;
  }
  LabelSet rest = far - near;
  if (!rest.empty()) used.push_back({LabelSet{a, c}, rest, near});
  return true;
}

Verdict make(Relation r, Quantity left, Quantity right, ProofStep step) {
  Verdict v;
  v.relation = r;
  v.left = std::move(left);
  v.right = std::move(right);
  if (r == Relation::GE) v.chain = {v.right, v.left};
  else v.chain = {v.left, v.right};
  v.links = {r == Relation::EQ ? Relation::EQ : Relation::LE};
  v.trace.push_back(std::move(step));
  return v;
}

}  // namespace

Verdict tree_compare_fixed_conditionate(const MixedGraph& tree, const std::string& a,
                                        const std::string& c, const std::string& cprime,
                                        const LabelSet& z) {
  require_tree(tree);
  for (const auto& l : z) tree.index_of(l);
  if (a == c || a == cprime || c == cprime) throw PreconditionError("a, c and c' must be distinct");
  if (z.contains(a) || z.contains(c) || z.contains(cprime))
    throw PreconditionError("correlates must not be in the conditioning set");

  Quantity left{a, cprime, z}, right{a, c, z};
  Path p = path_between(tree, a, cprime);
  if (!p.contains(c)) {
    Verdict v;
    v.left = left;
    v.right = right;
    v.notes.push_back(c + " is not on the path from " + a + " to " + cprime);
    return v;
  }
  ProofStep step{"CorrelatePath", c, z, {{LabelSet{cprime}, LabelSet{a}, LabelSet{c} | z}}, ""};
  step.note = "path " + LabelSet(p.vertices).joined("-");
  return make(Relation::LE, left, right, std::move(step));
}

Verdict tree_compare_conditionates(const MixedGraph& tree, const std::string& a, const std::string& c,
                                   const LabelSet& z1, const LabelSet& z2) {
  require_tree(tree);
  for (const auto& l : z1 | z2) tree.index_of(l);
  if (a == c) throw PreconditionError("correlates must differ");
  LabelSet ac{a, c};
  if (ac.intersects(z1) || ac.intersects(z2))
    throw PreconditionError("correlates must not be in a conditioning set");

  Quantity q1{a, c, z1}, q2{a, c, z2};
  Path pac = path_between(tree, a, c);

  auto certify = [&](const LabelSet& near, const LabelSet& far, ProofStep& step) {
    if (meets(pac, near)) {
      step.rule = "ZeroCorrelation";
      step.triples.push_back({LabelSet{a}, LabelSet{c}, near});
      step.note = "conditioning set meets the path " + LabelSet(pac.vertices).joined("-");
      return true;
    }
    step.rule = "PathSeparation";
    return paths_blocked(tree, a, c, near, far, step.triples);
  };

  ProofStep le{"", "", z1, {}, ""}, ge{"", "", z2, {}, ""};
  bool is_le = certify(z1, z2, le);
  bool is_ge = certify(z2, z1, ge);
  bool zero1 = le.rule == "ZeroCorrelation", zero2 = ge.rule == "ZeroCorrelation";
  auto with_zeros = [&](Verdict v) {
    if (zero1) v.zeros.push_back(q1);
    if (zero2) v.zeros.push_back(q2);
    return v;
  };
  if (is_le && is_ge) {
    Verdict v = make(Relation::EQ, q1, q2, std::move(le));
    v.trace.push_back(std::move(ge));
    return with_zeros(std::move(v));
  }
  if (is_le) return with_zeros(make(Relation::LE, q1, q2, std::move(le)));
  if (is_ge) return with_zeros(make(Relation::GE, q1, q2, std::move(ge)));
  Verdict v;
  v.left = q1;
  v.right = q2;
  v.notes.push_back("neither conditioning set separates the other from " + a + "," + c);
  return v;
}

Verdict tree_general_compare(const MixedGraph& tree, const std::string& a, const std::string& c,
                             const std::string& cprime, const LabelSet& z, const LabelSet& zprime) {
  require_tree(tree);
  for (const auto& l : z | zprime) tree.index_of(l);
  Quantity left{a, cprime, zprime}, right{a, c, z};
  LabelSet named{a, c, cprime};
  if (a == c || a == cprime) throw PreconditionError("a must differ from c and c'");
  if (named.intersects(z) || LabelSet{a, cprime}.intersects(zprime))
    throw PreconditionError("correlates must not be in a conditioning set");

  auto fail = [&](std::string note) {
    Verdict v;
    v.left = left;
    v.right = right;
    v.notes.push_back(std::move(note));
    return v;
  };

  if (c == cprime && z.same_as(zprime)) {
    ProofStep step{"IdenticalConditionates", "", z, {}, "both factors are one"};
    return make(Relation::EQ, left, right, std::move(step));
  }

  Path pac2 = path_between(tree, a, cprime);
  if (!pac2.contains(c)) return fail(c + " is not on the path from " + a + " to " + cprime);
  Triple sep{LabelSet{a, cprime}, z - zprime, zprime};
  if (!sep.t2.empty() && !ug_separated(tree, sep.t1, sep.t2, sep.t3))
    return fail("premise fails: " + to_string(sep));

  if (meets(pac2, zprime)) {
    ProofStep step{"ZeroCorrelation", "", zprime, {{LabelSet{a}, LabelSet{cprime}, zprime}}, ""};
    Verdict v = make(Relation::LE, left, right, std::move(step));
    v.zeros.push_back(left);
    return v;
  }

  // rho^2(a,c'|Z') <= rho^2(a,c|Z') <= rho^2(a,c|Z)
  Verdict first = tree_compare_fixed_conditionate(tree, a, c, cprime, zprime);
  Verdict second = tree_compare_conditionates(tree, a, c, zprime, z);
  if (!first.certified()) return fail("correlate factor not certified");
  if (!(second.relation == Relation::LE || second.relation == Relation::EQ))
    return fail("conditionate factor not certified");

  Verdict v;
  v.relation = Relation::LE;
  v.left = left;
  v.right = right;
  Quantity mid{a, c, zprime};
  v.chain = {left, mid, right};
  v.links = {Relation::LE, second.relation == Relation::EQ ? Relation::EQ : Relation::LE};
  v.trace = first.trace;
  v.trace.insert(v.trace.end(), second.trace.begin(), second.trace.end());
  return v;
}

MixedGraph orient_from(const MixedGraph& tree, const std::string& root) {
  if (!is_undirected(tree) || !skeleton_is_forest(tree)) throw ClassMismatch("orientation needs a tree or forest");
  MixedGraph out;
  for (const auto& l : tree.labels()) out.add_vertex(l);
  std::vector<char> seen(tree.size(), 0);
  std::vector<std::size_t> starts{tree.index_of(root)};
  for (std::size_t v = 0; v < tree.size(); ++v) starts.push_back(v);
  for (auto s : starts) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (const auto& inc : tree.incident(v)) {
        if (seen[inc.other]) continue;
        seen[inc.other] = 1;
        out.add_edge(tree.label(v), tree.label(inc.other), EdgeKind::Directed);
        queue.push_back(inc.other);
      }
    }
  }
  return out;
}

namespace {

// Nearest vertex of `target` reachable from the a-c path without passing
// through `stop` or other targets; returns the branch from the path.
std::vector<std::size_t> nearest_branch(const MixedGraph& g, const Path& pac, const LabelSet& target,
                                        const LabelSet& stop) {
  const std::size_t n = g.size();
  std::vector<std::ptrdiff_t> prev(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  for (const auto& l : pac.vertices) {
    auto i = g.index_of(l);
    seen[i] = 1;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (target.contains(g.label(v))) {
      std::vector<std::size_t> branch{v};
      while (prev[branch.back()] >= 0) branch.push_back(static_cast<std::size_t>(prev[branch.back()]));
      return {branch.rbegin(), branch.rend()};  // starts at the attachment vertex on the path
    }
    if (stop.contains(g.label(v))) continue;
    for (const auto& inc : g.incident(v)) {
      if (seen[inc.other]) continue;
      seen[inc.other] = 1;
      prev[inc.other] = static_cast<std::ptrdiff_t>(v);
      queue.push_back(inc.other);
    }
  }
  return {};
}

}  // namespace

Witness completeness_witness(const MixedGraph& tree, const std::string& a, const std::string& c,
                             const LabelSet& z1, const LabelSet& z2, double b) {
  require_tree(tree);
  for (const auto& l : z1 | z2) tree.index_of(l);
  if (a == c) throw PreconditionError("correlates must differ");
  Path pac = path_between(tree, a, c);
  if (meets(pac, z1 | z2)) throw PreconditionError("conditioning sets meet the path between the correlates");
  LabelSet ac{a, c};
  if (z2.subset_of(z1) || ug_separated(tree, ac, z2 - z1, z1))
    throw PreconditionError("a,c are separated from Z2 given Z1");
  if (z1.subset_of(z2) || ug_separated(tree, ac, z1 - z2, z2))
    throw PreconditionError("a,c are separated from Z1 given Z2");

  auto br1 = nearest_branch(tree, pac, z1 - z2, z2);
  auto br2 = nearest_branch(tree, pac, z2 - z1, z1);
  if (br1.size() < 2 || br2.size() < 2) throw PreconditionError("no unblocked branch to Z1 or Z2");

  // Vertex order and the union subtree, oriented away from the a-c path.
  LabelSet order(pac.vertices);
  for (std::size_t k = 1; k < br1.size(); ++k) order.insert(tree.label(br1[k]));
  for (std::size_t k = 1; k < br2.size(); ++k) order.insert(tree.label(br2[k]));
  for (const auto& l : tree.labels()) order.insert(l);

  MixedGraph dag;
  for (const auto& l : order) dag.add_vertex(l);
  auto add = [&](const std::string& u, const std::string& v) {
    if (!dag.adjacent(dag.index_of(u), dag.index_of(v))) dag.add_edge(u, v, EdgeKind::Directed);
  };
  for (std::size_t k = 1; k < pac.vertices.size(); ++k) add(pac.vertices[k - 1], pac.vertices[k]);
  for (const auto* br : {&br1, &br2})
    for (std::size_t k = 1; k < br->size(); ++k) add(tree.label((*br)[k - 1]), tree.label((*br)[k]));

  std::string w1 = tree.label(br1.back()), w2 = tree.label(br2.back());
  std::string p1 = tree.label(br1[br1.size() - 2]), p2 = tree.label(br2[br2.size() - 2]);
  auto params = [&](double c1, double c2) {
    SemParams p = SemParams::unit(dag);
    p.beta[{p1, w1}] = c1;
    p.beta[{p2, w2}] = c2;
    return p;
  };
  return Witness{w1,
                 w2,
                 order.items(),
                 b,
                 b,
                 sem_covariance(dag, params(0.0, b)),
                 sem_covariance(dag, params(b, 0.0))};
}

}  // namespace pcineq
