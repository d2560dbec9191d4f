#include "pcineq/polytree_select.hpp"

#include <sstream>

#include "pcineq/separation.hpp"

namespace pcineq {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Increases: return "Increases";
    case Direction::Decreases: return "Decreases";
    case Direction::NoEffect: return "NoEffect";
  }
  return "NoEffect";
}

std::string_view to_string(CaseTag t) {
  switch (t) {
    case CaseTag::Cond1: return "Cond1";
    case CaseTag::Cond2: return "Cond2";
    case CaseTag::Degenerate: return "Degenerate";
  }
  return "Degenerate";
}

std::string_view to_string(LocateStatus s) {
  switch (s) {
    case LocateStatus::Located: return "Located";
    case LocateStatus::Ambiguous: return "Ambiguous";
    case LocateStatus::Contradiction: return "Contradiction";
  }
  return "Contradiction";
}

ModselCase modsel_classify(const MixedGraph& g, const std::string& a, const std::string& c,
                           const std::string& b, const std::string& z) {
  if (classify(g) != GraphClass::Polytree) throw ClassMismatch("selection rule needs a polytree");
  for (const auto* l : {&a, &c, &b, &z}) g.index_of(*l);
  if (a == c || c == b || a == b) throw PreconditionError("a, c and b must be distinct");
  if (z == a || z == c || z == b) throw PreconditionError("z must differ from a, c and b");
  if (!ancestors(g, {c}).contains(a)) throw PreconditionError(a + " is not an ancestor of " + c);
  if (!ancestors(g, {b}).contains(c)) throw PreconditionError(c + " is not an ancestor of " + b);

  ModselCase out;
  if (ancestors(g, {z}).contains(b)) {
    out.note = b + " is an ancestor of " + z;
    return out;
  }
  if (d_separated(g, {a, c}, {z}, {b})) {
    out.note = a + "," + c + " _||_ " + z + " | " + b;
    return out;
  }
  bool a_indep = d_separated(g, {a}, {z}, {});
  bool c_indep = d_separated(g, {c}, {z}, {});
  if (a_indep && !c_indep) {
    out.direction = Direction::Increases;
    out.tag = CaseTag::Cond1;
    return out;
  }
  out.direction = Direction::Decreases;
  out.tag = CaseTag::Cond2;
  if (d_separated(g, {a}, {c}, {b, z})) out.note = "rho2(" + a + "," + c + "|" + b + "," + z + ") is zero";
  return out;
}

namespace {

std::string fresh(const MixedGraph& g, std::string base) {
  while (g.has_vertex(base)) base += "'";
  return base;
}

// Copy of g with edge u -> v split by a junction j that z flows into; with
// an empty u the junction sits directly above v.
MixedGraph attach(const MixedGraph& g, const Attachment& at, const std::string& j, const std::string& z) {
  MixedGraph out;
  for (const auto& l : g.labels()) out.add_vertex(l);
  for (const auto& e : g.edges()) {
    const auto& u = g.label(e.u);
    const auto& v = g.label(e.v);
    if (u == at.upper && v == at.lower) continue;
    out.add_edge(u, v, e.kind);
  }
  if (!at.upper.empty()) out.add_edge(at.upper, j, EdgeKind::Directed);
  out.add_edge(j, at.lower, EdgeKind::Directed);
  out.add_edge(z, j, EdgeKind::Directed);
  return out;
}

int sign_of(Direction d) {
  if (d == Direction::Increases) return 1;
  if (d == Direction::Decreases) return -1;
  return 0;
}

}  // namespace

LocateResult locate_junction(const MixedGraph& skeleton, const std::vector<Probe>& probes,
                             const std::string& a, const std::string& b) {
  if (classify(skeleton) != GraphClass::Polytree) throw ClassMismatch("junction search needs a polytree");
  if (probes.empty()) throw PreconditionError("no probes given");
  auto trunk = unique_path(skeleton, a, b);
  if (trunk.status != PathStatus::Found) throw PreconditionError("no path from " + a + " to " + b);
  for (const auto& s : trunk.path.steps)
    if (!(s.left == Mark::Tail && s.right == Mark::Arrow))
      throw PreconditionError("the path from " + a + " to " + b + " is not directed downstream");
  const auto& tv = trunk.path.vertices;
  for (const auto& p : probes) {
    if (!trunk.path.contains(p.label) || p.label == a || p.label == b)
      throw PreconditionError("probe " + p.label + " is not strictly inside the trunk");
    if (p.sign < -1 || p.sign > 1) throw PreconditionError("probe sign must be -1, 0 or 1");
  }

  LocateResult res;
  for (const auto& p : probes)
    if (p.sign == 0) {
      res.notes.push_back("probe " + p.label +
                          " shows no change; every junction on or above the trunk changes every probe");
      return res;
    }

  std::string z = fresh(skeleton, "z");
  std::string j = fresh(skeleton, "junction");
  std::vector<Attachment> all{{"", a}};
  for (std::size_t k = 1; k < tv.size(); ++k) all.push_back({tv[k - 1], tv[k]});

  for (const auto& at : all) {
    MixedGraph g = attach(skeleton, at, j, z);
    bool ok = true;
    for (const auto& p : probes)
      if (sign_of(modsel_classify(g, a, p.label, b, z).direction) != p.sign) {
        ok = false;
        break;
      }
    if (ok) res.candidates.push_back(at);
  }

  if (res.candidates.empty()) {
    res.notes.push_back("no junction position reproduces the observed signs");
    return res;
  }
  // Consistent trunk edges are contiguous when they share endpoints.
  bool contiguous = true;
  for (std::size_t k = 1; k < res.candidates.size(); ++k)
    if (res.candidates[k].upper != res.candidates[k - 1].lower) contiguous = false;
  if (!contiguous) {
    res.status = LocateStatus::Ambiguous;
    res.notes.push_back("consistent positions are not adjacent");
    return res;
  }
  res.status = LocateStatus::Located;
  res.segment = {res.candidates.front().upper, res.candidates.back().lower};
  return res;
}

std::vector<Probe> parse_probes(std::string_view text) {
  std::vector<Probe> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      auto b = cell.find_first_not_of(" \t\r");
      auto e = cell.find_last_not_of(" \t\r");
      cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (cells.empty() || (cells.size() == 1 && cells[0].empty())) continue;
    if (cells.size() != 2) throw ParseError(lineno, "expected 'probe,sign'");
    if (cells[0] == "probe" && cells[1] == "sign") continue;
    const auto& s = cells[1];
    int sign;
    if (s == "+" || s == "1" || s == "+1") sign = 1;
    else if (s == "-" || s == "-1") sign = -1;
    else if (s == "0") sign = 0;
    else throw ParseError(lineno, "bad sign '" + s + "'");
    out.push_back({cells[0], sign});
  }
  return out;
}

}  // namespace pcineq
