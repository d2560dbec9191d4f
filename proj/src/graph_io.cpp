#include "pcineq/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace pcineq {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

enum class Hint { Ug, Dag, Mag };

}  // namespace

MixedGraph parse_graph(std::string_view text) {
  MixedGraph g;
  std::optional<Hint> hint;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (!hint) {
      if (line == "ug") hint = Hint::Ug;
      else if (line == "dag") hint = Hint::Dag;
      else if (line == "mag") hint = Hint::Mag;
      else throw ParseError(lineno, "expected class hint ug, dag or mag, got '" + std::string(line) + "'");
      continue;
    }

    auto toks = split_ws(line);
    if (toks.size() == 2 && toks[0] == "node") {
      g.add_vertex(toks[1]);
      continue;
    }
    if (toks.size() != 3) throw ParseError(lineno, "cannot parse '" + std::string(line) + "'");
    EdgeKind kind;
    if (toks[1] == "--") kind = EdgeKind::Undirected;
    else if (toks[1] == "->") kind = EdgeKind::Directed;
    else if (toks[1] == "<->") kind = EdgeKind::Bidirected;
    else throw ParseError(lineno, "unknown edge operator '" + toks[1] + "'");

    if (*hint == Hint::Ug && kind != EdgeKind::Undirected)
      throw ParseError(lineno, "only undirected edges are allowed in a ug file");
    if (*hint == Hint::Dag && kind != EdgeKind::Directed)
      throw ParseError(lineno, "only directed edges are allowed in a dag file");
    try {
      g.add_edge(toks[0], toks[2], kind);
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!hint) throw ParseError(lineno, "empty graph file");
  return g;
}

MixedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string serialize_graph(const MixedGraph& g) {
  std::ostringstream out;
  if (is_undirected(g))
    out << "ug\n";
  else if (!g.has_kind(EdgeKind::Undirected) && !g.has_kind(EdgeKind::Bidirected))
    out << "dag\n";
  else
    out << "mag\n";
  for (const auto& l : g.labels()) out << "node " << l << "\n";
  for (const auto& e : g.edges())
    out << g.label(e.u) << ' ' << to_string(e.kind) << ' ' << g.label(e.v) << "\n";
  return out.str();
}

}  // namespace pcineq
