#include <doctest.h>

#include <set>

#include "pcineq/corpus.hpp"
#include "pcineq/graph.hpp"
#include "pcineq/graph_io.hpp"
#include "support/fixtures.hpp"

using namespace pcineq;

TEST_SUITE("graph_core") {

TEST_CASE("parse smallest files") {
  MixedGraph g = parse_graph("ug\na -- b\n");
  CHECK(g.size() == 2);
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges()[0].kind == EdgeKind::Undirected);

  MixedGraph col = parse_graph("dag\na -> x\nc -> x\n");
  CHECK(col.labels() == std::vector<std::string>{"a", "x", "c"});
  CHECK(col.parents(col.index_of("x")).size() == 2);
}

TEST_CASE("parse errors carry a line number") {
  CHECK_THROWS_AS(parse_graph("dag\na -> a\n"), ParseError);
  try {
    parse_graph("dag\n# comment\na -> b\nb => c\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_graph("ug\na -> b\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("dag\na -- b\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("dag\na -> b\nb -> a\n"), Error);
  CHECK_THROWS_AS(parse_graph("a -> b\n"), ParseError);
}

TEST_CASE("isolated nodes and comments") {
  MixedGraph g = parse_graph("# header\n\nmag\nnode q\na <-> b  # trailing\n");
  CHECK(g.labels() == std::vector<std::string>{"q", "a", "b"});
  CHECK(g.count_kind(EdgeKind::Bidirected) == 1);
}

TEST_CASE("classify reference graphs") {
  CHECK(classify(fx::graph("collider_branch_polytree")) == GraphClass::Polytree);
  CHECK(classify(fx::graph("star_tree")) == GraphClass::Tree);
  CHECK(classify(fx::graph("bidirected_collider_mag")) == GraphClass::MAG);
  CHECK(classify(fx::graph("collider_shortcut_dag")) == GraphClass::DAG);
  CHECK(classify(parse_graph("ug\na -- b\nc -- d\n")) == GraphClass::Forest);
  CHECK(classify(parse_graph("ug\na -- b\nb -- c\nc -- a\n")) == GraphClass::UndirectedGraph);
  // a -> b <-> c with c -> a: b is anterior to itself through c.
  CHECK(classify(parse_graph("mag\na -> b\nb <-> c\nc -> a\n")) == GraphClass::Invalid);
  // undirected edge into a vertex with a parent
  CHECK(classify(parse_graph("mag\na -> b\nb -- c\n")) == GraphClass::Invalid);
}

TEST_CASE("unique path") {
  MixedGraph chain = parse_graph("ug\na -- x\nx -- c\n");
  auto r = unique_path(chain, "a", "c");
  REQUIRE(r.status == PathStatus::Found);
  CHECK(r.path.vertices == std::vector<std::string>{"a", "x", "c"});
  CHECK(r.path.contains("a"));

  CHECK(unique_path(parse_graph("ug\na -- b\nc -- d\n"), "a", "c").status == PathStatus::NoPath);
  MixedGraph cycle = parse_graph("ug\na -- b\nb -- c\nc -- d\nd -- a\n");
  CHECK(unique_path(cycle, "a", "c").status == PathStatus::NotUnique);

  MixedGraph col = parse_graph("dag\na -> x\nc -> x\n");
  auto p = unique_path(col, "a", "c");
  REQUIRE(p.status == PathStatus::Found);
  CHECK(p.path.steps[0].right == Mark::Arrow);
  CHECK(p.path.steps[1].left == Mark::Arrow);
  CHECK_THROWS_AS(unique_path(col, "a", "nope"), LabelError);
}

TEST_CASE("ancestors and anteriors") {
  MixedGraph chain = parse_graph("dag\na -> x\nx -> c\n");
  CHECK(ancestors(chain, {"c"}) == LabelSet{"a", "x", "c"});
  CHECK(ancestors(chain, {"a"}) == LabelSet{"a"});
  CHECK(anteriors(parse_graph("ug\na -- b\nb -- c\n"), {"c"}) == LabelSet{"a", "b", "c"});
  CHECK(anteriors(parse_graph("dag\na -> b\n"), {"a"}) == LabelSet{"a"});
  CHECK(ancestors(fx::graph("parent_branch_long_polytree"), {"b2"}) == LabelSet{"b2", "y", "x", "a", "z", "zp"});
  CHECK_THROWS_AS(ancestors(chain, {"q"}), LabelError);
}

TEST_CASE("induced subgraph") {
  MixedGraph star = fx::graph("star_tree");
  CHECK(induced_subgraph(star, LabelSet(star.labels())) == star);
  MixedGraph chain = parse_graph("ug\na -- x\nx -- c\n");
  MixedGraph split = induced_subgraph(chain, {"a", "c"});
  CHECK(split.size() == 2);
  CHECK(split.edges().empty());
  MixedGraph cut = induced_subgraph(star, {"x", "a", "c", "zp"});
  CHECK(cut.edges().size() == 3);
  CHECK(classify(cut) == GraphClass::Tree);
}

TEST_CASE("properties over generated graphs") {
  CorpusSpec spec;
  spec.max_vertices = 8;
  for (const auto& e : generated_corpus(spec)) {
    const MixedGraph& g = e.graph;
    CAPTURE(e.name);
    // Serialization round trip.
    CHECK(parse_graph(serialize_graph(g)) == g);
    GraphClass cls = classify(g);
    CHECK(cls != GraphClass::Invalid);

    if (cls == GraphClass::DAG || cls == GraphClass::Polytree) {
      for (const auto& v : g.labels()) CHECK(anteriors(g, {v}) == ancestors(g, {v}));
    }
    if (cls == GraphClass::Polytree || cls == GraphClass::Tree) {
      for (const auto& x : g.labels())
        for (const auto& y : g.labels()) CHECK(unique_path(g, x, y).status == PathStatus::Found);
    }
    if (cls == GraphClass::Tree) {
      for (std::size_t mask = 0; mask < (1u << g.size()); mask += 3) {
        LabelSet keep;
        for (std::size_t i = 0; i < g.size(); ++i)
          if (mask >> i & 1) keep.insert(g.label(i));
        if (keep.empty()) continue;
        auto c = classify(induced_subgraph(g, keep));
        CHECK((c == GraphClass::Tree || c == GraphClass::Forest));
      }
    }
    // Monotone and idempotent ancestor closure.
    if (g.size() >= 2) {
      LabelSet x{g.label(0)}, y{g.label(0), g.label(1)};
      CHECK(ancestors(g, x).subset_of(ancestors(g, y)));
      CHECK(ancestors(g, ancestors(g, y)) == ancestors(g, y));
    }
  }
}

TEST_CASE("duplicate edges rejected") {
  MixedGraph g;
  g.add_edge("a", "b", EdgeKind::Directed);
  CHECK_THROWS_AS(g.add_edge("b", "a", EdgeKind::Bidirected), PreconditionError);
  CHECK_THROWS_AS(parse_graph("dag\na -> b\na -> b\n"), Error);
}

}
