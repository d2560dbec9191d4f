#include <doctest.h>

#include "pcineq/corpus.hpp"
#include "pcineq/gaussian.hpp"
#include "pcineq/graph_io.hpp"
#include "pcineq/separation.hpp"
#include "pcineq/verify.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

using namespace pcineq;

namespace {

std::vector<LabelSet> subsets(const std::vector<std::string>& pool, std::size_t max_size) {
  std::vector<LabelSet> out;
  for (std::size_t mask = 0; mask < (1u << pool.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > max_size) continue;
    LabelSet s;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask >> i & 1) s.insert(pool[i]);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_SUITE("separation") {

TEST_CASE("collider status") {
  MixedGraph col = parse_graph("dag\na -> x\nc -> x\n");
  Path p = unique_path(col, "a", "c").path;
  CHECK(collider_status(p, "x") == ColliderStatus::Collider);
  CHECK(collider_status(p, "a") == ColliderStatus::Endpoint);
  MixedGraph chain = parse_graph("dag\na -> x\nx -> c\n");
  CHECK(collider_status(unique_path(chain, "a", "c").path, "x") == ColliderStatus::NonCollider);
  CHECK_THROWS_AS(collider_status(p, "q"), LabelError);
  MixedGraph mixed = parse_graph("mag\na <-> x\nc -> x\n");
  CHECK(collider_status(unique_path(mixed, "a", "c").path, "x") == ColliderStatus::Collider);
}

TEST_CASE("undirected separation") {
  MixedGraph star = fx::graph("star_tree");
  CHECK(ug_separated(star, {"a"}, {"c"}, {"x"}));
  CHECK_FALSE(ug_separated(star, {"a"}, {"c"}, {}));
  CHECK(ug_separated(star, {"a", "c"}, {"z"}, {"x"}));
  CHECK_THROWS_AS(ug_separated(star, {"a"}, {"a"}, {}), PreconditionError);
  CHECK_THROWS_AS(ug_separated(fx::graph("star_polytree"), {"a"}, {"c"}, {}), ClassMismatch);
  // A path through another member of A still has to meet Z.
  MixedGraph chain = parse_graph("ug\na -- b\nb -- c\n");
  CHECK_FALSE(ug_separated(chain, {"a", "b"}, {"c"}, {}));
}

TEST_CASE("d-separation examples") {
  CHECK(d_separated(fx::graph("chain_spouse_polytree"), {"a"}, {"c"}, {"b", "x"}));
  CHECK_FALSE(d_separated(fx::graph("collider_branch_polytree"), {"c3"}, {"a"}, {"z1", "z2", "z3", "z4", "c1"}));
  MixedGraph col = parse_graph("dag\na -> x\nc -> x\n");
  CHECK(d_separated(col, {"a"}, {"c"}, {}));
  CHECK_FALSE(d_separated(col, {"a"}, {"c"}, {"x"}));
  CHECK_THROWS_AS(d_separated(fx::graph("star_tree"), {"a"}, {"c"}, {}), ClassMismatch);
}

TEST_CASE("m-separation examples") {
  MixedGraph chain = fx::graph("bidirected_chain_mag");
  CHECK(m_separated(chain, {"a", "c"}, {"b"}, {"x"}));
  CHECK_FALSE(m_separated(chain, {"a", "c"}, {"b"}, {"z", "x"}));
  CHECK(m_separated(fx::graph("bidirected_collider_mag"), {"a"}, {"c"}, {}));
}

TEST_CASE("condition model") {
  MixedGraph star = fx::graph("star_tree");
  CHECK(condition_model(star, {}) == star);
  MixedGraph split = condition_model(star, {"x"});
  CHECK(skeleton_components(split) >= 2);
  MixedGraph rest = condition_model(star, {"z"});
  CHECK(rest.labels() == std::vector<std::string>{"x", "a", "c", "zp"});
  CHECK(classify(rest) == GraphClass::Tree);
}

TEST_CASE("oracle dispatch") {
  CHECK(separation_oracle(fx::graph("parent_branch_long_polytree"),
                          Triple{{"a", "z"}, {"c", "b1", "b2", "b3"}, {"x"}}));
  CHECK(separation_oracle(parse_graph("ug\na -- b\nnode c\n"), Triple{{"a"}, {"c"}, {}}));
  CHECK_FALSE(separation_oracle(fx::graph("bidirected_chain_mag"), Triple{{"a", "c"}, {"b"}, {"z", "x"}}));
  CHECK_THROWS_AS(separation_oracle(parse_graph("mag\na -> b\nb -- c\n"), Triple{{"a"}, {"c"}, {}}), ClassMismatch);
}

TEST_CASE("agreement with path enumeration") {
  CorpusSpec spec;
  spec.max_vertices = 6;
  spec.per_size = 4;
  spec.seed = 11;
  std::size_t checked = 0;
  for (const auto& e : generated_corpus(spec)) {
    const MixedGraph& g = e.graph;
    GraphClass cls = classify(g);
    const auto& v = g.labels();
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        std::vector<std::string> rest;
        for (const auto& l : v)
          if (l != v[i] && l != v[j]) rest.push_back(l);
        for (const auto& z : subsets(rest, 3)) {
          bool want = bf::separated(g, {v[i]}, {v[j]}, z.items());
          CAPTURE(e.name);
          CHECK(separation_oracle(g, cls, Triple{{v[i]}, {v[j]}, z}) == want);
          if (cls == GraphClass::DAG || cls == GraphClass::Polytree)
            CHECK(m_separated(g, {v[i]}, {v[j]}, z) == d_separated(g, {v[i]}, {v[j]}, z));
          ++checked;
        }
      }
  }
  CHECK(checked > 1000);
}

TEST_CASE("separation superset monotone on trees") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    MixedGraph t = random_tree(7, seed);
    const auto& v = t.labels();
    for (const auto& z : subsets({v[2], v[3], v[4]}, 3)) {
      if (!ug_separated(t, {v[0]}, {v[1]}, z)) continue;
      for (const auto& extra : subsets({v[5], v[6]}, 2)) CHECK(ug_separated(t, {v[0]}, {v[1]}, z | extra));
    }
  }
}

TEST_CASE("separated triples hold numerically") {
  CorpusSpec spec;
  spec.max_vertices = 6;
  spec.per_size = 3;
  spec.seed = 5;
  for (const auto& e : generated_corpus(spec)) {
    GraphClass cls = classify(e.graph);
    ModelDag m = model_dag(e.graph);
    for (std::uint64_t draw = 0; draw < 5; ++draw) {
      CovarianceMatrix s = model_covariance(m, sample_sem_params(m.dag, draw));
      const auto& v = e.graph.labels();
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
          std::vector<std::string> rest;
          for (const auto& l : v)
            if (l != v[i] && l != v[j]) rest.push_back(l);
          for (const auto& z : subsets(rest, 2)) {
            if (!separation_oracle(e.graph, cls, Triple{{v[i]}, {v[j]}, z})) continue;
            CAPTURE(e.name);
            CHECK(numeric_ci(s, {v[i]}, {v[j]}, z));
          }
        }
    }
  }
}

}
