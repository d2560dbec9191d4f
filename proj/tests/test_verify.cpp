#include <doctest.h>

#include <cmath>

#include "pcineq/graph_io.hpp"
#include "pcineq/inequality.hpp"
#include "pcineq/verify.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

using namespace pcineq;

TEST_SUITE("verify") {

TEST_CASE("parameter sampling") {
  MixedGraph g = fx::graph("collider_shortcut_dag");
  SemParams p = sample_sem_params(g, 5);
  SemParams q = sample_sem_params(g, 5);
  CHECK(p.beta == q.beta);
  CHECK(p.tau2 == q.tau2);
  CHECK(p.beta.size() == g.edges().size());
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    SemParams r = sample_sem_params(g, trial_seed(1, seed));
    for (const auto& [k, b] : r.beta) {
      CHECK(std::abs(b) >= 0.2);
      CHECK(std::abs(b) <= 2.0);
    }
    for (const auto& [k, t] : r.tau2) CHECK((t >= 0.5 && t <= 2.0));
    CHECK_NOTHROW(sem_covariance(g, r));
  }
  CHECK(trial_seed(1, 2) != trial_seed(2, 1));
}

TEST_CASE("model dags") {
  MixedGraph mag = fx::graph("bidirected_chain_mag");
  ModelDag m = model_dag(mag);
  CHECK(m.observed == mag.labels());
  CHECK(m.dag.size() == mag.size() + 2);
  CHECK(classify(m.dag) == GraphClass::DAG);
  CovarianceMatrix s = model_covariance(m, sample_sem_params(m.dag, 3));
  CHECK(s.labels() == mag.labels());

  MixedGraph tree = fx::graph("star_tree");
  CHECK(classify(model_dag(tree).dag) == GraphClass::Polytree);
  MixedGraph square = parse_graph("ug\na -- b\nb -- c\nc -- d\nd -- a\n");
  CHECK_THROWS_AS(model_dag(square), ClassMismatch);
  MixedGraph chordal = parse_graph("ug\na -- b\nb -- c\nc -- a\nc -- d\n");
  CHECK(classify(model_dag(chordal).dag) == GraphClass::DAG);
}

TEST_CASE("monte carlo reports") {
  MixedGraph g = fx::graph("collider_descendants_polytree");
  CHECK(monte_carlo_check(g, {}, 0, 1).trials == 0);

  Verdict v = chain_compare(g, Query{"a", "c", {"b1", "b2"}, {"b1", "b2", "z"}});
  REQUIRE(v.relation == Relation::LE);
  auto claims = claims_of(v);
  McReport ok = monte_carlo_check(g, claims, 1000, 77);
  CHECK(ok.trials == 1000);
  CHECK(ok.violations == 0);
  CHECK_FALSE(ok.counterexample.has_value());

  std::vector<Claim> reversed;
  for (const auto& c : claims) reversed.push_back({c.right, Relation::LE, c.left});
  McReport bad = monte_carlo_check(g, reversed, 1000, 77);
  CHECK(bad.violations > 0);
  CHECK(bad.counterexample.has_value());
  CHECK(bad.worst_margin < 0);

  McReport again = monte_carlo_check(g, reversed, 1000, 77);
  CHECK(again.violations == bad.violations);
  CHECK(again.worst_margin == bad.worst_margin);
  CHECK(summarize(ok).rfind("trials=1000 violations=0 worst_margin=", 0) == 0);
}

TEST_CASE("incomparable upgrade") {
  MixedGraph g = fx::graph("collider_branch_polytree");
  GraphOracle o(g);
  Verdict v = compare_correlates(o, "a", "c1", "c3", {"z1", "z2", "z3", "z4"});
  REQUIRE(v.relation == Relation::Unknown);
  Verdict up = find_incomparable(g, v, 2000, 4);
  REQUIRE(up.relation == Relation::Incomparable);
  REQUIRE(up.counterexample.has_value());
  ModelDag m = model_dag(g);
  double lo = partial_correlation_sq(model_covariance(m, up.counterexample->first), "a", "c3", {"z1", "z2", "z3", "z4"}) -
              partial_correlation_sq(model_covariance(m, up.counterexample->first), "a", "c1", {"z1", "z2", "z3", "z4"});
  double hi = partial_correlation_sq(model_covariance(m, up.counterexample->second), "a", "c3", {"z1", "z2", "z3", "z4"}) -
              partial_correlation_sq(model_covariance(m, up.counterexample->second), "a", "c1", {"z1", "z2", "z3", "z4"});
  CHECK(lo < 0);
  CHECK(hi > 0);
}

TEST_CASE("grids and sweeps") {
  auto grid = parse_grid("-2:2:41");
  REQUIRE(grid.size() == 41);
  CHECK(grid[20] == 0.0);
  CHECK(grid.front() == -2.0);
  CHECK(grid.back() == 2.0);
  CHECK_THROWS_AS(parse_grid("1:2"), PreconditionError);
  CHECK_THROWS_AS(parse_grid("a:b:c"), PreconditionError);

  MixedGraph g = fx::graph("collider_child_polytree");
  std::vector<Quantity> qs{{"a", "c", {"z"}}, {"a", "x", {"z"}}};
  SweepTable t = sweep(g, "c->z", grid, qs);
  CHECK(t.rows.size() == 41);
  CHECK(columns_cross(t, 0, 1));
  CHECK_THROWS_AS(sweep(g, "z->c", grid, qs), PreconditionError);
  CHECK_THROWS_AS(sweep(g, "nope", grid, qs), PreconditionError);

  SweepTable flat = sweep(g, "c->z", grid, {{"a", "x", {}}});
  for (double v : flat.column(0)) CHECK(v == 0.0);

  SweepTable var = sweep(g, "z", parse_grid("0.1:4:41"), qs);
  CHECK(var.rows.size() == 41);

  std::string csv = sweep_csv(sweep(g, "c->z", {0.0, 1.0}, qs));
  CHECK(csv.rfind("param_value,rho2(a,c|z),rho2(a,x|z)\n0.0,", 0) == 0);
}

TEST_CASE("restored premises at the zero grid point") {
  MixedGraph g = fx::graph("separator_counterexample_dag");
  SemParams base = SemParams::unit(g);
  base.beta[{"c", "z1"}] = 0;
  base.beta[{"a", "z2"}] = 0;
  SweepTable t = sweep(g, "c->a", parse_grid("-2:2:41"),
                       {{"a", "c", {"z1"}}, {"a", "c", {"z2"}}, {"a", "c", {}}}, base);
  const auto& at0 = t.rows[20];
  CHECK(at0[0] == doctest::Approx(1.0 / 9));
  CHECK(at0[1] == doctest::Approx(0.16));
  CHECK(at0[2] == doctest::Approx(0.25));
}

TEST_CASE("chain profile") {
  SweepTable p = chain_profile(4, 4);
  REQUIRE(p.rows.size() == 10);
  CHECK(p.row_labels.front() == "none");
  CHECK(p.row_labels[5] == "x");
  // Closed form with every parameter one.
  const double expected[] = {1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4, 1.0 / 3, 0.0,
                             1.0 / 78, 1.0 / 35, 1.0 / 24, 8.0 / 153};
  for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(p.rows[i][0] - expected[i]) < 1e-14);
  ProfileShape s = profile_shape(p, 4);
  CHECK(s.ok());
  CHECK(sweep_csv(p).rfind("conditioned,rho2(a,c|i)\nnone,", 0) == 0);
}

}
