#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pcineq/cli.hpp"
#include "pcineq/graph_io.hpp"
#include "pcineq/inequality.hpp"
#include "pcineq/report.hpp"
#include "pcineq/verify.hpp"
#include "support/fixtures.hpp"

using namespace pcineq;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string g(const std::string& name) { return fx::data_path("graphs/" + name + ".graph"); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classify and pcor") {
  CHECK(run({"classify", g("collider_branch_polytree")}).out == "Polytree\n");
  CHECK(run({"classify", "--graph", g("star_tree")}).out == "Tree\n");
  Run p = run({"pcor", "--cov", fx::data_path("chain.csv"), "a", "c", "--given", "x"});
  CHECK(p.code == 0);
  CHECK(p.out == "0.0\n");
  CHECK(run({"pcor", "--cov", fx::data_path("chain.csv"), "--a", "a", "--c", "c"}).out == "0.3333333333333333\n");
}

TEST_CASE("separate") {
  CHECK(run({"separate", g("bidirected_chain_mag"), "a,c", "b", "--given", "x"}).out == "true\n");
  CHECK(run({"separate", "--graph", g("bidirected_chain_mag"), "a,c", "b", "--given", "z,x"}).out == "false\n");
  CHECK(run({"separate", g("bidirected_chain_mag"), "a", "q"}).code == 2);
}

TEST_CASE("compare is a thin adapter") {
  MixedGraph graph = fx::graph("collider_descendants_polytree");
  Verdict v = compare_conditionates(GraphOracle(graph), "a", "c", "x", {"b1", "b2"}, "z", std::string("zp"));
  Run r = run({"compare", "--graph", g("collider_descendants_polytree"), "--a", "a", "--c", "c", "--x", "x", "--B",
               "b1,b2", "--z", "z", "--zprime", "zp"});
  CHECK(r.code == 0);
  CHECK(r.out == serialize_verdict(v));
  CHECK(r.out.rfind("LE-chain\t", 0) == 0);

  Run none = run({"compare", "--graph", g("separator_counterexample_dag"), "--a", "a", "--c", "c", "--x", "x", "--z", "z1"});
  CHECK(none.code == 2);
  CHECK(none.out.rfind("Unknown\t", 0) == 0);

  Run swap = run({"compare", "--graph", g("collider_branch_polytree"), "--a", "a", "--c", "c2", "--cprime", "c3",
                  "--Z", "z1,z2,z3,z4"});
  CHECK(swap.out.rfind("LE\t", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"mc", "--graph", g("star_tree"), "--a", "a", "--c", "c"}).code == 1);
  CHECK(run({"sweep", "--graph", g("collider_child_polytree"), "--param", "c->z", "--query", "a,c|z"}).code == 1);
  CHECK(run({"classify", "/nonexistent.graph"}).code == 2);
  CHECK(run({"chain", "--graph", g("star_tree"), "--a", "a", "--c", "nope"}).code == 2);
  Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("compare") != std::string::npos);
}

TEST_CASE("mc sweep profile witness") {
  Run mc = run({"mc", "--graph", g("six_term_polytree"), "--a", "a", "--c", "c", "--Z1", "v", "--Z2", "x", "--trials",
                "200", "--seed", "9"});
  CHECK(mc.code == 0);
  CHECK(mc.out.rfind("trials=200 violations=0", 0) == 0);

  Run sw = run({"sweep", "--graph", g("collider_child_polytree"), "--param", "c->z", "--grid", "-1:1:3", "--query",
                "a,c|z", "--query", "a,x|z", "--seed", "1"});
  CHECK(sw.code == 0);
  MixedGraph graph = fx::graph("collider_child_polytree");
  CHECK(sw.out == sweep_csv(sweep(graph, "c->z", {-1, 0, 1}, {{"a", "c", {"z"}}, {"a", "x", {"z"}}})));

  CHECK(run({"profile"}).out == sweep_csv(chain_profile(4, 4)));

  Run w = run({"witness", "--graph", g("star_tree"), "--a", "a", "--c", "zp", "--Z1", "x", "--Z2", "z"});
  CHECK(w.code == 2);

  Run modsel = run({"modsel", "--graph", g("upstream_branch_polytree"), "--a", "a", "--c", "c", "--b", "b", "--z", "z11"});
  CHECK(modsel.out == "Increases\tCond1\n");
}

TEST_CASE("output file") {
  std::string path = "pcineq_cli_test_out.txt";
  Run r = run({"classify", g("star_tree"), "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "Tree");
  std::remove(path.c_str());
}

}
