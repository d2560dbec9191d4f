#include <doctest.h>

#include <cmath>
#include <random>

#include "pcineq/corpus.hpp"
#include "pcineq/covariance_io.hpp"
#include "pcineq/gaussian.hpp"
#include "pcineq/graph_io.hpp"
#include "support/brute_force.hpp"

using namespace pcineq;
using doctest::Approx;

namespace {

CovarianceMatrix chain_sigma() {
  Eigen::MatrixXd m(3, 3);
  m << 1, 1, 1, 1, 2, 2, 1, 2, 3;
  return CovarianceMatrix({"a", "x", "c"}, m);
}

CovarianceMatrix random_pd(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = nd(rng);
  Eigen::MatrixXd s = a * a.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return CovarianceMatrix(labels, s);
}

}  // namespace

TEST_SUITE("gaussian") {

TEST_CASE("construction checks") {
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(CovarianceMatrix({"a", "b"}, asym), NumericError);
  Eigen::MatrixXd singular(2, 2);
  singular << 1, 1, 1, 1;
  CHECK_THROWS_AS(CovarianceMatrix({"a", "b"}, singular), NumericError);
  CHECK_THROWS_AS(chain_sigma()("a", "q"), LabelError);
}

TEST_CASE("schur complement") {
  CovarianceMatrix s = chain_sigma();
  CovarianceMatrix same = schur_conditional(s, {"a", "c"}, {});
  CHECK(same("a", "c") == 1.0);
  CovarianceMatrix given_x = schur_conditional(s, {"a", "c"}, {"x"});
  CHECK(given_x("a", "a") == Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(given_x("a", "c")) < 1e-14);
  CHECK(given_x("c", "c") == Approx(1.0).epsilon(1e-14));
  CovarianceMatrix id({"p", "q", "r"}, Eigen::MatrixXd::Identity(3, 3));
  CHECK(schur_conditional(id, {"p", "q"}, {"r"}).matrix().isApprox(Eigen::MatrixXd::Identity(2, 2)));
}

TEST_CASE("squared partial correlation and mutual information") {
  CovarianceMatrix s = chain_sigma();
  CHECK(partial_correlation_sq(s, "a", "c", {}) == Approx(1.0 / 3).epsilon(1e-14));
  CHECK(partial_correlation_sq(s, "a", "c", {"x"}) < 1e-28);
  CHECK(mutual_information(s, "a", "c", {}) == Approx(-0.5 * std::log(2.0 / 3)).epsilon(1e-14));
  CHECK(mutual_information(s, "a", "c", {"x"}) == Approx(0.0));
  CHECK_THROWS_AS(partial_correlation_sq(s, "a", "a", {}), PreconditionError);
  CHECK_THROWS_AS(partial_correlation_sq(s, "a", "c", {"a"}), PreconditionError);

  // rho^2 = 1 - e^-2 gives one nat.
  double r = std::sqrt(1 - std::exp(-2.0));
  Eigen::MatrixXd m(2, 2);
  m << 1, r, r, 1;
  CHECK(mutual_information(CovarianceMatrix({"a", "c"}, m), "a", "c", {}) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sem covariance closed forms") {
  MixedGraph empty = parse_graph("dag\nnode a\nnode b\n");
  CHECK(sem_covariance(empty, SemParams::unit(empty)).matrix().isApprox(Eigen::MatrixXd::Identity(2, 2)));

  MixedGraph edge = parse_graph("dag\na -> c\n");
  SemParams p = SemParams::unit(edge);
  p.beta[{"a", "c"}] = -1.7;
  CovarianceMatrix s = sem_covariance(edge, p);
  CHECK(s("a", "c") == Approx(-1.7));
  CHECK(s("c", "c") == Approx(1 + 1.7 * 1.7));

  MixedGraph chain = parse_graph("dag\nx -> c\na -> x\n");
  CovarianceMatrix cs = sem_covariance(chain, SemParams::unit(chain));
  CHECK(cs.labels() == std::vector<std::string>{"x", "c", "a"});
  CHECK(cs("a", "a") == 1);
  CHECK(cs("a", "x") == 1);
  CHECK(cs("a", "c") == 1);
  CHECK(cs("x", "x") == 2);
  CHECK(cs("x", "c") == 2);
  CHECK(cs("c", "c") == 3);

  SemParams missing = SemParams::unit(chain);
  missing.beta.erase({"a", "x"});
  CHECK_THROWS_AS(sem_covariance(chain, missing), PreconditionError);
  CHECK_THROWS_AS(sem_covariance(parse_graph("ug\na -- b\n"), SemParams{}), ClassMismatch);
}

TEST_CASE("sem covariance matches the covariance recursion") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    MixedGraph g = random_dag(6, 0.5, seed);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2, 2);
    SemParams p = SemParams::unit(g);
    for (auto& [k, b] : p.beta) b = u(rng);
    for (auto& [k, t] : p.tau2) t = 0.5 + std::abs(u(rng));
    CovarianceMatrix s = sem_covariance(g, p);
    auto ref = bf::sem_cov(g, p);
    for (const auto& x : g.labels())
      for (const auto& y : g.labels()) CHECK(s(x, y) == Approx(ref[{x, y}]).epsilon(1e-12));
  }
}

TEST_CASE("normalize to correlation") {
  CovarianceMatrix n = normalize_to_correlation(chain_sigma());
  CHECK(n("a", "x") == Approx(1 / std::sqrt(2.0)));
  CHECK(n("a", "c") == Approx(1 / std::sqrt(3.0)));
  CHECK(n("x", "c") == Approx(2 / std::sqrt(6.0)));
  CHECK(normalize_to_correlation(n).matrix().isApprox(n.matrix(), 1e-15));
  Eigen::MatrixXd d = Eigen::Vector2d(4, 9).asDiagonal();
  CHECK(normalize_to_correlation(CovarianceMatrix({"a", "b"}, d)).matrix().isApprox(Eigen::Matrix2d::Identity()));
}

TEST_CASE("factorization and numeric independence") {
  CovarianceMatrix s = chain_sigma();
  CHECK(ci_factorization_check(s, "a", "c", "x", 1e-12));
  CovarianceMatrix id({"p", "q", "r"}, Eigen::MatrixXd::Identity(3, 3));
  CHECK(ci_factorization_check(id, "p", "q", "r", 1e-12));
  MixedGraph col = parse_graph("dag\na -> x\nc -> x\n");
  CovarianceMatrix cs = sem_covariance(col, SemParams::unit(col));
  CHECK_FALSE(ci_factorization_check(cs, "a", "c", "x", 1e-12));

  CHECK(numeric_ci(id, {"p"}, {"q"}, {"r"}));
  CHECK(numeric_ci(s, {"a"}, {"c"}, {"x"}));
  CHECK_FALSE(numeric_ci(s, {"a"}, {"c"}, {}));
}

TEST_CASE("random matrix identities") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 3 + trial % 6;
    CovarianceMatrix s = random_pd(n, rng);
    LabelSet z;
    for (std::size_t i = 2; i < n; ++i)
      if (rng() % 2) z.insert(s.labels()[i]);
    const auto& a = s.labels()[0];
    const auto& c = s.labels()[1];
    double r = partial_correlation_sq(s, a, c, z);
    CHECK(r == Approx(bf::rho2(s, a, c, z.items())).epsilon(1e-9));
    CHECK(std::abs(r - (1 - std::exp(-2 * mutual_information(s, a, c, z)))) < 1e-12);
    CHECK(std::abs(r - partial_correlation_sq(normalize_to_correlation(s), a, c, z)) < 1e-12);
    // Conditioning on B first and then on the rest.
    LabelSet rest = LabelSet(s.labels()) - z;
    CovarianceMatrix given_b = schur_conditional(s, rest, z);
    CHECK(std::abs(r - partial_correlation_sq(given_b, a, c, {})) < 1e-12);
  }
}

TEST_CASE("L(alpha)") {
  LAlphaContext zero;
  zero.alpha = 3;
  CHECK(l_alpha(zero) == 0.0);

  LAlphaContext flat;
  flat.rho_acB = 0.4;
  for (double alpha : {0.5, 1.0, 7.0}) {
    flat.alpha = alpha;
    CHECK(l_alpha(flat) == Approx(0.16));
  }

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    CovarianceMatrix s = random_pd(3, rng);
    LAlphaContext ctx = l_alpha_context(s, "v0", "v1", "v2", {}, 1.0, 1.0, 0.0);
    CHECK(std::abs(l_alpha(ctx) - partial_correlation_sq(s, "v0", "v1", {"v2"})) < 1e-10);
  }

  LAlphaContext bad;
  bad.rho_adB = 0.9;
  bad.alpha = 0.5;
  CHECK_FALSE(bad.admissible());
  CHECK_THROWS_AS(l_alpha(bad), PreconditionError);
}

TEST_CASE("covariance csv round trip") {
  std::mt19937_64 rng(9);
  CovarianceMatrix s = random_pd(4, rng);
  CovarianceMatrix back = parse_covariance(serialize_covariance(s));
  CHECK(back.labels() == s.labels());
  CHECK(back.matrix() == s.matrix());
  CHECK(format_real(0.0) == "0.0");
  CHECK(format_real(1.0 / 3) == "0.3333333333333333");
  CHECK_THROWS_AS(parse_covariance("a,b\n1,0\n"), ParseError);
  CHECK_THROWS_AS(parse_covariance("a,b\n1,x\n0,1\n"), ParseError);
}

}
