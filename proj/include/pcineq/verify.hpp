#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcineq/gaussian.hpp"
#include "pcineq/graph.hpp"
#include "pcineq/inequality.hpp"

namespace pcineq {

constexpr double kViolationTol = 1e-10;

// Per-trial seed derived from (seed, trial) so trials can run in any order.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// beta uniform on [-2,-0.2] u [0.2,2], tau2 uniform on [0.5,2].
SemParams sample_sem_params(const MixedGraph& dag, std::uint64_t seed);

// A DAG whose marginal over the original vertices carries the independence
// model of g. Bidirected edges get a latent common parent; undirected edges
// are oriented along a maximum cardinality search order. Trees and DAGs map
// to an orientation of themselves.
struct ModelDag {
  MixedGraph dag;
  std::vector<std::string> observed;
};
ModelDag model_dag(const MixedGraph& g);

// Covariance of the observed vertices under the given parameters of `m.dag`.
CovarianceMatrix model_covariance(const ModelDag& m, const SemParams& p);

// One claimed relation between two squared partial correlations. A claim
// with an empty right.a compares `left` with the constant 0.
struct Claim {
  Quantity left;
  Relation relation;  // LE, GE or EQ
  Quantity right;
};

Claim zero_claim(const Quantity& q);
// Every link of the verdict's chain plus every certified zero.
std::vector<Claim> claims_of(const Verdict& v);
std::string to_string(const Claim& c);

struct McReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;  // smallest slack over all claims and draws
  std::optional<SemParams> counterexample;
};

McReport monte_carlo_check(const MixedGraph& g, const std::vector<Claim>& claims, std::size_t trials,
                           std::uint64_t seed);
std::string summarize(const McReport& r);

// Upgrades an uncertified comparison to Incomparable when sampled draws
// order the two quantities both ways. Otherwise returns `v` unchanged.
Verdict find_incomparable(const MixedGraph& g, const Verdict& v, std::size_t trials, std::uint64_t seed);

struct SweepTable {
  std::string parameter;
  std::vector<double> grid;
  std::vector<std::string> row_labels;  // optional, one per grid point
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(std::size_t j) const;
};

// "lo:hi:n" -> n evenly spaced points including both ends.
std::vector<double> parse_grid(const std::string& spec);
std::vector<double> linspace(double lo, double hi, std::size_t n);

// Varies one parameter, "u->v" for a coefficient or "v" for a variance,
// with every other parameter at `base` (all ones when omitted).
SweepTable sweep(const MixedGraph& dag, const std::string& param, const std::vector<double>& grid,
                 const std::vector<Quantity>& queries, const std::optional<SemParams>& base = std::nullopt);

// True when two columns are strictly ordered both ways somewhere on the grid.
bool columns_cross(const SweepTable& t, std::size_t i, std::size_t j, double tol = kViolationTol);

// Chain z_n -> ... -> z_1 -> x -> y_1 -> ... -> y_m with a -> x -> c.
MixedGraph chain_profile_graph(std::size_t n_left, std::size_t n_right);
// rho^2(a,c|i) for i in {none, z_n..z_1, x, y_1..y_m}, all parameters one.
SweepTable chain_profile(std::size_t n_left, std::size_t n_right);

struct ProfileShape {
  bool left_increasing = false;   // z_n .. z_1
  bool left_above = false;        // all above the marginal value
  bool right_increasing = false;  // x .. y_m
  bool right_below = false;       // all below the marginal value
  bool drop = false;              // value at z_1 exceeds value at x
  bool ok() const { return left_increasing && left_above && right_increasing && right_below && drop; }
};
ProfileShape profile_shape(const SweepTable& profile, std::size_t n_left);

std::string sweep_csv(const SweepTable& t);

}  // namespace pcineq
