#pragma once

#include <string>
#include <vector>

#include "pcineq/gaussian.hpp"
#include "pcineq/graph.hpp"
#include "pcineq/inequality.hpp"

namespace pcineq {

// rho^2(a,c'|Z) <= rho^2(a,c|Z) for every Z when c lies on the a-c' path.
Verdict tree_compare_fixed_conditionate(const MixedGraph& tree, const std::string& a,
                                        const std::string& c, const std::string& cprime,
                                        const LabelSet& z);

// rho^2(a,c|Z1) <= rho^2(a,c|Z2) when every path from a or c to Z2 meets
// Z1, or when Z1 meets the a-c path. Checked in both directions.
Verdict tree_compare_conditionates(const MixedGraph& tree, const std::string& a, const std::string& c,
                                   const LabelSet& z1, const LabelSet& z2);

// rho^2(a,c'|Z') <= rho^2(a,c|Z) when c lies on the a-c' path and Z' separates
// {a,c'} from Z.
Verdict tree_general_compare(const MixedGraph& tree, const std::string& a, const std::string& c,
                             const std::string& cprime, const LabelSet& z, const LabelSet& zprime);

// Two tree-Markov covariances that order rho^2(a,c|Z1) and rho^2(a,c|Z2)
// in opposite directions.
struct Witness {
  std::string z1;  // the Z1 vertex whose attachment is switched off in sigma_high
  std::string z2;
  std::vector<std::string> order;  // a-c path, then the z1 branch, the z2 branch, the rest
  double b1 = 1.0;
  double b2 = 1.0;
  // rho^2(a,c|Z1) > rho^2(a,c|Z2): z1 detached (b1 = 0).
  CovarianceMatrix sigma1;
  // rho^2(a,c|Z2) > rho^2(a,c|Z1): z2 detached (b2 = 0).
  CovarianceMatrix sigma2;
};

// Throws PreconditionError when either separation holds or Z1 u Z2 meets the
// a-c path.
Witness completeness_witness(const MixedGraph& tree, const std::string& a, const std::string& c,
                             const LabelSet& z1, const LabelSet& z2, double b = 1.0);

// Orients a tree (or forest) away from `root`, and every other component away
// from its first vertex.
MixedGraph orient_from(const MixedGraph& tree, const std::string& root);

}  // namespace pcineq
