#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcineq/gaussian.hpp"
#include "pcineq/graph.hpp"
#include "pcineq/labels.hpp"
#include "pcineq/separation.hpp"

namespace pcineq {

// Answers conditional-independence queries. Triples reaching independent()
// are already normalized: both sides nonempty, disjoint from each other and
// from the conditioning set.
class IndependenceOracle {
 public:
  virtual ~IndependenceOracle() = default;
  virtual bool independent(const Triple& t) const = 0;
  virtual bool has(std::string_view label) const = 0;
  virtual std::vector<std::string> vertices() const = 0;
};

// Structural premises, read off the graph with the matching separation
// criterion.
class GraphOracle : public IndependenceOracle {
 public:
  explicit GraphOracle(const MixedGraph& g);
  bool independent(const Triple& t) const override;
  bool has(std::string_view label) const override { return g_.has_vertex(label); }
  std::vector<std::string> vertices() const override { return g_.labels(); }
  const MixedGraph& graph() const { return g_; }
  GraphClass graph_class() const { return cls_; }

 private:
  const MixedGraph& g_;
  GraphClass cls_;
};

// Numeric premises, for independences that come from parameter values.
class CovarianceOracle : public IndependenceOracle {
 public:
  explicit CovarianceOracle(const CovarianceMatrix& s, double tol = kNumericCiTol) : s_(s), tol_(tol) {}
  bool independent(const Triple& t) const override;
  bool has(std::string_view label) const override { return s_.has(label); }
  std::vector<std::string> vertices() const override { return s_.labels(); }

 private:
  const CovarianceMatrix& s_;
  double tol_;
};

enum class Relation { LE, GE, EQ, Incomparable, Unknown };
std::string_view to_string(Relation r);

// rho^2(a, c | given)
struct Quantity {
  std::string a;
  std::string c;
  LabelSet given;
};
std::string to_string(const Quantity& q);
bool same_quantity(const Quantity& x, const Quantity& y);

struct ProofStep {
  std::string rule;
  std::string pivot;     // empty when the rule has no pivot vertex
  LabelSet background;   // the set B of the rule instance
  std::vector<Triple> triples;
  std::string note;
};

// `relation` compares `left` with `right`. `chain` lists quantities in
// ascending order, with links[i] relating chain[i] to chain[i + 1] (LE or EQ).
struct Verdict {
  Relation relation = Relation::Unknown;
  Quantity left;
  Quantity right;
  std::vector<Quantity> chain;
  std::vector<Relation> links;
  std::vector<Quantity> zeros;  // quantities certified to be exactly zero
  std::vector<ProofStep> trace;
  std::vector<std::string> notes;
  std::optional<std::pair<SemParams, SemParams>> counterexample;

  bool certified() const {
    return relation == Relation::LE || relation == Relation::GE || relation == Relation::EQ;
  }
};

// Premise check with normalization: conditioning labels are dropped from
// both sides; an empty side holds trivially; overlapping sides fail. A
// nontrivial triple that holds is appended to `used`.
bool holds(const IndependenceOracle& o, const Triple& t, std::vector<Triple>* used = nullptr);

// rho^2(a, c' | Z) <= rho^2(a, c | Z) when c' _||_ a | c Z.
Verdict compare_correlates(const IndependenceOracle& o, const std::string& a, const std::string& c,
                           const std::string& cprime, const LabelSet& z);

// a _||_ c | xB and a,c _||_ z | xB give rho^2(a,c|Bz) <= rho^2(a,c|B);
// with a,c _||_ z' | zB the chain rho^2(Bz) <= rho^2(Bz') <= rho^2(B).
// x may coincide with a or c.
Verdict compare_separator_decrease(const IndependenceOracle& o, const std::string& a,
                                   const std::string& c, const std::string& x, const std::string& z,
                                   const std::optional<std::string>& zprime, const LabelSet& b = {});

// a _||_ c and a,c _||_ zB | x give rho^2(a,c|B) <= rho^2(a,c|Bz);
// with z' _||_ acB | z the chain rho^2(B) <= rho^2(Bz') <= rho^2(Bz).
Verdict compare_collider_increase(const IndependenceOracle& o, const std::string& a,
                                  const std::string& c, const std::string& x, const LabelSet& b,
                                  const std::string& z, const std::optional<std::string>& zprime);

// a _||_ z plus either c _||_ az with one of six B-separations, or
// az _||_ cB | x. Same conclusion as compare_collider_increase; with B empty
// the first form forces every quantity to zero.
Verdict compare_one_sided_increase(const IndependenceOracle& o, const std::string& a,
                                   const std::string& c, const std::string& x, const LabelSet& b,
                                   const std::string& z, const std::optional<std::string>& zprime);

// Tries the three rules above in turn and returns the first certificate.
Verdict compare_conditionates(const IndependenceOracle& o, const std::string& a, const std::string& c,
                              const std::string& x, const LabelSet& b, const std::string& z,
                              const std::optional<std::string>& zprime);

// Numeric comparison of rho^2(a,c|Bz) with rho^2(a,c|x) under a _||_ z,
// c _||_ az, acz _||_ B | x. GE iff (s_xx - s_xx|B)/s_xx >= s_zz|B/s_zz.
// Throws PreconditionError when the premises fail at `tol`.
Verdict compare_variance_ratio(const CovarianceMatrix& s, const std::string& a, const std::string& c,
                               const std::string& x, const std::string& z, const LabelSet& b,
                               double tol = kNumericCiTol);

struct Query {
  std::string a;
  std::string c;
  LabelSet z1;
  LabelSet z2;
};

// Compares rho^2(a,c|Z1) with rho^2(a,c|Z2) by swapping one conditioning
// vertex at a time and certifying every single-swap factor.
Verdict chain_compare(const MixedGraph& g, const Query& q);
Verdict chain_compare(const IndependenceOracle& o, const Query& q,
                      const std::vector<std::string>& preferred_pivots = {});

// Throws LabelError / PreconditionError for malformed queries.
void validate_query(const IndependenceOracle& o, const Query& q);

}  // namespace pcineq
