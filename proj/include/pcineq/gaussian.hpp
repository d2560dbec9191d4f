#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pcineq/graph.hpp"
#include "pcineq/labels.hpp"

namespace pcineq {

// Symmetric positive definite matrix indexed by vertex labels. Construction
// rejects asymmetric or non-PD input with NumericError.
class CovarianceMatrix {
 public:
  CovarianceMatrix(std::vector<std::string> labels, Eigen::MatrixXd entries);

  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::MatrixXd& matrix() const { return m_; }
  std::size_t size() const { return labels_.size(); }
  bool has(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;
  std::vector<std::size_t> indices_of(const LabelSet& labels) const;

  double operator()(std::string_view a, std::string_view b) const;
  // Principal submatrix in the order of `keep`.
  CovarianceMatrix restrict_to(const LabelSet& keep) const;

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd m_;
};

// Conditional covariance of W given Z (a Schur complement), labeled by W.
CovarianceMatrix schur_conditional(const CovarianceMatrix& s, const LabelSet& w, const LabelSet& z);

double partial_correlation_sq(const CovarianceMatrix& s, std::string_view a, std::string_view c,
                              const LabelSet& z);
// Signed partial correlation, used by the L(alpha) apparatus.
double partial_correlation(const CovarianceMatrix& s, std::string_view a, std::string_view c,
                           const LabelSet& z);
// Conditional mutual information in nats, -1/2 log(1 - rho^2).
double mutual_information(const CovarianceMatrix& s, std::string_view a, std::string_view c,
                          const LabelSet& z);
// Conditional variance of v given Z.
double conditional_variance(const CovarianceMatrix& s, std::string_view v, const LabelSet& z);

// Linear SEM on a DAG: v = sum beta[(u, v)] u + e_v, Var(e_v) = tau2[v].
struct SemParams {
  std::map<std::pair<std::string, std::string>, double> beta;
  std::map<std::string, double> tau2;

  // Every coefficient and variance equal to one.
  static SemParams unit(const MixedGraph& g);
};

// (I - B)^{-1} diag(tau2) (I - B)^{-T}, labeled in the graph's vertex order.
CovarianceMatrix sem_covariance(const MixedGraph& g, const SemParams& p);

// J S J with J = diag(1 / sqrt(s_vv)).
CovarianceMatrix normalize_to_correlation(const CovarianceMatrix& s);

// |s_UV - s_UW s_WV / s_WW| <= tol
bool ci_factorization_check(const CovarianceMatrix& s, std::string_view u, std::string_view v,
                            std::string_view w, double tol);

constexpr double kNumericCiTol = 1e-9;

// Every entry of the X x Y block of the conditional covariance given Z is
// at most tol times the geometric mean of the two conditional variances.
bool numeric_ci(const CovarianceMatrix& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                double tol = kNumericCiTol);

// Inputs to L(alpha). The M terms are kept in correlation form, which is a
// positive multiple of the covariance form.
struct LAlphaContext {
  double alpha = 1.0;
  double K = 1.0;
  double Kprime = 0.0;
  double rho_acB = 0.0;
  double rho_adB = 0.0;
  double rho_cdB = 0.0;

  bool admissible() const;
  double M1() const;
  double M2() const;
  double M3() const;  // at this->alpha
};

// Builds a context from partial correlations of (a, c, d) given B in S.
LAlphaContext l_alpha_context(const CovarianceMatrix& s, std::string_view a, std::string_view c,
                              std::string_view d, const LabelSet& b, double alpha, double K,
                              double Kprime);

// Throws PreconditionError when a denominator factor is not positive.
double l_alpha(const LAlphaContext& ctx);

}  // namespace pcineq
