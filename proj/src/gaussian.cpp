#include "pcineq/gaussian.hpp"

#include <algorithm>
#include <cmath>

namespace pcineq {

CovarianceMatrix::CovarianceMatrix(std::vector<std::string> labels, Eigen::MatrixXd entries)
    : labels_(std::move(labels)), m_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (m_.rows() != n || m_.cols() != n) throw NumericError("covariance shape does not match labels");
  LabelSet uniq(labels_);
  if (uniq.size() != labels_.size()) throw LabelError("duplicate covariance label");
  if (n == 0) return;

  double scale = m_.cwiseAbs().maxCoeff();
  if (!((m_ - m_.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale))
    throw NumericError("covariance matrix is not symmetric");
  m_ = 0.5 * (m_ + m_.transpose());

  double max_diag = m_.diagonal().maxCoeff();
  Eigen::LLT<Eigen::MatrixXd> llt(m_);
  if (llt.info() != Eigen::Success || !(max_diag > 0))
    throw NumericError("covariance matrix is not positive definite");
  Eigen::VectorXd pivots = llt.matrixL().toDenseMatrix().diagonal().array().square();
  if (!(pivots.minCoeff() > 1e-12 * max_diag))
    throw NumericError("covariance matrix is not positive definite");
}

bool CovarianceMatrix::has(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t CovarianceMatrix::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw LabelError("unknown covariance label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::size_t> CovarianceMatrix::indices_of(const LabelSet& labels) const {
  std::vector<std::size_t> out;
  for (const auto& l : labels) out.push_back(index_of(l));
  return out;
}

double CovarianceMatrix::operator()(std::string_view a, std::string_view b) const {
  return m_(static_cast<Eigen::Index>(index_of(a)), static_cast<Eigen::Index>(index_of(b)));
}

namespace {

Eigen::MatrixXd block(const Eigen::MatrixXd& m, const std::vector<std::size_t>& r,
                      const std::vector<std::size_t>& c) {
  Eigen::MatrixXd out(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(static_cast<Eigen::Index>(r[i]), static_cast<Eigen::Index>(c[j]));
  return out;
}

// Raw Schur complement without PD re-validation.
Eigen::MatrixXd conditional_block(const CovarianceMatrix& s, const LabelSet& w, const LabelSet& z) {
  if (w.intersects(z)) throw PreconditionError("conditioned and conditioning sets overlap");
  auto wi = s.indices_of(w);
  auto zi = s.indices_of(z);
  Eigen::MatrixXd sww = block(s.matrix(), wi, wi);
  if (zi.empty()) return sww;
  Eigen::MatrixXd swz = block(s.matrix(), wi, zi);
  Eigen::MatrixXd szz = block(s.matrix(), zi, zi);
  Eigen::MatrixXd out = sww - swz * szz.partialPivLu().solve(swz.transpose());
  return 0.5 * (out + out.transpose());
}

Eigen::Matrix2d pair_block(const CovarianceMatrix& s, std::string_view a, std::string_view c,
                           const LabelSet& z) {
  if (a == c) throw PreconditionError("partial correlation needs two distinct labels");
  if (z.contains(a) || z.contains(c))
    throw PreconditionError("correlates must not be in the conditioning set");
  return conditional_block(s, LabelSet{std::string(a), std::string(c)}, z);
}

}  // namespace

CovarianceMatrix CovarianceMatrix::restrict_to(const LabelSet& keep) const {
  auto idx = indices_of(keep);
  return CovarianceMatrix(keep.items(), block(m_, idx, idx));
}

CovarianceMatrix schur_conditional(const CovarianceMatrix& s, const LabelSet& w, const LabelSet& z) {
  return CovarianceMatrix(w.items(), conditional_block(s, w, z));
}

double partial_correlation_sq(const CovarianceMatrix& s, std::string_view a, std::string_view c,
                              const LabelSet& z) {
  Eigen::Matrix2d m = pair_block(s, a, c, z);
  return m(0, 1) * m(0, 1) / (m(0, 0) * m(1, 1));
}

double partial_correlation(const CovarianceMatrix& s, std::string_view a, std::string_view c,
                           const LabelSet& z) {
  Eigen::Matrix2d m = pair_block(s, a, c, z);
  return m(0, 1) / std::sqrt(m(0, 0) * m(1, 1));
}

double mutual_information(const CovarianceMatrix& s, std::string_view a, std::string_view c,
                          const LabelSet& z) {
  return -0.5 * std::log1p(-partial_correlation_sq(s, a, c, z));
}

double conditional_variance(const CovarianceMatrix& s, std::string_view v, const LabelSet& z) {
  return conditional_block(s, LabelSet{std::string(v)}, z)(0, 0);
}

SemParams SemParams::unit(const MixedGraph& g) {
  SemParams p;
  for (const auto& l : g.labels()) p.tau2[l] = 1.0;
  for (const auto& e : g.edges())
    if (e.kind == EdgeKind::Directed) p.beta[{g.label(e.u), g.label(e.v)}] = 1.0;
  return p;
}

CovarianceMatrix sem_covariance(const MixedGraph& g, const SemParams& p) {
  if (g.has_kind(EdgeKind::Undirected) || g.has_kind(EdgeKind::Bidirected) || !is_directed_acyclic(g))
    throw ClassMismatch("SEM covariance needs a DAG");
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd d(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    auto it = p.tau2.find(g.label(static_cast<std::size_t>(v)));
    if (it == p.tau2.end()) throw PreconditionError("missing variance for " + g.label(static_cast<std::size_t>(v)));
    if (!(it->second > 0)) throw PreconditionError("variance must be positive for " + it->first);
    d(v) = it->second;
  }
  std::size_t used = 0;
  for (const auto& e : g.edges()) {
    auto it = p.beta.find({g.label(e.u), g.label(e.v)});
    if (it == p.beta.end())
      throw PreconditionError("missing coefficient for " + g.label(e.u) + " -> " + g.label(e.v));
    b(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = it->second;
    ++used;
  }
  if (used != p.beta.size()) throw PreconditionError("coefficient given for an edge not in the graph");

  Eigen::MatrixXd a = (Eigen::MatrixXd::Identity(n, n) - b).partialPivLu().inverse();
  Eigen::MatrixXd sigma = a * d.asDiagonal() * a.transpose();
  return CovarianceMatrix(g.labels(), 0.5 * (sigma + sigma.transpose()));
}

CovarianceMatrix normalize_to_correlation(const CovarianceMatrix& s) {
  Eigen::VectorXd j = s.matrix().diagonal().array().rsqrt();
  Eigen::MatrixXd r = j.asDiagonal() * s.matrix() * j.asDiagonal();
  r.diagonal().setOnes();
  return CovarianceMatrix(s.labels(), r);
}

bool ci_factorization_check(const CovarianceMatrix& s, std::string_view u, std::string_view v,
                            std::string_view w, double tol) {
  return std::abs(s(u, v) - s(u, w) * s(w, v) / s(w, w)) <= tol;
}

bool numeric_ci(const CovarianceMatrix& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                double tol) {
  if (x.intersects(y) || x.intersects(z) || y.intersects(z))
    throw PreconditionError("independence query sets must be pairwise disjoint");
  Eigen::MatrixXd c = conditional_block(s, x | y, z);
  const auto nx = static_cast<Eigen::Index>(x.size());
  for (Eigen::Index i = 0; i < nx; ++i)
    for (Eigen::Index j = nx; j < c.rows(); ++j)
      if (std::abs(c(i, j)) > tol * std::sqrt(c(i, i) * c(j, j))) return false;
  return true;
}

bool LAlphaContext::admissible() const {
  double t = alpha - Kprime;
  return K > 0 && t - K * rho_adB * rho_adB > 0 && t - K * rho_cdB * rho_cdB > 0;
}

double LAlphaContext::M1() const { return rho_cdB * (rho_adB - rho_acB * rho_cdB); }

double LAlphaContext::M2() const { return rho_adB * (rho_cdB - rho_acB * rho_adB); }

double LAlphaContext::M3() const { return (alpha - Kprime) * rho_acB - K * rho_adB * rho_cdB; }

LAlphaContext l_alpha_context(const CovarianceMatrix& s, std::string_view a, std::string_view c,
                              std::string_view d, const LabelSet& b, double alpha, double K,
                              double Kprime) {
  LAlphaContext ctx;
  ctx.alpha = alpha;
  ctx.K = K;
  ctx.Kprime = Kprime;
  ctx.rho_acB = partial_correlation(s, a, c, b);
  ctx.rho_adB = partial_correlation(s, a, d, b);
  ctx.rho_cdB = partial_correlation(s, c, d, b);
  return ctx;
}

double l_alpha(const LAlphaContext& ctx) {
  if (!ctx.admissible()) throw PreconditionError("L(alpha) context violates its positivity conditions");
  double t = ctx.alpha - ctx.Kprime;
  double num = t * ctx.rho_acB - ctx.K * ctx.rho_adB * ctx.rho_cdB;
  double den = (t - ctx.K * ctx.rho_adB * ctx.rho_adB) * (t - ctx.K * ctx.rho_cdB * ctx.rho_cdB);
  return num * num / den;
}

}  // namespace pcineq
