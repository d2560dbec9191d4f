#include "pcineq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pcineq/covariance_io.hpp"

namespace pcineq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

SemParams sample_sem_params(const MixedGraph& dag, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.2, 2.0);
  std::uniform_real_distribution<double> var(0.5, 2.0);
  std::bernoulli_distribution neg(0.5);
  SemParams p;
  for (const auto& e : dag.edges()) {
    if (e.kind != EdgeKind::Directed) throw ClassMismatch("parameters can only be drawn for a DAG");
    double b = mag(rng);
    p.beta[{dag.label(e.u), dag.label(e.v)}] = neg(rng) ? -b : b;
  }
  for (const auto& l : dag.labels()) p.tau2[l] = var(rng);
  return p;
}

ModelDag model_dag(const MixedGraph& g) {
  if (classify(g) == GraphClass::Invalid) throw ClassMismatch("no Gaussian model for an invalid graph");
  ModelDag m;
  m.observed = g.labels();
  for (const auto& l : g.labels()) m.dag.add_vertex(l);

  // Maximum cardinality search over the undirected part.
  const std::size_t n = g.size();
  std::vector<std::size_t> rank(n, n), weight(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (rank[v] == n && (best == n || weight[v] > weight[best])) best = v;
    rank[best] = step;
    for (auto u : g.neighbours(best))
      if (rank[u] == n) ++weight[u];
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> earlier;
    for (auto u : g.neighbours(v))
      if (rank[u] < rank[v]) earlier.push_back(u);
    for (std::size_t i = 0; i < earlier.size(); ++i)
      for (std::size_t j = i + 1; j < earlier.size(); ++j)
        if (!g.adjacent(earlier[i], earlier[j]))
          throw ClassMismatch("undirected part is not chordal; no DAG carries its independences");
  }

  for (const auto& e : g.edges()) {
    const auto& u = g.label(e.u);
    const auto& v = g.label(e.v);
    switch (e.kind) {
      case EdgeKind::Directed:
        m.dag.add_edge(u, v, EdgeKind::Directed);
        break;
      case EdgeKind::Undirected:
        if (rank[e.u] < rank[e.v]) m.dag.add_edge(u, v, EdgeKind::Directed);
        else m.dag.add_edge(v, u, EdgeKind::Directed);
        break;
      case EdgeKind::Bidirected: {
        std::string latent = "(" + u + "<->" + v + ")";
        while (g.has_vertex(latent) || m.dag.has_vertex(latent)) latent += "'";
        m.dag.add_edge(latent, u, EdgeKind::Directed);
        m.dag.add_edge(latent, v, EdgeKind::Directed);
        break;
      }
    }
  }
  return m;
}

CovarianceMatrix model_covariance(const ModelDag& m, const SemParams& p) {
  CovarianceMatrix full = sem_covariance(m.dag, p);
  if (m.observed.size() == m.dag.size()) return full;
  return full.restrict_to(LabelSet(m.observed));
}

Claim zero_claim(const Quantity& q) { return {q, Relation::EQ, Quantity{}}; }

std::vector<Claim> claims_of(const Verdict& v) {
  std::vector<Claim> out;
  for (std::size_t i = 0; i + 1 < v.chain.size(); ++i)
    out.push_back({v.chain[i], v.links[i], v.chain[i + 1]});
  for (const auto& z : v.zeros) out.push_back(zero_claim(z));
  return out;
}

std::string to_string(const Claim& c) {
  std::string rel = c.relation == Relation::LE ? " <= " : c.relation == Relation::GE ? " >= " : " = ";
  return to_string(c.left) + rel + (c.right.a.empty() ? std::string("0") : to_string(c.right));
}

namespace {

double value(const CovarianceMatrix& s, const Quantity& q) {
  if (q.a.empty()) return 0.0;
  return partial_correlation_sq(s, q.a, q.c, q.given);
}

double slack(const CovarianceMatrix& s, const Claim& c) {
  double l = value(s, c.left), r = value(s, c.right);
  switch (c.relation) {
    case Relation::LE: return r - l;
    case Relation::GE: return l - r;
    case Relation::EQ: return -std::abs(l - r);
    default: throw PreconditionError("claims must be LE, GE or EQ");
  }
}

}  // namespace

McReport monte_carlo_check(const MixedGraph& g, const std::vector<Claim>& claims, std::size_t trials,
                           std::uint64_t seed) {
  McReport r;
  if (trials == 0) return r;
  ModelDag m = model_dag(g);
  r.worst_margin = INFINITY;
  for (std::size_t t = 0; t < trials; ++t) {
    SemParams p = sample_sem_params(m.dag, trial_seed(seed, t));
    CovarianceMatrix s = model_covariance(m, p);
    bool violated = false;
    for (const auto& c : claims) {
      double m_ = slack(s, c);
      r.worst_margin = std::min(r.worst_margin, m_);
      if (m_ < -kViolationTol) violated = true;
    }
    ++r.trials;
    if (violated) {
      ++r.violations;
      if (!r.counterexample) r.counterexample = p;
    }
  }
  if (claims.empty()) r.worst_margin = 0.0;
  return r;
}

std::string summarize(const McReport& r) {
  std::ostringstream out;
  out << "trials=" << r.trials << " violations=" << r.violations
      << " worst_margin=" << format_real(r.worst_margin);
  return out.str();
}

Verdict find_incomparable(const MixedGraph& g, const Verdict& v, std::size_t trials, std::uint64_t seed) {
  if (v.certified()) return v;
  ModelDag m = model_dag(g);
  std::optional<SemParams> below, above;
  for (std::size_t t = 0; t < trials && !(below && above); ++t) {
    SemParams p = sample_sem_params(m.dag, trial_seed(seed, t));
    CovarianceMatrix s = model_covariance(m, p);
    double d = value(s, v.left) - value(s, v.right);
    if (d < -kViolationTol && !below) below = p;
    if (d > kViolationTol && !above) above = p;
  }
  if (!(below && above)) return v;
  Verdict out = v;
  out.relation = Relation::Incomparable;
  out.counterexample = std::make_pair(*below, *above);
  out.notes.push_back("sampled parameters order the two quantities both ways");
  return out;
}

std::vector<double> SweepTable::column(std::size_t j) const {
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r.at(j));
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 1) return {lo};
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  auto c1 = spec.find(':');
  auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw PreconditionError("grid must look like LO:HI:N");
  try {
    std::size_t used = 0;
    double lo = std::stod(spec.substr(0, c1), &used);
    double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    long n = std::stol(spec.substr(c2 + 1));
    if (n < 1) throw PreconditionError("grid needs at least one point");
    return linspace(lo, hi, static_cast<std::size_t>(n));
  } catch (const std::logic_error&) {
    throw PreconditionError("grid must look like LO:HI:N");
  }
}

SweepTable sweep(const MixedGraph& dag, const std::string& param, const std::vector<double>& grid,
                 const std::vector<Quantity>& queries, const std::optional<SemParams>& base) {
  SemParams p = base ? *base : SemParams::unit(dag);
  double* slot = nullptr;
  if (auto arrow = param.find("->"); arrow != std::string::npos) {
    auto it = p.beta.find({param.substr(0, arrow), param.substr(arrow + 2)});
    if (it == p.beta.end()) throw PreconditionError("no edge " + param + " in the graph");
    slot = &it->second;
  } else {
    auto it = p.tau2.find(param);
    if (it == p.tau2.end()) throw PreconditionError("no vertex " + param + " in the graph");
    slot = &it->second;
  }

  SweepTable t;
  t.parameter = param;
  t.grid = grid;
  for (const auto& q : queries) t.columns.push_back(to_string(q));
  for (double g : grid) {
    *slot = g;
    CovarianceMatrix s = sem_covariance(dag, p);
    std::vector<double> row;
    for (const auto& q : queries) row.push_back(partial_correlation_sq(s, q.a, q.c, q.given));
    t.rows.push_back(std::move(row));
  }
  return t;
}

bool columns_cross(const SweepTable& t, std::size_t i, std::size_t j, double tol) {
  bool below = false, above = false;
  for (const auto& r : t.rows) {
    double d = r.at(i) - r.at(j);
    if (d < -tol) below = true;
    if (d > tol) above = true;
  }
  return below && above;
}

MixedGraph chain_profile_graph(std::size_t n_left, std::size_t n_right) {
  MixedGraph g;
  for (std::size_t k = n_left; k >= 1; --k) {
    std::string from = "z" + std::to_string(k);
    std::string to = k == 1 ? "x" : "z" + std::to_string(k - 1);
    g.add_edge(from, to, EdgeKind::Directed);
  }
  g.add_edge("a", "x", EdgeKind::Directed);
  g.add_edge("x", "c", EdgeKind::Directed);
  for (std::size_t k = 1; k <= n_right; ++k) {
    std::string from = k == 1 ? "x" : "y" + std::to_string(k - 1);
    g.add_edge(from, "y" + std::to_string(k), EdgeKind::Directed);
  }
  return g;
}

SweepTable chain_profile(std::size_t n_left, std::size_t n_right) {
  MixedGraph g = chain_profile_graph(n_left, n_right);
  CovarianceMatrix s = sem_covariance(g, SemParams::unit(g));
  SweepTable t;
  t.parameter = "conditioned";
  t.columns = {"rho2(a,c|i)"};
  std::vector<std::string> given{""};
  for (std::size_t k = n_left; k >= 1; --k) given.push_back("z" + std::to_string(k));
  given.push_back("x");
  for (std::size_t k = 1; k <= n_right; ++k) given.push_back("y" + std::to_string(k));
  for (std::size_t i = 0; i < given.size(); ++i) {
    LabelSet z;
    if (!given[i].empty()) z.insert(given[i]);
    t.grid.push_back(static_cast<double>(i));
    t.row_labels.push_back(given[i].empty() ? "none" : given[i]);
    t.rows.push_back({partial_correlation_sq(s, "a", "c", z)});
  }
  return t;
}

ProfileShape profile_shape(const SweepTable& profile, std::size_t n_left) {
  auto v = profile.column(0);
  ProfileShape s;
  double marginal = v.at(0);
  std::size_t x = n_left + 1;
  s.left_increasing = s.left_above = true;
  for (std::size_t i = 1; i <= n_left; ++i) {
    if (i > 1 && !(v[i] > v[i - 1])) s.left_increasing = false;
    if (!(v[i] > marginal)) s.left_above = false;
  }
  s.right_increasing = s.right_below = true;
  for (std::size_t i = x; i < v.size(); ++i) {
    if (i > x && !(v[i] > v[i - 1])) s.right_increasing = false;
    if (!(v[i] < marginal)) s.right_below = false;
  }
  s.drop = n_left > 0 && v.at(n_left) - v.at(x) > 0;
  return s;
}

std::string sweep_csv(const SweepTable& t) {
  std::ostringstream out;
  out << (t.row_labels.empty() ? "param_value" : t.parameter);
  for (const auto& c : t.columns) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.row_labels.empty()) out << format_real(t.grid[i]);
    else out << t.row_labels[i];
    for (double v : t.rows[i]) out << ',' << format_real(v);
    out << '\n';
  }
  return out.str();
}

}  // namespace pcineq
