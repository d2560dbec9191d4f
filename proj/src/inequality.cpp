#include "pcineq/inequality.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pcineq/covariance_io.hpp"

namespace pcineq {

GraphOracle::GraphOracle(const MixedGraph& g) : g_(g), cls_(classify(g)) {
  if (cls_ == GraphClass::Invalid) throw ClassMismatch("graph is neither a UG, a DAG nor a MAG");
}

bool GraphOracle::independent(const Triple& t) const { return separation_oracle(g_, cls_, t); }

bool CovarianceOracle::independent(const Triple& t) const {
  return numeric_ci(s_, t.t1, t.t2, t.t3, tol_);
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::LE: return "LE";
    case Relation::GE: return "GE";
    case Relation::EQ: return "EQ";
    case Relation::Incomparable: return "Incomparable";
    case Relation::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(const Quantity& q) {
  std::string out = "rho2(" + q.a + "," + q.c;
  if (!q.given.empty()) out += "|" + q.given.joined();
  return out + ")";
}

bool same_quantity(const Quantity& x, const Quantity& y) {
  bool pair = (x.a == y.a && x.c == y.c) || (x.a == y.c && x.c == y.a);
  return pair && x.given.same_as(y.given);
}

bool holds(const IndependenceOracle& o, const Triple& t, std::vector<Triple>* used) {
  Triple n{t.t1 - t.t3, t.t2 - t.t3, t.t3};
  if (n.t1.empty() || n.t2.empty()) return true;
  if (n.t1.intersects(n.t2)) return false;
  if (!o.independent(n)) return false;
  if (used) used->push_back(n);
  return true;
}

namespace {

using Opt = std::optional<std::string>;

LabelSet single(const std::string& v) { return LabelSet{v}; }

LabelSet with(const LabelSet& s, const std::string& v) {
  LabelSet out = s;
  out.insert(v);
  return out;
}

Quantity qty(const std::string& a, const std::string& c, const LabelSet& given) { return {a, c, given}; }

void require_labels(const IndependenceOracle& o, std::initializer_list<const std::string*> labels,
                    const LabelSet& extra = {}) {
  for (const auto* l : labels)
    if (!o.has(*l)) throw LabelError("unknown vertex '" + *l + "'");
  for (const auto& l : extra)
    if (!o.has(l)) throw LabelError("unknown vertex '" + l + "'");
}

Verdict unknown(const Quantity& left, const Quantity& right, std::vector<std::string> notes) {
  Verdict v;
  v.relation = Relation::Unknown;
  v.left = left;
  v.right = right;
  v.notes = std::move(notes);
  return v;
}

// Ascending chain verdict; the relation compares chain.front() with
// chain.back().
Verdict ascending(std::vector<Quantity> chain, std::vector<Relation> links, ProofStep step) {
  Verdict v;
  v.left = chain.front();
  v.right = chain.back();
  bool all_eq = std::all_of(links.begin(), links.end(), [](Relation r) { return r == Relation::EQ; });
  v.relation = all_eq ? Relation::EQ : Relation::LE;
  v.chain = std::move(chain);
  v.links = std::move(links);
  v.trace.push_back(std::move(step));
  return v;
}

// Marks every chain quantity with a certified zero.
void add_zeros(const IndependenceOracle& o, Verdict& v) {
  ProofStep step{"ZeroCorrelation", "", {}, {}, ""};
  for (const auto& q : v.chain) {
    if (std::any_of(v.zeros.begin(), v.zeros.end(), [&](const Quantity& z) { return same_quantity(z, q); }))
      continue;
    if (holds(o, {single(q.a), single(q.c), q.given}, &step.triples)) v.zeros.push_back(q);
  }
  if (!step.triples.empty()) v.trace.push_back(std::move(step));
}

std::string fail_note(const Triple& t) { return "premise fails: " + to_string(t); }

}  // namespace

Verdict compare_correlates(const IndependenceOracle& o, const std::string& a, const std::string& c,
                           const std::string& cprime, const LabelSet& z) {
  require_labels(o, {&a, &c, &cprime}, z);
  if (a == c || a == cprime || c == cprime) throw PreconditionError("a, c and c' must be distinct");
  if (z.contains(a) || z.contains(c) || z.contains(cprime))
    throw PreconditionError("correlates must not be in the conditioning set");

  Quantity left = qty(a, cprime, z), right = qty(a, c, z);
  Triple t{single(cprime), single(a), with(z, c)};
  ProofStep step{"CorrelateSwap", c, z, {}, ""};
  if (!holds(o, t, &step.triples)) return unknown(left, right, {fail_note(t)});
  Verdict v = ascending({left, right}, {Relation::LE}, std::move(step));
  add_zeros(o, v);
  return v;
}

Verdict compare_separator_decrease(const IndependenceOracle& o, const std::string& a,
                                   const std::string& c, const std::string& x, const std::string& z,
                                   const Opt& zprime, const LabelSet& b) {
  require_labels(o, {&a, &c, &x, &z}, b);
  if (zprime) require_labels(o, {&*zprime});
  if (a == c) throw PreconditionError("correlates must differ");
  if (z == a || z == c || z == x) throw PreconditionError("z must differ from a, c and x");
  if (zprime && (*zprime == a || *zprime == c || *zprime == x || *zprime == z))
    throw PreconditionError("z' must differ from a, c, x and z");
  for (const auto* l : {&a, &c, &x, &z})
    if (b.contains(*l)) throw PreconditionError("B must be disjoint from a, c, x, z and z'");
  if (zprime && b.contains(*zprime)) throw PreconditionError("B must be disjoint from a, c, x, z and z'");

  ProofStep step{"DecreaseBeyondSeparator", x, b, {}, ""};
  LabelSet xb = with(b, x);
  LabelSet ac{a, c};
  Triple p1{single(a), single(c), xb};
  Triple p2{ac, single(z), xb};
  std::vector<std::string> notes;
  if (!holds(o, p1, &step.triples)) notes.push_back(fail_note(p1));
  if (!holds(o, p2, &step.triples)) notes.push_back(fail_note(p2));
  Quantity low = qty(a, c, with(b, z)), high = qty(a, c, b);
  if (!notes.empty()) return unknown(low, high, std::move(notes));

  std::vector<Quantity> chain{low, high};
  std::vector<Relation> links{Relation::LE};
  if (zprime) {
    Triple p3{ac, single(*zprime), with(b, z)};
    Triple eq{ac, single(*zprime), b};
    Quantity mid = qty(a, c, with(b, *zprime));
    if (holds(o, p3, &step.triples)) {
      bool flat = holds(o, eq, &step.triples);
      chain = {low, mid, high};
      links = {Relation::LE, flat ? Relation::EQ : Relation::LE};
    } else if (holds(o, eq, &step.triples)) {
      chain = {low, mid, high};
      links = {Relation::LE, Relation::EQ};
      step.note = "z' is independent of a,c given B";
    } else {
      step.note = "third term not certified: " + to_string(p3);
    }
  }
  Verdict v = ascending(std::move(chain), std::move(links), std::move(step));
  add_zeros(o, v);
  return v;
}

namespace {

void validate_increase(const IndependenceOracle& o, const std::string& a, const std::string& c,
                       const std::string& x, const LabelSet& b, const std::string& z, const Opt& zprime) {
  require_labels(o, {&a, &c, &x, &z}, b);
  if (zprime) require_labels(o, {&*zprime});
  if (a == c) throw PreconditionError("correlates must differ");
  if (x == a || x == c) throw PreconditionError("x must differ from a and c");
  if (z == a || z == c) throw PreconditionError("z must differ from a and c");
  if (zprime && (*zprime == a || *zprime == c || *zprime == z || *zprime == x))
    throw PreconditionError("z' must differ from a, c, x and z");
  for (const auto* l : {&a, &c, &x, &z})
    if (b.contains(*l)) throw PreconditionError("B must be disjoint from a, c, x, z and z'");
  if (zprime && b.contains(*zprime)) throw PreconditionError("B must be disjoint from a, c, x, z and z'");
}

// Appends the optional z' term to an increasing chain B <= Bz.
void extend_increase(const IndependenceOracle& o, const std::string& a, const std::string& c,
                     const LabelSet& b, const std::string& z, const Opt& zprime, ProofStep& step,
                     std::vector<Quantity>& chain, std::vector<Relation>& links) {
  Quantity low = qty(a, c, b), high = qty(a, c, with(b, z));
  chain = {low, high};
  links = {Relation::LE};
  if (!zprime) return;
  Triple p3{single(*zprime), LabelSet{a, c} | b, single(z)};
  Triple eq{LabelSet{a, c}, single(*zprime), b};
  Quantity mid = qty(a, c, with(b, *zprime));
  if (holds(o, p3, &step.triples)) {
    bool flat = holds(o, eq, &step.triples);
    chain = {low, mid, high};
    links = {flat ? Relation::EQ : Relation::LE, Relation::LE};
  } else if (holds(o, eq, &step.triples)) {
    chain = {low, mid, high};
    links = {Relation::EQ, Relation::LE};
    if (!step.note.empty()) step.note += "; ";
    step.note += "z' is independent of a,c given B";
  } else {
    if (!step.note.empty()) step.note += "; ";
    step.note += "third term not certified: " + to_string(p3);
  }
}

}  // namespace

Verdict compare_collider_increase(const IndependenceOracle& o, const std::string& a,
                                  const std::string& c, const std::string& x, const LabelSet& b,
                                  const std::string& z, const Opt& zprime) {
  validate_increase(o, a, c, x, b, z, zprime);
  ProofStep step{"IncreaseAtCollider", x, b, {}, ""};
  Triple p1{single(a), single(c), {}};
  Triple p2{LabelSet{a, c}, with(b, z), single(x)};
  std::vector<std::string> notes;
  if (!holds(o, p1, &step.triples)) notes.push_back(fail_note(p1));
  if (!holds(o, p2, &step.triples)) notes.push_back(fail_note(p2));
  if (!notes.empty()) return unknown(qty(a, c, b), qty(a, c, with(b, z)), std::move(notes));

  std::vector<Quantity> chain;
  std::vector<Relation> links;
  extend_increase(o, a, c, b, z, zprime, step, chain, links);
  Verdict v = ascending(std::move(chain), std::move(links), std::move(step));
  add_zeros(o, v);
  return v;
}

Verdict compare_one_sided_increase(const IndependenceOracle& o, const std::string& a,
                                   const std::string& c, const std::string& x, const LabelSet& b,
                                   const std::string& z, const Opt& zprime) {
  validate_increase(o, a, c, x, b, z, zprime);
  if (x == z) throw PreconditionError("x must differ from z");
  Quantity low = qty(a, c, b), high = qty(a, c, with(b, z));

  std::vector<Triple> base;
  Triple p0{single(a), single(z), {}};
  if (!holds(o, p0, &base)) return unknown(low, high, {fail_note(p0)});

  // Condition with c independent of a and z, plus one B-separation.
  std::vector<Triple> isolated = base;
  std::vector<std::string> fired;
  Triple pc{single(c), LabelSet{a, z}, {}};
  bool c_independent = holds(o, pc, &isolated);
  bool c_isolated = c_independent;
  if (c_isolated) {
    struct Sub {
      const char* tag;
      Triple t;
    };
    const Sub subs[] = {
        {"a,z|x", {LabelSet{a, z}, b, single(x)}},
        {"a,z|c,x", {LabelSet{a, z}, b, LabelSet{c, x}}},
        {"c,z|x", {LabelSet{c, z}, b, single(x)}},
        {"c,z|a,x", {LabelSet{c, z}, b, LabelSet{a, x}}},
        {"a,c|x", {LabelSet{a, c}, b, single(x)}},
        {"a,c|x,z", {LabelSet{a, c}, b, LabelSet{x, z}}},
    };
    std::vector<Triple> sub_used;
    for (const auto& s : subs)
      if (holds(o, s.t, &sub_used)) fired.push_back(s.tag);
    if (fired.empty()) c_isolated = false;
    isolated.insert(isolated.end(), sub_used.begin(), sub_used.end());
  }

  std::vector<Triple> separated = base;
  Triple p2{LabelSet{a, z}, with(b, c), single(x)};
  bool at_x = holds(o, p2, &separated);

  if (!c_isolated && !at_x) {
    std::vector<std::string> notes{fail_note(p2)};
    notes.push_back(c_independent ? "c is independent of a,z but no B-separation holds" : fail_note(pc));
    return unknown(low, high, std::move(notes));
  }

  ProofStep step{"IncreaseOneSided", x, b, {}, ""};
  if (c_isolated) {
    step.triples = isolated;
    std::string list;
    for (const auto& f : fired) list += (list.empty() ? "" : "; ") + f;
    step.note = c + " independent of " + a + "," + z + "; B-separations " + list;
    if (at_x) step.note += "; also " + to_string(p2);
  } else {
    step.triples = separated;
    step.note = "separated at the pivot";
  }

  if (c_isolated && b.empty()) {
    // All three quantities vanish.
    Verdict v;
    v.relation = Relation::EQ;
    v.left = low;
    v.right = high;
    v.chain = {low, high};
    v.links = {Relation::EQ};
    if (zprime) {
      Triple p3{single(*zprime), LabelSet{a, c}, single(z)};
      if (holds(o, p3, &step.triples)) {
        v.chain = {low, qty(a, c, single(*zprime)), high};
        v.links = {Relation::EQ, Relation::EQ};
      } else {
        step.note += "; third term not certified: " + to_string(p3);
      }
    }
    v.zeros = v.chain;
    step.note += "; empty B forces every term to zero";
    v.trace.push_back(std::move(step));
    return v;
  }

  std::vector<Quantity> chain;
  std::vector<Relation> links;
  extend_increase(o, a, c, b, z, zprime, step, chain, links);
  Verdict v = ascending(std::move(chain), std::move(links), std::move(step));
  add_zeros(o, v);
  return v;
}

Verdict compare_conditionates(const IndependenceOracle& o, const std::string& a, const std::string& c,
                              const std::string& x, const LabelSet& b, const std::string& z,
                              const Opt& zprime) {
  std::vector<std::string> notes;
  auto absorb = [&](const char* rule, const Verdict& v) {
    for (const auto& n : v.notes) notes.push_back(std::string(rule) + ": " + n);
  };
  Verdict v = compare_separator_decrease(o, a, c, x, z, zprime, b);
  if (v.certified()) return v;
  absorb("DecreaseBeyondSeparator", v);
  if (x != a && x != c) {
    v = compare_collider_increase(o, a, c, x, b, z, zprime);
    if (v.certified()) return v;
    absorb("IncreaseAtCollider", v);
    if (x != z) {
      v = compare_one_sided_increase(o, a, c, x, b, z, zprime);
      if (v.certified()) return v;
      absorb("IncreaseOneSided", v);
    }
  }
  return unknown(qty(a, c, b), qty(a, c, with(b, z)), std::move(notes));
}

Verdict compare_variance_ratio(const CovarianceMatrix& s, const std::string& a, const std::string& c,
                               const std::string& x, const std::string& z, const LabelSet& b,
                               double tol) {
  for (const auto* l : {&a, &c, &x, &z}) s.index_of(*l);
  for (const auto& l : b) s.index_of(l);
  LabelSet named{a, c, x, z};
  if (named.size() != 4) throw PreconditionError("a, c, x and z must be distinct");
  if (b.intersects(named)) throw PreconditionError("B must be disjoint from a, c, x and z");

  CovarianceOracle o(s, tol);
  ProofStep step{"VarianceRatio", x, b, {}, ""};
  const Triple premises[] = {
      {single(a), single(z), {}},
      {single(c), LabelSet{a, z}, {}},
      {LabelSet{a, c, z}, b, single(x)},
  };
  for (const auto& t : premises)
    if (!holds(o, t, &step.triples)) throw PreconditionError(fail_note(t));

  double sxx = s(x, x);
  double lhs = (sxx - conditional_variance(s, x, b)) / sxx;
  double rhs = conditional_variance(s, z, b) / s(z, z);
  step.note = "explained share of x " + format_real(lhs) + ", retained share of z " + format_real(rhs);

  Quantity bz = qty(a, c, with(b, z)), qx = qty(a, c, single(x));
  Verdict v;
  v.left = bz;
  v.right = qx;
  if (lhs >= rhs) {
    v.relation = Relation::GE;
    v.chain = {qx, bz};
  } else {
    v.relation = Relation::LE;
    v.chain = {bz, qx};
  }
  v.links = {Relation::LE};
  v.trace.push_back(std::move(step));
  return v;
}

// ---------------------------------------------------------------------------
// Chain comparison

void validate_query(const IndependenceOracle& o, const Query& q) {
  require_labels(o, {&q.a, &q.c}, q.z1 | q.z2);
  if (q.a == q.c) throw PreconditionError("correlates must differ");
  LabelSet ac{q.a, q.c};
  if (ac.intersects(q.z1) || ac.intersects(q.z2))
    throw PreconditionError("correlates must not be in a conditioning set");
}

namespace {

std::string key_of(const Triple& t) {
  auto sorted = [](const LabelSet& s) {
    auto v = s.items();
    std::sort(v.begin(), v.end());
    std::string out;
    for (const auto& l : v) out += l + ",";
    return out;
  };
  auto l = sorted(t.t1), r = sorted(t.t2);
  if (r < l) std::swap(l, r);
  return l + "|" + r + "|" + sorted(t.t3);
}

class CachingOracle : public IndependenceOracle {
 public:
  explicit CachingOracle(const IndependenceOracle& inner) : inner_(inner) {}
  bool independent(const Triple& t) const override {
    auto k = key_of(t);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    bool r = inner_.independent(t);
    cache_.emplace(std::move(k), r);
    return r;
  }
  bool has(std::string_view label) const override { return inner_.has(label); }
  std::vector<std::string> vertices() const override { return inner_.vertices(); }

 private:
  const IndependenceOracle& inner_;
  mutable std::map<std::string, bool> cache_;
};

Relation flip(Relation r) {
  if (r == Relation::LE) return Relation::GE;
  if (r == Relation::GE) return Relation::LE;
  return r;
}

bool satisfies(Relation got, Relation want) { return got == want || got == Relation::EQ; }

// What a certified verdict says about rho^2(L) versus rho^2(R).
std::optional<Relation> implied(const Verdict& v, const LabelSet& l, const LabelSet& r) {
  if (!v.certified()) return std::nullopt;
  auto find = [&](const LabelSet& s) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < v.chain.size(); ++i)
      if (v.chain[i].given.same_as(s)) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };
  auto is_zero = [&](const LabelSet& s) {
    return std::any_of(v.zeros.begin(), v.zeros.end(), [&](const Quantity& q) { return q.given.same_as(s); });
  };
  bool zl = is_zero(l), zr = is_zero(r);
  if (zl && zr) return Relation::EQ;
  auto i = find(l), j = find(r);
  if (i >= 0 && j >= 0) {
    auto lo = std::min(i, j), hi = std::max(i, j);
    bool flat = true;
    for (auto k = lo; k < hi; ++k)
      if (v.links[static_cast<std::size_t>(k)] != Relation::EQ) flat = false;
    if (flat) return Relation::EQ;
    return i < j ? Relation::LE : Relation::GE;
  }
  if (zl) return Relation::LE;
  if (zr) return Relation::GE;
  return std::nullopt;
}

struct Factor {
  Relation relation;
  std::vector<ProofStep> steps;
};

class ChainSearch {
 public:
  ChainSearch(const IndependenceOracle& o, const Query& q, std::vector<std::string> pivots)
      : o_(o), a_(q.a), c_(q.c), ac_{q.a, q.c}, pivots_(std::move(pivots)) {}

  // Certifies rho^2(L) `want` rho^2(R), where L and R differ in at most one
  // element each.
  std::optional<Factor> factor(const LabelSet& l, const LabelSet& r, Relation want) {
    std::string k = key_of({l, r, {}}) + (want == Relation::LE ? "<" : ">");
    // key_of is symmetric in its first two slots; keep the direction.
    k += "#" + l.joined() + "#";
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    auto res = compute(l, r, want);
    memo_.emplace(k, res);
    return res;
  }

 private:
  std::optional<Factor> compute(const LabelSet& l, const LabelSet& r, Relation want) {
    LabelSet ctx = l & r;
    LabelSet du = l - r, dw = r - l;
    if (du.empty() && dw.empty()) return Factor{Relation::EQ, {}};
    if (du.empty()) return step(ctx, dw[0], want);
    if (dw.empty()) {
      auto s = step(ctx, du[0], flip(want));
      if (s) s->relation = flip(s->relation);
      return s;
    }
    return swap(ctx, du[0], dw[0], want);
  }

  std::optional<Factor> from_verdict(const Verdict& v, const LabelSet& l, const LabelSet& r, Relation want) {
    auto rel = implied(v, l, r);
    if (!rel || !satisfies(*rel, want)) return std::nullopt;
    return Factor{*rel, v.trace};
  }

  // rho^2(ctx) `want` rho^2(ctx v)
  std::optional<Factor> step(const LabelSet& ctx, const std::string& v, Relation want) {
    LabelSet plus = with(ctx, v);
    ProofStep eq{"IrrelevantVertex", "", ctx, {}, ""};
    if (holds(o_, {ac_, single(v), ctx}, &eq.triples)) return Factor{Relation::EQ, {eq}};

    if (want == Relation::LE) {
      ProofStep zero{"ZeroCorrelation", "", ctx, {}, ""};
      if (holds(o_, {single(a_), single(c_), ctx}, &zero.triples)) return Factor{Relation::LE, {zero}};
      for (const auto& x : pivots_) {
        if (ctx.contains(x) || x == a_ || x == c_) continue;
        if (auto f = from_verdict(compare_collider_increase(o_, a_, c_, x, ctx, v, std::nullopt), ctx, plus, want))
          return f;
        if (x == v) continue;
        if (auto f = from_verdict(compare_one_sided_increase(o_, a_, c_, x, ctx, v, std::nullopt), ctx, plus, want))
          return f;
      }
    } else {
      ProofStep zero{"ZeroCorrelation", "", plus, {}, ""};
      if (holds(o_, {single(a_), single(c_), plus}, &zero.triples)) return Factor{Relation::GE, {zero}};
      for (const auto& x : pivots_) {
        if (ctx.contains(x) || x == v) continue;
        if (auto f = from_verdict(compare_separator_decrease(o_, a_, c_, x, v, std::nullopt, ctx), ctx, plus, want))
          return f;
      }
    }
    return std::nullopt;
  }

  // rho^2(ctx u) `want` rho^2(ctx w)
  std::optional<Factor> swap(const LabelSet& ctx, const std::string& u, const std::string& w, Relation want) {
    LabelSet l = with(ctx, u), r = with(ctx, w);
    ProofStep eq{"IrrelevantVertex", "", ctx, {}, ""};
    if (holds(o_, {ac_, single(u), ctx}, &eq.triples) && holds(o_, {ac_, single(w), ctx}, &eq.triples))
      return Factor{Relation::EQ, {eq}};

    const LabelSet& zero_side = want == Relation::LE ? l : r;
    ProofStep zero{"ZeroCorrelation", "", zero_side, {}, ""};
    if (holds(o_, {single(a_), single(c_), zero_side}, &zero.triples)) return Factor{want, {zero}};

    // Decreasing rule puts the lower term first; increasing rules the higher.
    const std::string& near = want == Relation::LE ? u : w;
    const std::string& far = want == Relation::LE ? w : u;
    for (const auto& x : pivots_) {
      if (ctx.contains(x)) continue;
      if (x != near && x != far) {
        if (auto f = from_verdict(compare_separator_decrease(o_, a_, c_, x, near, far, ctx), l, r, want)) return f;
      }
      if (x == a_ || x == c_ || x == near) continue;
      if (auto f = from_verdict(compare_collider_increase(o_, a_, c_, x, ctx, far, near), l, r, want)) return f;
      if (x == far) continue;
      if (auto f = from_verdict(compare_one_sided_increase(o_, a_, c_, x, ctx, far, near), l, r, want)) return f;
    }

    // Through the common part: rho^2(ctx u) vs rho^2(ctx) vs rho^2(ctx w).
    auto down = step(ctx, u, flip(want));
    if (!down) return std::nullopt;
    auto up = step(ctx, w, want);
    if (!up) return std::nullopt;
    Factor out;
    out.relation = down->relation == Relation::EQ && up->relation == Relation::EQ ? Relation::EQ : want;
    out.steps = down->steps;
    out.steps.insert(out.steps.end(), up->steps.begin(), up->steps.end());
    return out;
  }

  const IndependenceOracle& o_;
  std::string a_, c_;
  LabelSet ac_;
  std::vector<std::string> pivots_;
  std::map<std::string, std::optional<Factor>> memo_;
};

std::vector<std::vector<std::string>> orderings(const LabelSet& s, std::size_t limit) {
  std::vector<std::string> v = s.items();
  std::vector<std::vector<std::string>> out{v};
  if (v.size() > limit) return out;
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  while (std::next_permutation(idx.begin(), idx.end())) {
    std::vector<std::string> p;
    for (auto i : idx) p.push_back(v[i]);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LabelSet> swap_sequence(std::vector<std::string> l1, std::vector<std::string> l2) {
  std::size_t n = std::max(l1.size(), l2.size());
  // Conditioning twice on a vertex changes nothing, so repeating the last
  // element pads without changing any value.
  while (!l1.empty() && l1.size() < n) l1.push_back(l1.back());
  while (!l2.empty() && l2.size() < n) l2.push_back(l2.back());
  std::vector<LabelSet> seq;
  for (std::size_t i = 0; i <= n; ++i) {
    LabelSet s;
    for (std::size_t k = 0; k < i && k < l2.size(); ++k) s.insert(l2[k]);
    for (std::size_t k = i; k < l1.size(); ++k) s.insert(l1[k]);
    seq.push_back(std::move(s));
  }
  return seq;
}

}  // namespace

Verdict chain_compare(const IndependenceOracle& oracle, const Query& q,
                      const std::vector<std::string>& preferred_pivots) {
  validate_query(oracle, q);
  Quantity left = qty(q.a, q.c, q.z1), right = qty(q.a, q.c, q.z2);
  if (q.z1.same_as(q.z2)) {
    Verdict v;
    v.relation = Relation::EQ;
    v.left = left;
    v.right = right;
    v.chain = {left};
    v.trace.push_back({"IdenticalConditionates", "", {}, {}, "no factors"});
    return v;
  }

  CachingOracle o(oracle);
  std::vector<std::string> pivots;
  LabelSet seen;
  for (const auto& p : preferred_pivots)
    if (seen.insert(p)) pivots.push_back(p);
  for (const auto& p : o.vertices())
    if (seen.insert(p)) pivots.push_back(p);

  ChainSearch search(o, q, pivots);
  const std::size_t perm_limit = 4;
  auto o1 = orderings(q.z1, perm_limit);
  auto o2 = orderings(q.z2, perm_limit);

  for (Relation want : {Relation::LE, Relation::GE}) {
    for (const auto& l1 : o1) {
      for (const auto& l2 : o2) {
        auto seq = swap_sequence(l1, l2);
        std::vector<Factor> factors;
        bool ok = true;
        for (std::size_t i = 1; i < seq.size() && ok; ++i) {
          auto f = search.factor(seq[i - 1], seq[i], want);
          if (f) factors.push_back(std::move(*f));
          else ok = false;
        }
        if (!ok) continue;

        Verdict v;
        v.left = left;
        v.right = right;
        bool all_eq = true;
        std::vector<Quantity> chain{qty(q.a, q.c, seq[0])};
        std::vector<Relation> links;
        for (std::size_t i = 0; i < factors.size(); ++i) {
          const auto& f = factors[i];
          if (f.relation != Relation::EQ) all_eq = false;
          if (!seq[i].same_as(seq[i + 1])) {
            chain.push_back(qty(q.a, q.c, seq[i + 1]));
            links.push_back(f.relation == Relation::EQ ? Relation::EQ : Relation::LE);
          }
          for (auto s : f.steps) {
            std::string tag = "factor " + std::to_string(i + 1) + ": " + to_string(qty(q.a, q.c, seq[i])) +
                              " vs " + to_string(qty(q.a, q.c, seq[i + 1]));
            s.note = s.note.empty() ? tag : tag + "; " + s.note;
            v.trace.push_back(std::move(s));
          }
        }
        v.relation = all_eq ? Relation::EQ : want;
        if (want == Relation::GE) {
          std::reverse(chain.begin(), chain.end());
          std::reverse(links.begin(), links.end());
        }
        v.chain = std::move(chain);
        v.links = std::move(links);
        if (v.trace.empty()) v.trace.push_back({"IdenticalConditionates", "", {}, {}, "padding only"});
        add_zeros(o, v);
        return v;
      }
    }
  }
  return unknown(left, right, {"no certificate found for any single-swap factorization"});
}

Verdict chain_compare(const MixedGraph& g, const Query& q) {
  GraphOracle o(g);
  validate_query(o, q);
  std::vector<std::string> preferred;
  if (skeleton_is_forest(g)) {
    auto ac = unique_path(g, q.a, q.c);
    if (ac.status == PathStatus::Found) {
      LabelSet on_path(ac.path.vertices);
      for (const auto& z : q.z1 | q.z2) {
        auto zp = unique_path(g, z, q.a);
        if (zp.status != PathStatus::Found) continue;
        for (const auto& v : zp.path.vertices)
          if (on_path.contains(v)) {
            preferred.push_back(v);
            break;
          }
      }
      for (const auto& v : ac.path.vertices) preferred.push_back(v);
    }
  }
  return chain_compare(o, q, preferred);
}

}  // namespace pcineq
