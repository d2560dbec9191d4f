#include "pcineq/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include "pcineq/covariance_io.hpp"
#include "pcineq/graph_io.hpp"
#include "pcineq/polytree_select.hpp"
#include "pcineq/report.hpp"
#include "pcineq/tree_rules.hpp"
#include "pcineq/verify.hpp"

namespace pcineq::cli {

namespace {

struct Options {
  std::string graph, cov, out, probes, grid, param;
  std::string a, c, cprime, x, z, zprime, b;
  std::string B, Z, Z1, Z2, given;
  std::vector<std::string> positional, queries;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t left = 4, right = 4;
};

// A domain failure that is not an exception from the library, such as an
// uncertified comparison.
struct DomainFailure {
  std::string message;
};

MixedGraph graph_of(const Options& o) {
  if (!o.graph.empty()) return load_graph(o.graph);
  if (!o.positional.empty()) return load_graph(o.positional.front());
  throw CLI::RequiredError("--graph");
}

void need(const std::string& value, const char* flag) {
  if (value.empty()) throw CLI::RequiredError(flag);
}

std::optional<std::string> opt(const std::string& v) {
  if (v.empty()) return std::nullopt;
  return v;
}

// "a,c|z1,z2" or "a,c"
Quantity parse_quantity(const std::string& text) {
  auto bar = text.find('|');
  LabelSet pair = parse_label_list(text.substr(0, bar));
  if (pair.size() != 2) throw PreconditionError("query needs two labels before '|': " + text);
  Quantity q{pair[0], pair[1], {}};
  if (bar != std::string::npos) q.given = parse_label_list(text.substr(bar + 1));
  return q;
}

void cmd_classify(const Options& o, std::ostream& out) { out << to_string(classify(graph_of(o))) << '\n'; }

void cmd_separate(const Options& o, std::ostream& out) {
  MixedGraph g = graph_of(o);
  std::size_t first = o.graph.empty() ? 1 : 0;
  if (o.positional.size() != first + 2) throw CLI::ValidationError("separate", "expects two label lists");
  Triple t{parse_label_list(o.positional[first]), parse_label_list(o.positional[first + 1]),
           parse_label_list(o.given)};
  for (const auto& set : {t.t1, t.t2, t.t3})
    for (const auto& l : set) g.index_of(l);
  out << (separation_oracle(g, t) ? "true" : "false") << '\n';
}

void cmd_pcor(const Options& o, std::ostream& out) {
  need(o.cov, "--cov");
  CovarianceMatrix s = load_covariance(o.cov);
  std::string a = o.a, c = o.c;
  if (a.empty() && c.empty() && o.positional.size() == 2) {
    a = o.positional[0];
    c = o.positional[1];
  }
  need(a, "--a");
  need(c, "--c");
  out << format_real(partial_correlation_sq(s, a, c, parse_label_list(o.given))) << '\n';
}

void cmd_compare(const Options& o, std::ostream& out) {
  need(o.a, "--a");
  need(o.c, "--c");
  Verdict v;
  if (!o.cprime.empty()) {
    MixedGraph g = graph_of(o);
    GraphOracle oracle(g);
    v = compare_correlates(oracle, o.a, o.c, o.cprime, parse_label_list(o.Z));
  } else {
    need(o.x, "--x");
    need(o.z, "--z");
    if (!o.cov.empty()) {
      CovarianceMatrix s = load_covariance(o.cov);
      v = compare_variance_ratio(s, o.a, o.c, o.x, o.z, parse_label_list(o.B));
    } else {
      MixedGraph g = graph_of(o);
      GraphOracle oracle(g);
      v = compare_conditionates(oracle, o.a, o.c, o.x, parse_label_list(o.B), o.z, opt(o.zprime));
    }
  }
  out << serialize_verdict(v);
  if (!v.certified()) throw DomainFailure{"no rule certifies this comparison"};
}

void cmd_chain(const Options& o, std::ostream& out) {
  need(o.a, "--a");
  need(o.c, "--c");
  MixedGraph g = graph_of(o);
  Query q{o.a, o.c, parse_label_list(o.Z1), parse_label_list(o.Z2)};
  Verdict v = chain_compare(g, q);
  out << serialize_verdict(v);
}

void cmd_witness(const Options& o, std::ostream& out) {
  need(o.a, "--a");
  need(o.c, "--c");
  MixedGraph g = graph_of(o);
  Witness w = completeness_witness(g, o.a, o.c, parse_label_list(o.Z1), parse_label_list(o.Z2));
  out << "# rho2(a,c|Z1) > rho2(a,c|Z2), " << w.z1 << " detached\n" << serialize_covariance(w.sigma1);
  out << "# rho2(a,c|Z2) > rho2(a,c|Z1), " << w.z2 << " detached\n" << serialize_covariance(w.sigma2);
}

void cmd_modsel(const Options& o, std::ostream& out) {
  need(o.a, "--a");
  need(o.c, "--c");
  need(o.b, "--b");
  need(o.z, "--z");
  ModselCase m = modsel_classify(graph_of(o), o.a, o.c, o.b, o.z);
  out << to_string(m.direction) << '\t' << to_string(m.tag) << '\n';
  if (!m.note.empty()) out << "  note: " << m.note << '\n';
}

std::string attachment_text(const Attachment& at) {
  return "(" + (at.upper.empty() ? std::string("-") : at.upper) + "," + at.lower + ")";
}

void cmd_locate(const Options& o, std::ostream& out) {
  need(o.a, "--a");
  need(o.b, "--b");
  need(o.probes, "--probes");
  std::ifstream in(o.probes);
  if (!in) throw Error("cannot open " + o.probes);
  std::stringstream buf;
  buf << in.rdbuf();
  LocateResult r = locate_junction(graph_of(o), parse_probes(buf.str()), o.a, o.b);
  out << to_string(r.status);
  if (r.status == LocateStatus::Located) out << '\t' << attachment_text(r.segment);
  out << '\n';
  for (const auto& c : r.candidates) out << "  candidate: " << attachment_text(c) << '\n';
  for (const auto& n : r.notes) out << "  note: " << n << '\n';
}

void cmd_mc(const Options& o, std::ostream& out) {
  need(o.a, "--a");
  need(o.c, "--c");
  MixedGraph g = graph_of(o);
  Query q{o.a, o.c, parse_label_list(o.Z1), parse_label_list(o.Z2)};
  Verdict v = chain_compare(g, q);
  if (!v.certified()) {
    v = find_incomparable(g, v, o.trials, o.seed);
    out << serialize_verdict(v);
    return;
  }
  McReport r = monte_carlo_check(g, claims_of(v), o.trials, o.seed);
  out << summarize(r) << '\n';
  if (r.counterexample) out << serialize_params(*r.counterexample) << '\n';
}

void cmd_sweep(const Options& o, std::ostream& out) {
  need(o.param, "--param");
  if (o.queries.empty()) throw CLI::RequiredError("--query");
  MixedGraph g = graph_of(o);
  if (classify(g) != GraphClass::DAG && classify(g) != GraphClass::Polytree)
    throw ClassMismatch("sweeps need a DAG");
  std::string grid = o.grid;
  if (grid.empty()) grid = o.param.find("->") != std::string::npos ? "-2:2:41" : "0.1:4:41";
  std::vector<Quantity> qs;
  for (const auto& text : o.queries) qs.push_back(parse_quantity(text));
  out << sweep_csv(sweep(g, o.param, parse_grid(grid), qs));
}

void cmd_profile(const Options& o, std::ostream& out) { out << sweep_csv(chain_profile(o.left, o.right)); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orderings between squared partial correlations of graph-Markov Gaussians", "pcineq"};
  app.require_subcommand(1);
  Options o;

  auto graph_opt = [&](CLI::App* s) { s->add_option("--graph", o.graph, "graph file"); };
  auto pair_opts = [&](CLI::App* s) {
    s->add_option("--a", o.a, "first vertex");
    s->add_option("--c", o.c, "second vertex");
  };

  auto* classify_cmd = app.add_subcommand("classify", "print the graph class");
  graph_opt(classify_cmd);
  classify_cmd->add_option("file", o.positional, "graph file");

  auto* separate_cmd = app.add_subcommand("separate", "test X _||_ Y | given");
  graph_opt(separate_cmd);
  separate_cmd->add_option("sets", o.positional, "[graph] X Y as comma separated labels");
  separate_cmd->add_option("--given", o.given, "conditioning labels");

  auto* pcor_cmd = app.add_subcommand("pcor", "squared partial correlation from a covariance CSV");
  pcor_cmd->add_option("--cov", o.cov, "covariance CSV");
  pair_opts(pcor_cmd);
  pcor_cmd->add_option("pair", o.positional, "a c");
  pcor_cmd->add_option("--given", o.given, "conditioning labels");

  auto* compare_cmd = app.add_subcommand("compare", "single rule comparison with trace");
  graph_opt(compare_cmd);
  pair_opts(compare_cmd);
  compare_cmd->add_option("--cov", o.cov, "covariance CSV for the variance ratio rule");
  compare_cmd->add_option("--x", o.x, "pivot vertex");
  compare_cmd->add_option("--z", o.z, "added vertex");
  compare_cmd->add_option("--zprime", o.zprime, "intermediate vertex");
  compare_cmd->add_option("--B", o.B, "background labels");
  compare_cmd->add_option("--cprime", o.cprime, "second correlate, compared at fixed --Z");
  compare_cmd->add_option("--Z", o.Z, "conditioning labels for --cprime");

  auto* chain_cmd = app.add_subcommand("chain", "compare rho2(a,c|Z1) with rho2(a,c|Z2)");
  graph_opt(chain_cmd);
  pair_opts(chain_cmd);
  chain_cmd->add_option("--Z1", o.Z1, "first conditioning set");
  chain_cmd->add_option("--Z2", o.Z2, "second conditioning set");

  auto* witness_cmd = app.add_subcommand("witness", "two tree covariances ordering Z1 and Z2 both ways");
  graph_opt(witness_cmd);
  pair_opts(witness_cmd);
  witness_cmd->add_option("--Z1", o.Z1, "first conditioning set");
  witness_cmd->add_option("--Z2", o.Z2, "second conditioning set");

  auto* modsel_cmd = app.add_subcommand("modsel", "effect of conditioning on z on a polytree");
  graph_opt(modsel_cmd);
  pair_opts(modsel_cmd);
  modsel_cmd->add_option("--b", o.b, "downstream vertex");
  modsel_cmd->add_option("--z", o.z, "candidate vertex");

  auto* locate_cmd = app.add_subcommand("locate", "locate a tributary junction from probe signs");
  graph_opt(locate_cmd);
  locate_cmd->add_option("--a", o.a, "upstream end of the trunk");
  locate_cmd->add_option("--b", o.b, "downstream end of the trunk");
  locate_cmd->add_option("--probes", o.probes, "probes CSV");

  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo check of a chain verdict");
  graph_opt(mc_cmd);
  pair_opts(mc_cmd);
  mc_cmd->add_option("--Z1", o.Z1, "first conditioning set");
  mc_cmd->add_option("--Z2", o.Z2, "second conditioning set");
  mc_cmd->add_option("--trials", o.trials, "number of draws");
  mc_cmd->add_option("--seed", o.seed, "random seed")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "vary one parameter over a grid");
  graph_opt(sweep_cmd);
  sweep_cmd->add_option("--param", o.param, "u->v or v");
  sweep_cmd->add_option("--grid", o.grid, "LO:HI:N");
  sweep_cmd->add_option("--query", o.queries, "a,c|z1,z2 (repeatable)");
  sweep_cmd->add_option("--seed", o.seed, "random seed")->required();

  auto* profile_cmd = app.add_subcommand("profile", "rho2(a,c|i) along a chain");
  profile_cmd->add_option("--left", o.left, "vertices above x");
  profile_cmd->add_option("--right", o.right, "vertices below x");

  for (auto* s : app.get_subcommands({})) s->add_option("--out", o.out, "write output to FILE");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  std::ostringstream buf;
  int code = 0;
  try {
    if (*classify_cmd) cmd_classify(o, buf);
    else if (*separate_cmd) cmd_separate(o, buf);
    else if (*pcor_cmd) cmd_pcor(o, buf);
    else if (*compare_cmd) cmd_compare(o, buf);
    else if (*chain_cmd) cmd_chain(o, buf);
    else if (*witness_cmd) cmd_witness(o, buf);
    else if (*modsel_cmd) cmd_modsel(o, buf);
    else if (*locate_cmd) cmd_locate(o, buf);
    else if (*mc_cmd) cmd_mc(o, buf);
    else if (*sweep_cmd) cmd_sweep(o, buf);
    else if (*profile_cmd) cmd_profile(o, buf);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainFailure& e) {
    err << "error: " << e.message << '\n';
    code = 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (o.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream file(o.out);
    if (!file) {
      err << "error: cannot write " << o.out << '\n';
      return 2;
    }
    file << buf.str();
  }
  return code;
}

}  // namespace pcineq::cli
