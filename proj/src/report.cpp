#include "pcineq/report.hpp"

#include <sstream>

#include "pcineq/covariance_io.hpp"

namespace pcineq {

std::string serialize_verdict(const Verdict& v) {
  std::ostringstream out;
  std::string rel(to_string(v.relation));
  if (v.certified() && v.chain.size() >= 3) rel += "-chain";
  out << rel << '\t' << to_string(v.left) << '\t' << to_string(v.right) << '\n';

  if (v.chain.size() >= 2) {
    out << "  chain: " << to_string(v.chain[0]);
    for (std::size_t i = 1; i < v.chain.size(); ++i)
      out << (v.links[i - 1] == Relation::EQ ? " = " : " <= ") << to_string(v.chain[i]);
    out << '\n';
  }
  for (const auto& z : v.zeros) out << "  zero: " << to_string(z) << '\n';

  int k = 0;
  for (const auto& s : v.trace) {
    std::string args;
    if (!s.pivot.empty()) args = "x=" + s.pivot;
    if (!s.background.empty()) args += (args.empty() ? "B=" : ", B=") + s.background.joined();
    out << "  #" << ++k << ' ' << s.rule;
    if (!args.empty()) out << '(' << args << ')';
    if (!s.triples.empty()) out << " triples: ";
    for (std::size_t i = 0; i < s.triples.size(); ++i) out << (i ? "; " : "") << to_string(s.triples[i]);
    if (!s.note.empty()) out << " [" << s.note << "]";
    out << '\n';
  }
  for (const auto& n : v.notes) out << "  note: " << n << '\n';
  if (v.counterexample) {
    out << "  witness low: " << serialize_params(v.counterexample->first) << '\n';
    out << "  witness high: " << serialize_params(v.counterexample->second) << '\n';
  }
  return out.str();
}

std::string serialize_params(const SemParams& p) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [edge, b] : p.beta) {
    out << (first ? "" : ",") << edge.first << "->" << edge.second << '=' << format_real(b);
    first = false;
  }
  for (const auto& [v, t] : p.tau2) {
    out << (first ? "" : ",") << v << '=' << format_real(t);
    first = false;
  }
  return out.str();
}

}  // namespace pcineq
