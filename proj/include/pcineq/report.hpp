#pragma once

#include <string>

#include "pcineq/inequality.hpp"

namespace pcineq {

// RELATION<TAB>left<TAB>right, then indented chain, zero and trace lines:
//   #k RULE(x=..., B=...) triples: t1; t2
// Chains of three or more terms print their relation as e.g. "LE-chain".
std::string serialize_verdict(const Verdict& v);

// "a=1.5,b=2" style parameter listing used in counterexample reports.
std::string serialize_params(const SemParams& p);

}  // namespace pcineq
