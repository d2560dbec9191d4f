#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pcineq/graph.hpp"

namespace pcineq {

enum class Direction { Increases, Decreases, NoEffect };
// First condition: a _||_ z and c not _||_ z. Second: c _||_ z or a not _||_ z.
enum class CaseTag { Cond1, Cond2, Degenerate };

std::string_view to_string(Direction d);
std::string_view to_string(CaseTag t);

struct ModselCase {
  Direction direction = Direction::NoEffect;
  CaseTag tag = CaseTag::Degenerate;
  std::string note;
};

// Sign of rho^2(a,c|bz) - rho^2(a,c|b) on a polytree with a in an(c) and
// c in an(b). NoEffect when a,c _||_ z | b, which covers b in an(z).
ModselCase modsel_classify(const MixedGraph& g, const std::string& a, const std::string& c,
                           const std::string& b, const std::string& z);

struct Probe {
  std::string label;
  int sign;  // -1, 0 or +1: observed sign of rho^2(a,probe|bz) - rho^2(a,probe|b)
};

enum class LocateStatus { Located, Ambiguous, Contradiction };
std::string_view to_string(LocateStatus s);

// An attachment point of the z-branch: inside trunk edge (upper, lower), or
// above a when upper is empty.
struct Attachment {
  std::string upper;
  std::string lower;
};

struct LocateResult {
  LocateStatus status = LocateStatus::Contradiction;
  Attachment segment;                  // merged consistent trunk segment when Located
  std::vector<Attachment> candidates;  // every attachment consistent with the probes
  std::vector<std::string> notes;
};

// Finds where a tributary z joins the directed trunk from a to b, from the
// observed signs at probes on the trunk. The graph must not contain z.
LocateResult locate_junction(const MixedGraph& skeleton, const std::vector<Probe>& probes,
                             const std::string& a, const std::string& b);

// Parses "probe,sign" rows; sign is one of -, +, 0, -1, 1.
std::vector<Probe> parse_probes(std::string_view text);

}  // namespace pcineq
