#pragma once

#include <string>
#include <string_view>

#include "pcineq/graph.hpp"
#include "pcineq/labels.hpp"

namespace pcineq {

// <T1, T2 | T3>: T1 separated from T2 given T3.
struct Triple {
  LabelSet t1;
  LabelSet t2;
  LabelSet t3;
};

// "a,c _||_ b | x"
std::string to_string(const Triple& t);

enum class ColliderStatus { Collider, NonCollider, Endpoint };

// Throws LabelError if v is not on the path.
ColliderStatus collider_status(const Path& p, std::string_view v);

// All three throw ClassMismatch for the wrong graph class and
// PreconditionError when the sets overlap. An empty X or Y is vacuously
// separated.
bool ug_separated(const MixedGraph& g, const LabelSet& a, const LabelSet& c, const LabelSet& z);
bool d_separated(const MixedGraph& g, const LabelSet& x, const LabelSet& y, const LabelSet& z);
bool m_separated(const MixedGraph& g, const LabelSet& x, const LabelSet& y, const LabelSet& z);

// Undirected graph after conditioning on Z: the subgraph induced by V \ Z.
MixedGraph condition_model(const MixedGraph& g, const LabelSet& z);

// Dispatches on classify(g). Invalid graphs raise ClassMismatch.
bool separation_oracle(const MixedGraph& g, const Triple& t);
bool separation_oracle(const MixedGraph& g, GraphClass cls, const Triple& t);

}  // namespace pcineq
