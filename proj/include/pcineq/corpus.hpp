#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcineq/graph.hpp"

namespace pcineq {

// Random graph generators. Vertices are labelled v0, v1, ... and every
// generator is a pure function of its arguments.
MixedGraph random_tree(std::size_t n, std::uint64_t seed);
MixedGraph random_polytree(std::size_t n, std::uint64_t seed);
MixedGraph random_dag(std::size_t n, double edge_prob, std::uint64_t seed);
// Ancestral graph: directed edges along a random order, bidirected edges
// between pairs not related by ancestry, and an undirected forest among
// vertices left without parents or spouses.
MixedGraph random_mag(std::size_t n, double edge_prob, std::uint64_t seed);

struct CorpusEntry {
  std::string name;
  MixedGraph graph;
};

struct CorpusSpec {
  std::size_t min_vertices = 3;
  std::size_t max_vertices = 7;
  std::size_t per_size = 6;  // graphs of each kind per vertex count
  std::uint64_t seed = 1;
};

// Trees, polytrees, DAGs and MAGs for every size in the range.
std::vector<CorpusEntry> generated_corpus(const CorpusSpec& spec = {});

// Every *.graph file in `dir`, named by file stem, sorted by name.
std::vector<CorpusEntry> load_graph_dir(const std::string& dir);

}  // namespace pcineq
