#include "pcineq/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <random>

#include "pcineq/graph_io.hpp"

namespace pcineq {

namespace {

std::string vname(std::size_t i) { return "v" + std::to_string(i); }

// Random permutation used as a hidden order so labels do not reveal it.
std::vector<std::size_t> shuffled(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

MixedGraph tree_with(std::size_t n, std::uint64_t seed, bool orient) {
  std::mt19937_64 rng(seed);
  MixedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(vname(i));
  auto order = shuffled(n, rng);
  std::bernoulli_distribution flip(0.5);
  for (std::size_t k = 1; k < n; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::size_t u = order[pick(rng)], v = order[k];
    if (!orient) g.add_edge(vname(u), vname(v), EdgeKind::Undirected);
    else if (flip(rng)) g.add_edge(vname(u), vname(v), EdgeKind::Directed);
    else g.add_edge(vname(v), vname(u), EdgeKind::Directed);
  }
  return g;
}

}  // namespace

MixedGraph random_tree(std::size_t n, std::uint64_t seed) { return tree_with(n, seed, false); }

MixedGraph random_polytree(std::size_t n, std::uint64_t seed) { return tree_with(n, seed, true); }

MixedGraph random_dag(std::size_t n, double edge_prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MixedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(vname(i));
  auto order = shuffled(n, rng);
  std::bernoulli_distribution coin(edge_prob);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(vname(order[i]), vname(order[j]), EdgeKind::Directed);
  return g;
}

MixedGraph random_mag(std::size_t n, double edge_prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MixedGraph g = random_dag(n, edge_prob, rng());
  std::bernoulli_distribution coin(edge_prob / 2);

  auto anc = [&](std::size_t v) { return ancestors(g, LabelSet{g.label(v)}); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j) || !coin(rng)) continue;
      if (anc(i).contains(g.label(j)) || anc(j).contains(g.label(i))) continue;
      g.add_edge(g.label(i), g.label(j), EdgeKind::Bidirected);
    }

  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < n; ++v)
    if (g.parents(v).empty() && g.spouses(v).empty()) free.push_back(v);
  std::shuffle(free.begin(), free.end(), rng);
  std::bernoulli_distribution join(0.6);
  for (std::size_t k = 1; k < free.size(); ++k) {
    if (!join(rng)) continue;
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::size_t u = free[pick(rng)];
    if (!g.adjacent(u, free[k])) g.add_edge(g.label(u), g.label(free[k]), EdgeKind::Undirected);
  }
  return g;
}

std::vector<CorpusEntry> generated_corpus(const CorpusSpec& spec) {
  std::vector<CorpusEntry> out;
  std::mt19937_64 rng(spec.seed);
  for (std::size_t n = spec.min_vertices; n <= spec.max_vertices; ++n) {
    for (std::size_t k = 0; k < spec.per_size; ++k) {
      std::string tag = std::to_string(n) + "_" + std::to_string(k);
      out.push_back({"tree_" + tag, random_tree(n, rng())});
      out.push_back({"polytree_" + tag, random_polytree(n, rng())});
      out.push_back({"dag_" + tag, random_dag(n, 0.45, rng())});
      out.push_back({"mag_" + tag, random_mag(n, 0.45, rng())});
    }
  }
  return out;
}

std::vector<CorpusEntry> load_graph_dir(const std::string& dir) {
  std::vector<CorpusEntry> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".graph") continue;
    out.push_back({entry.path().stem().string(), load_graph(entry.path().string())});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.name < y.name; });
  return out;
}

}  // namespace pcineq
