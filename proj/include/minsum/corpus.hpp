#ifndef MINSUM_CORPUS_HPP
#define MINSUM_CORPUS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "minsum/graph.hpp"

namespace minsum {

// Deterministic uniform double in [lo, hi) built directly from mt19937
// output, so results do not depend on the standard library's distribution
// implementation.
double uniform_double(std::mt19937& rng, double lo, double hi);

/// Seed for every built-in randomized fixture.
inline constexpr std::uint32_t kCorpusSeed = 20240901;

struct CorpusEntry {
  std::string name;
  WeightedGraph graph;
};

/// Built-in verification corpus: triangle, K4, K5, Petersen, cycles
/// 5/7/9/12, 2-connected cycles 10/20, tori 3x3/4x4, and random leafless
/// graphs with n <= 10 drawn from kCorpusSeed.
std::vector<CorpusEntry> builtin_corpus();

/// Rejection-sampled simple connected graph with min degree >= 2 and random
/// weights in [0.5, 2).
WeightedGraph random_leafless_graph(int n, std::mt19937& rng);

Injection random_zero_sum_injection(int n, std::mt19937& rng);

/// Uniform [-1, 1) entries, one per (edge, endpoint) slot.
Eigen::VectorXd random_perturbation(int n_slots, std::mt19937& rng);

/// Unit dipole: +1 at source, -1 at sink.
Injection dipole(int n, int source, int sink);

}  // namespace minsum

#endif
