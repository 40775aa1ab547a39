#include "minsum/corpus.hpp"

#include <algorithm>
#include <set>

namespace minsum {

double uniform_double(std::mt19937& rng, double lo, double hi) {
  // 53 random bits -> [0, 1)
  std::uint64_t hi26 = rng() >> 6;  // 26 bits
  std::uint64_t lo27 = rng() >> 5;  // 27 bits
  double u = (static_cast<double>(hi26) * 134217728.0 + static_cast<double>(lo27)) /
             9007199254740992.0;
  return lo + u * (hi - lo);
}

WeightedGraph random_leafless_graph(int n, std::mt19937& rng) {
  if (n < 4) {
    throw Error(ErrorCode::InvalidParameter, "need n >= 4");
  }
  // Candidate multigraphs come from a random pairing of degree-3 stubs (one
  // extra stub on vertex 0 when 3n is odd); samples with self-loops,
  // duplicate edges or a disconnected result are rejected.
  std::vector<int> stubs;
  for (int v = 0; v < n; ++v) {
    for (int k = 0; k < 3; ++k) stubs.push_back(v);
  }
  if (stubs.size() % 2 == 1) stubs.push_back(0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (size_t i = stubs.size() - 1; i > 0; --i) {
      size_t j = rng() % (i + 1);
      std::swap(stubs[i], stubs[j]);
    }
    std::vector<Edge> edges;
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
      edges.push_back(
          {stubs[i], stubs[i + 1], uniform_double(rng, 0.5, 2.0)});
    }
    try {
      WeightedGraph g = WeightedGraph::build(edges);
      if (g.n_vertices() == n && g.min_degree() >= 2) return g;
    } catch (const Error&) {
      // self-loop, duplicate pair or disconnected sample; try again
    }
  }
  throw Error(ErrorCode::NotConverged, "rejection sampling failed");
}

Injection random_zero_sum_injection(int n, std::mt19937& rng) {
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b(i) = uniform_double(rng, -1.0, 1.0);
  b.array() -= b.mean();
  return Injection(b);
}

Eigen::VectorXd random_perturbation(int n_slots, std::mt19937& rng) {
  Eigen::VectorXd p(n_slots);
  for (int i = 0; i < n_slots; ++i) p(i) = uniform_double(rng, -1.0, 1.0);
  return p;
}

Injection dipole(int n, int source, int sink) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(source) = 1.0;
  b(sink) = -1.0;
  return Injection(b);
}

std::vector<CorpusEntry> builtin_corpus() {
  std::vector<CorpusEntry> corpus;
  corpus.push_back({"triangle", make_cycle(3)});
  corpus.push_back({"K4", make_complete(4)});
  corpus.push_back({"K5", make_complete(5)});
  corpus.push_back({"petersen", make_petersen()});
  corpus.push_back({"cycle5", make_cycle(5)});
  corpus.push_back({"cycle7", make_cycle(7)});
  corpus.push_back({"cycle9", make_cycle(9)});
  corpus.push_back({"cycle12", make_cycle(12)});
  corpus.push_back({"cc2_10", make_k_connected_cycle(10, 2)});
  corpus.push_back({"cc2_20", make_k_connected_cycle(20, 2)});
  corpus.push_back({"torus3x3", make_torus({3, 3})});
  corpus.push_back({"torus4x4", make_torus({4, 4})});
  std::mt19937 rng(kCorpusSeed);
  for (int i = 0; i < 3; ++i) {
    int n = 6 + static_cast<int>(rng() % 5);  // 6..10
    corpus.push_back({"random" + std::to_string(n) + "_" + std::to_string(i),
                      random_leafless_graph(n, rng)});
  }
  return corpus;
}

}  // namespace minsum
