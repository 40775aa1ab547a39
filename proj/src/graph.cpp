#include "minsum/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace minsum {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::HasLeaves: return "HasLeaves";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::NonStochasticMatrix: return "NonStochasticMatrix";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::UnequalWeights: return "UnequalWeights";
    case ErrorCode::TooEarly: return "TooEarly";
    case ErrorCode::NotCycle: return "NotCycle";
    case ErrorCode::VertexInRemovedSet: return "VertexInRemovedSet";
    case ErrorCode::InvalidDepth: return "InvalidDepth";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

WeightedGraph WeightedGraph::build(const std::vector<Edge>& edges) {
  WeightedGraph g;
  int n = 0;
  for (const Edge& e : edges) {
    if (e.tail < 0 || e.head < 0) {
      throw Error(ErrorCode::InvalidParameter,
                  "negative vertex id on edge (" + std::to_string(e.tail) +
                      ", " + std::to_string(e.head) + ")");
    }
    n = std::max(n, std::max(e.tail, e.head) + 1);
  }
  g.n_ = n;
  g.edges_ = edges;
  g.adj_.assign(n, {});
  g.weighted_degree_.assign(n, 0.0);

  std::set<std::pair<int, int>> seen;
  for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
    const Edge& e = edges[ei];
    if (e.tail == e.head) {
      throw Error(ErrorCode::SelfLoop,
                  "self-loop at vertex " + std::to_string(e.tail));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NonPositiveWeight,
                  "non-positive weight on edge (" + std::to_string(e.tail) +
                      ", " + std::to_string(e.head) + ")");
    }
    auto key = std::minmax(e.tail, e.head);
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "duplicate edge {" + std::to_string(key.first) + ", " +
                      std::to_string(key.second) + "}");
    }
    g.adj_[e.tail].push_back({ei, e.head, +1});
    g.adj_[e.head].push_back({ei, e.tail, -1});
    g.weighted_degree_[e.tail] += e.weight;
    g.weighted_degree_[e.head] += e.weight;
  }

  if (n > 0) {
    // Vertex ids must cover 0..n-1; a vertex with no incident edge is either
    // a gap in the numbering or an isolated vertex, both rejected.
    std::vector<char> visited(n, 0);
    std::deque<int> queue{0};
    visited[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const IncidentEdge& ie : g.adj_[v]) {
        if (!visited[ie.neighbor]) {
          visited[ie.neighbor] = 1;
          ++reached;
          queue.push_back(ie.neighbor);
        }
      }
    }
    if (reached != n) {
      int missing = 0;
      while (visited[missing]) ++missing;
      throw Error(ErrorCode::Disconnected,
                  "graph is disconnected: vertex " + std::to_string(missing) +
                      " is not reachable from vertex 0");
    }
  }
  return g;
}

int WeightedGraph::side_of(int e, int v) const {
  if (v == edges_[e].tail) return 0;
  if (v == edges_[e].head) return 1;
  throw Error(ErrorCode::InvalidParameter,
              "vertex " + std::to_string(v) + " is not an endpoint of edge " +
                  std::to_string(e));
}

bool WeightedGraph::has_edge(int v, int w) const {
  if (v < 0 || v >= n_ || w < 0 || w >= n_) return false;
  const auto& a = adj_[v].size() <= adj_[w].size() ? adj_[v] : adj_[w];
  int other = adj_[v].size() <= adj_[w].size() ? w : v;
  for (const IncidentEdge& ie : a) {
    if (ie.neighbor == other) return true;
  }
  return false;
}

double WeightedGraph::weight_between(int v, int w) const {
  if (v < 0 || v >= n_ || w < 0 || w >= n_) return 0.0;
  for (const IncidentEdge& ie : adj_[v]) {
    if (ie.neighbor == w) return edges_[ie.edge].weight;
  }
  return 0.0;
}

int WeightedGraph::min_degree() const {
  int md = n_ == 0 ? 0 : degree(0);
  for (int v = 1; v < n_; ++v) md = std::min(md, degree(v));
  return md;
}

bool WeightedGraph::is_regular() const {
  for (int v = 1; v < n_; ++v) {
    if (degree(v) != degree(0)) return false;
  }
  return n_ > 0;
}

int WeightedGraph::regular_degree() const {
  if (!is_regular()) {
    throw Error(ErrorCode::NotRegular, "graph is not regular");
  }
  return degree(0);
}

bool WeightedGraph::has_equal_weights(double rel_tol) const {
  if (edges_.empty()) return true;
  double w0 = edges_[0].weight;
  for (const Edge& e : edges_) {
    if (std::abs(e.weight - w0) > rel_tol * std::abs(w0)) return false;
  }
  return true;
}

double WeightedGraph::equal_weight() const {
  if (!has_equal_weights()) {
    throw Error(ErrorCode::UnequalWeights, "edge weights are not all equal");
  }
  return edges_.empty() ? 0.0 : edges_[0].weight;
}

int WeightedGraph::diameter() const {
  int best = 0;
  std::vector<int> dist(n_);
  for (int s = 0; s < n_; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const IncidentEdge& ie : adj_[v]) {
        if (dist[ie.neighbor] < 0) {
          dist[ie.neighbor] = dist[v] + 1;
          queue.push_back(ie.neighbor);
        }
      }
    }
    best = std::max(best, *std::max_element(dist.begin(), dist.end()));
  }
  return best;
}

namespace {
void require_dense(int n) {
  if (n > WeightedGraph::kDenseCap) {
    throw Error(ErrorCode::InvalidParameter,
                "dense matrices are only materialized for n <= " +
                    std::to_string(WeightedGraph::kDenseCap) +
                    " (n = " + std::to_string(n) + "); use triplets instead");
  }
}
}  // namespace

Eigen::MatrixXd WeightedGraph::laplacian() const {
  require_dense(n_);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    L(e.tail, e.tail) += e.weight;
    L(e.head, e.head) += e.weight;
    L(e.tail, e.head) -= e.weight;
    L(e.head, e.tail) -= e.weight;
  }
  return L;
}

Eigen::MatrixXd WeightedGraph::adjacency() const {
  require_dense(n_);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    W(e.tail, e.head) = e.weight;
    W(e.head, e.tail) = e.weight;
  }
  return W;
}

Eigen::MatrixXd WeightedGraph::incidence() const {
  require_dense(n_);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_, n_edges());
  for (int ei = 0; ei < n_edges(); ++ei) {
    A(edges_[ei].tail, ei) = +1.0;
    A(edges_[ei].head, ei) = -1.0;
  }
  return A;
}

Eigen::VectorXd WeightedGraph::resistances() const {
  Eigen::VectorXd r(n_edges());
  for (int ei = 0; ei < n_edges(); ++ei) r(ei) = 1.0 / edges_[ei].weight;
  return r;
}

Eigen::VectorXd WeightedGraph::weighted_degrees() const {
  return Eigen::Map<const Eigen::VectorXd>(weighted_degree_.data(), n_);
}

std::vector<std::tuple<int, int, double>> WeightedGraph::laplacian_triplets()
    const {
  std::vector<std::tuple<int, int, double>> t;
  t.reserve(n_ + 2 * edges_.size());
  for (int v = 0; v < n_; ++v) t.emplace_back(v, v, weighted_degree_[v]);
  for (const Edge& e : edges_) {
    t.emplace_back(e.tail, e.head, -e.weight);
    t.emplace_back(e.head, e.tail, -e.weight);
  }
  return t;
}

Eigen::VectorXd WeightedGraph::apply_laplacian(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = weighted_degrees().cwiseProduct(x);
  for (const Edge& e : edges_) {
    y(e.tail) -= e.weight * x(e.head);
    y(e.head) -= e.weight * x(e.tail);
  }
  return y;
}

Injection::Injection(Eigen::VectorXd b) : b_(std::move(b)) {
  double sum = b_.sum();
  double scale = b_.lpNorm<1>();
  if (std::abs(sum) > 1e-12 * std::max(scale, 1.0)) {
    throw Error(ErrorCode::InvalidParameter,
                "injection does not sum to zero (sum = " +
                    std::to_string(sum) + ")");
  }
}

WeightedGraph build_graph(const std::vector<Edge>& edges) {
  return WeightedGraph::build(edges);
}

WeightedGraph make_cycle(int n, double weight) {
  if (n < 3) {
    throw Error(ErrorCode::InvalidParameter,
                "cycle requires n >= 3 (n = " + std::to_string(n) + ")");
  }
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, weight});
  return WeightedGraph::build(edges);
}

WeightedGraph make_k_connected_cycle(int n, int k, double weight) {
  if (k < 1 || 2 * k >= n) {
    throw Error(ErrorCode::InvalidParameter,
                "k-connected cycle requires 1 <= k and 2k < n (n = " +
                    std::to_string(n) + ", k = " + std::to_string(k) + ")");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n) * k);
  for (int j = 1; j <= k; ++j) {
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + j) % n, weight});
  }
  return WeightedGraph::build(edges);
}

WeightedGraph make_torus(const std::vector<int>& sides, double weight) {
  if (sides.empty()) {
    throw Error(ErrorCode::InvalidParameter, "torus requires at least 1 dimension");
  }
  long long n = 1;
  for (int side : sides) {
    if (side < 3) {
      throw Error(ErrorCode::InvalidParameter,
                  "each torus side must be >= 3 (got " + std::to_string(side) +
                      ")");
    }
    n *= side;
  }
  int dims = static_cast<int>(sides.size());
  // Mixed-radix vertex index, first coordinate most significant.
  std::vector<long long> stride(dims, 1);
  for (int d = dims - 2; d >= 0; --d) stride[d] = stride[d + 1] * sides[d + 1];
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n) * dims);
  for (int d = 0; d < dims; ++d) {
    for (long long v = 0; v < n; ++v) {
      long long coord = (v / stride[d]) % sides[d];
      long long up = v + ((coord + 1 == sides[d]) ? -(sides[d] - 1) * stride[d]
                                                  : stride[d]);
      edges.push_back({static_cast<int>(v), static_cast<int>(up), weight});
    }
  }
  return WeightedGraph::build(edges);
}

WeightedGraph make_petersen(double weight) {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5, weight});
  for (int i = 0; i < 5; ++i) edges.push_back({i, i + 5, weight});
  for (int i = 0; i < 5; ++i) edges.push_back({5 + i, 5 + (i + 2) % 5, weight});
  return WeightedGraph::build(edges);
}

WeightedGraph make_complete(int n, double weight) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidParameter,
                "complete graph requires n >= 2 (n = " + std::to_string(n) + ")");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, weight});
  }
  return WeightedGraph::build(edges);
}

LeafStripResult leaf_strip(const WeightedGraph& graph, const Injection& b) {
  int n = graph.n_vertices();
  std::vector<int> degree(n);
  std::vector<char> vertex_alive(n, 1), edge_alive(graph.n_edges(), 1);
  Eigen::VectorXd inj = b.values();
  for (int v = 0; v < n; ++v) degree[v] = graph.degree(v);

  LeafStripResult result;
  std::deque<int> leaves;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push_back(v);
  }
  int alive = n;
  while (!leaves.empty()) {
    int w = leaves.front();
    leaves.pop_front();
    if (!vertex_alive[w] || degree[w] != 1) continue;
    int e = -1, v = -1;
    for (const IncidentEdge& ie : graph.incident(w)) {
      if (edge_alive[ie.edge]) {
        e = ie.edge;
        v = ie.neighbor;
        break;
      }
    }
    // Kirchhoff at the leaf pins the edge flow: A_we x_e = b_w.
    double flow = graph.incidence_sign(e, w) * inj(w);
    result.fixed_flows.emplace_back(e, flow);
    inj(v) += inj(w);
    inj(w) = 0.0;
    edge_alive[e] = 0;
    vertex_alive[w] = 0;
    --alive;
    if (--degree[v] == 1) leaves.push_back(v);
    if (degree[v] == 0) {
      // Last remaining vertex of a tree; its folded injection must vanish.
      vertex_alive[v] = 0;
      --alive;
    }
  }

  result.original_to_core.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (vertex_alive[v]) {
      result.original_to_core[v] = static_cast<int>(result.core_to_original.size());
      result.core_to_original.push_back(v);
    }
  }
  std::vector<Edge> core_edges;
  for (int e = 0; e < graph.n_edges(); ++e) {
    if (!edge_alive[e]) continue;
    const Edge& orig = graph.edge(e);
    core_edges.push_back({result.original_to_core[orig.tail],
                          result.original_to_core[orig.head], orig.weight});
    result.core_edge_to_original.push_back(e);
  }
  result.core = WeightedGraph::build(core_edges);
  Eigen::VectorXd core_b(alive);
  for (int i = 0; i < alive; ++i) core_b(i) = inj(result.core_to_original[i]);
  result.core_injection = Injection(core_b);
  return result;
}

namespace {
bool parse_line(const std::string& line, std::vector<std::string>& fields) {
  fields.clear();
  std::string token;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) {
        fields.push_back(token);
        token.clear();
      }
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) fields.push_back(token);
  return !fields.empty();
}
}  // namespace

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open graph file: " + path);
  }
  std::vector<Edge> edges;
  std::string line;
  std::vector<std::string> fields;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!parse_line(line, fields)) continue;
    if (fields.size() != 3) {
      throw Error(ErrorCode::IoError,
                  path + ":" + std::to_string(lineno) +
                      ": expected 'tail head weight', got " +
                      std::to_string(fields.size()) + " fields");
    }
    try {
      edges.push_back({std::stoi(fields[0]), std::stoi(fields[1]),
                       std::stod(fields[2])});
    } catch (const std::exception&) {
      throw Error(ErrorCode::IoError,
                  path + ":" + std::to_string(lineno) + ": malformed edge line");
    }
  }
  return WeightedGraph::build(edges);
}

Injection read_injection_file(const std::string& path, int n_vertices) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open injection file: " + path);
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n_vertices);
  std::string line;
  std::vector<std::string> fields;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!parse_line(line, fields)) continue;
    if (fields.size() != 2) {
      throw Error(ErrorCode::IoError,
                  path + ":" + std::to_string(lineno) +
                      ": expected 'vertex value'");
    }
    try {
      int v = std::stoi(fields[0]);
      if (v < 0 || v >= n_vertices) {
        throw Error(ErrorCode::IoError,
                    path + ":" + std::to_string(lineno) + ": vertex " +
                        std::to_string(v) + " out of range");
      }
      b(v) = std::stod(fields[1]);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(ErrorCode::IoError,
                  path + ":" + std::to_string(lineno) + ": malformed line");
    }
  }
  return Injection(b);
}

}  // namespace minsum
