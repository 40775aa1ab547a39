#include "minsum/characterization.hpp"

#include <cmath>
#include <string>

#include "minsum/exact.hpp"
#include "minsum/walks.hpp"

namespace minsum {

namespace {

constexpr int kBuildCap = 200000;
constexpr int kDenseSolveCap = 4000;

void check_build_cap(size_t n_vertices) {
  if (n_vertices > kBuildCap) {
    throw Error(ErrorCode::InvalidDepth,
                "computation tree exceeds the vertex cap of " +
                    std::to_string(kBuildCap));
  }
}

void require_leafless(const WeightedGraph& g) {
  if (g.n_vertices() == 0 || g.min_degree() < 2) {
    throw Error(ErrorCode::HasLeaves,
                "flow computation trees require a leafless graph");
  }
}

// Attaches the children of a frontier leaf: one copy of every neighbor of
// sigma(leaf) except the vertex it was reached from.
void grow_level(const WeightedGraph& g, ComputationTree& tree,
                std::vector<std::pair<int, int>>& frontier, int level) {
  std::vector<std::pair<int, int>> next;
  for (auto [leaf, parent_orig] : frontier) {
    int v = tree.vertices[leaf].original;
    for (const IncidentEdge& ie : g.incident(v)) {
      if (ie.neighbor == parent_orig) continue;
      int child = static_cast<int>(tree.vertices.size());
      tree.vertices.push_back({ie.neighbor, level});
      const Edge& orig = g.edge(ie.edge);
      int slot = message_slot(ie.edge, ie.sign > 0 ? 0 : 1);
      if (ie.sign > 0) {  // original edge leaves v
        tree.edges.push_back({leaf, child, level, ie.edge, orig.weight, slot});
      } else {
        tree.edges.push_back({child, leaf, level, ie.edge, orig.weight, slot});
      }
      next.emplace_back(child, v);
    }
    check_build_cap(tree.vertices.size());
  }
  frontier = std::move(next);
}

}  // namespace

int ComputationTree::n_at_level(int level) const {
  int count = 0;
  for (const TreeVertex& v : vertices) {
    if (v.level == level) ++count;
  }
  return count;
}

ComputationTree build_tree_flow(const WeightedGraph& graph, int root_edge,
                                int depth) {
  require_leafless(graph);
  if (root_edge < 0 || root_edge >= graph.n_edges()) {
    throw Error(ErrorCode::InvalidParameter, "root edge out of range");
  }
  if (depth < 1) {
    throw Error(ErrorCode::InvalidDepth, "tree depth must be >= 1");
  }
  const Edge& root = graph.edge(root_edge);
  ComputationTree tree;
  tree.kind = TreeKind::FlowRootedAtEdge;
  tree.depth = depth;
  tree.vertices.push_back({root.tail, 0});
  tree.vertices.push_back({root.head, 0});
  tree.edges.push_back({0, 1, 0, root_edge, root.weight, -1});
  std::vector<std::pair<int, int>> frontier{{0, root.head}, {1, root.tail}};
  for (int level = 1; level <= depth; ++level) {
    grow_level(graph, tree, frontier, level);
  }
  return tree;
}

ComputationTree build_tree_voltage(const WeightedGraph& graph, int root_vertex,
                                   int depth) {
  if (graph.n_vertices() == 0) {
    throw Error(ErrorCode::InvalidParameter, "empty graph");
  }
  if (root_vertex < 0 || root_vertex >= graph.n_vertices()) {
    throw Error(ErrorCode::InvalidParameter, "root vertex out of range");
  }
  if (depth < 1) {
    throw Error(ErrorCode::InvalidDepth, "tree depth must be >= 1");
  }
  ComputationTree tree;
  tree.kind = TreeKind::VoltageRootedAtVertex;
  tree.depth = depth;
  tree.vertices.push_back({root_vertex, -1});
  std::vector<std::pair<int, int>> frontier;
  for (const IncidentEdge& ie : graph.incident(root_vertex)) {
    int child = static_cast<int>(tree.vertices.size());
    tree.vertices.push_back({ie.neighbor, 0});
    const Edge& orig = graph.edge(ie.edge);
    int slot = message_slot(ie.edge, ie.sign > 0 ? 0 : 1);
    if (ie.sign > 0) {
      tree.edges.push_back({0, child, 0, ie.edge, orig.weight, slot});
    } else {
      tree.edges.push_back({child, 0, 0, ie.edge, orig.weight, slot});
    }
    frontier.emplace_back(child, root_vertex);
  }
  for (int level = 1; level <= depth; ++level) {
    grow_level(graph, tree, frontier, level);
  }
  return tree;
}

Eigen::VectorXd solve_tree_flow(const ComputationTree& tree,
                                const Injection& injection,
                                const Eigen::VectorXd& perturbation) {
  if (tree.kind != TreeKind::FlowRootedAtEdge) {
    throw Error(ErrorCode::InvalidParameter, "expected a flow-rooted tree");
  }
  int nv = static_cast<int>(tree.vertices.size());
  int ne = static_cast<int>(tree.edges.size());
  if (nv > kDenseSolveCap) {
    throw Error(ErrorCode::InvalidDepth,
                "tree too large for the dense solver (" + std::to_string(nv) +
                    " vertices)");
  }
  // Constraint rows live on the non-leaf vertices only.
  std::vector<int> row(nv, -1);
  int n_rows = 0;
  for (int i = 0; i < nv; ++i) {
    if (tree.vertices[i].level < tree.depth) row[i] = n_rows++;
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_rows, ne);
  Eigen::VectorXd b(n_rows);
  for (int i = 0; i < nv; ++i) {
    if (row[i] >= 0) b(row[i]) = injection[tree.vertices[i].original];
  }
  Eigen::VectorXd R(ne), p = Eigen::VectorXd::Zero(ne);
  for (int e = 0; e < ne; ++e) {
    const TreeEdge& te = tree.edges[e];
    R(e) = 1.0 / te.weight;
    if (row[te.tail] >= 0) A(row[te.tail], e) = +1.0;
    if (row[te.head] >= 0) A(row[te.head], e) = -1.0;
    // The initial messages live on the deepest edges; sigma selects which
    // original (edge -> endpoint) parameter each one reads.
    if (te.level == tree.depth && perturbation.size() > 0) {
      p(e) = perturbation(te.parent_slot);
    }
  }
  return solve_constrained_qp(R, p, A, b);
}

Eigen::VectorXd solve_tree_voltage(const ComputationTree& tree,
                                   const Injection& injection,
                                   const Eigen::VectorXd& perturbation) {
  if (tree.kind != TreeKind::VoltageRootedAtVertex) {
    throw Error(ErrorCode::InvalidParameter, "expected a voltage-rooted tree");
  }
  int nv = static_cast<int>(tree.vertices.size());
  if (nv > kDenseSolveCap) {
    throw Error(ErrorCode::InvalidDepth,
                "tree too large for the dense solver (" + std::to_string(nv) +
                    " vertices)");
  }
  std::vector<int> row(nv, -1);
  int n_rows = 0;
  for (int i = 0; i < nv; ++i) {
    if (tree.vertices[i].level < tree.depth) row[i] = n_rows++;
  }
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n_rows, n_rows);
  Eigen::VectorXd rhs(n_rows);
  for (int i = 0; i < nv; ++i) {
    if (row[i] >= 0) rhs(row[i]) = injection[tree.vertices[i].original];
  }
  for (const TreeEdge& te : tree.edges) {
    int i = row[te.tail], j = row[te.head];
    if (i >= 0) L(i, i) += te.weight;
    if (j >= 0) L(j, j) += te.weight;
    if (i >= 0 && j >= 0) {
      L(i, j) -= te.weight;
      L(j, i) -= te.weight;
    }
    // Boundary parameters accumulate on the level-(t-1) endpoints of the
    // deepest edges and enter the linear term with a plus sign.
    if (te.level == tree.depth && perturbation.size() > 0) {
      int parent = tree.vertices[te.tail].level == tree.depth ? te.head : te.tail;
      rhs(row[parent]) -= perturbation(te.parent_slot);
    }
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(L);
  Eigen::VectorXd sol;
  if (ldlt.info() == Eigen::Success) sol = ldlt.solve(rhs);
  if (ldlt.info() != Eigen::Success ||
      (L * sol - rhs).lpNorm<Eigen::Infinity>() >
          1e-8 * std::max(rhs.lpNorm<Eigen::Infinity>(), 1.0)) {
    throw Error(ErrorCode::SingularSystem,
                "restricted tree Laplacian solve failed");
  }
  return sol;
}

namespace {

// Transition probabilities of the reduced birth-death chain obtained by
// collapsing the off-path subtrees of the computation tree.  States run
// 0..t+1; state 0 is the perturbed level-(t-1) vertex, state t the far root
// endpoint, state t+1 the absorbing leaf aggregate.  boundary_c is the
// effective conductance from state t into the absorbed boundary (it is the
// only piece that differs between the flow and voltage trees).
struct ChainResult {
  double xi_last;  // (d-1)^-(t-1) (alpha_{t+1} - p0 q1 beta_t)/(q1..q_{t-1} p_t)
};

ChainResult gambler_chain(int d, int t, double boundary_c,
                          const std::vector<double>& h) {
  std::vector<double> p(t + 1), q(t + 1);
  p[0] = 1.0 / d;
  q[0] = 1.0 - p[0];
  for (int s = 1; s <= t - 1; ++s) {
    double cs = (d - 2.0) * (d - 2.0) / (d - 1.0) * (1.0 + h[s + 1]);
    p[s] = q[s] = 1.0 / (2.0 + cs);
  }
  p[t] = boundary_c / (1.0 + boundary_c);
  q[t] = 1.0 - p[t];

  std::vector<double> alpha(t + 2), beta(t + 1);
  alpha[1] = alpha[2] = 1.0;
  for (int s = 3; s <= t + 1; ++s) {
    alpha[s] = alpha[s - 1] - p[s - 2] * q[s - 1] * alpha[s - 2];
  }
  beta[0] = 0.0;
  if (t >= 1) beta[1] = 1.0;
  if (t >= 2) beta[2] = 1.0;
  for (int s = 3; s <= t; ++s) {
    beta[s] = beta[s - 1] - p[s - 1] * q[s] * beta[s - 2];
  }
  double qprod = 1.0;
  for (int s = 1; s <= t - 1; ++s) qprod *= q[s];
  double xi = (alpha[t + 1] - p[0] * q[1] * beta[t]) / (qprod * p[t]);
  xi /= std::pow(d - 1.0, t - 1);
  return {xi};
}

}  // namespace

RegularConstants regular_constants(int d, int t) {
  if (d < 3 || t < 3) {
    throw Error(ErrorCode::InvalidParameter,
                "regular constants require d >= 3 and t >= 3");
  }
  RegularConstants rc;
  rc.d = d;
  rc.t = t;
  rc.h.assign(t + 2, 0.0);
  for (int s = 1; s <= t + 1; ++s) {
    rc.h[s] = 1.0 / (std::pow(d - 1.0, s) - 1.0);
  }
  rc.delta.assign(std::max(t - 1, 2), 0.0);
  rc.delta[0] = 1.0 / d;
  rc.delta[1] = 1.0 / (d - 1.0) + (d - 1.0);
  for (int s = 2; s < static_cast<int>(rc.delta.size()); ++s) {
    double hs2 = 1.0 / (std::pow(d - 1.0, s + 2) - 1.0);
    rc.delta[s] = (2.0 + (d - 2.0) * (d - 2.0) / (d - 1.0) * (1.0 + hs2)) *
                      rc.delta[s - 1] / (d - 1.0) -
                  rc.delta[s - 2] / ((d - 1.0) * (d - 1.0));
  }

  double c_flow = (d - 2.0) * (1.0 + rc.h[t]);
  rc.c_dt = gambler_chain(d, t, c_flow, rc.h).xi_last;
  double c_volt = (d - 2.0) * (1.0 + rc.h[t + 1]);
  double xi_volt = gambler_chain(d, t, c_volt, rc.h).xi_last;
  rc.b_dt = xi_volt * c_volt / (d - 1.0);

  // Bound parameter from the comparison dynamical system.
  double a = 1.0 + 1.0 / ((d - 1.0) * (d - 1.0));
  double c_plus = (d * (d - 1.0) * ((d - 1.0) * (d - 1.0) + 1.0) - 1.0) /
                  (d * ((d - 1.0) * (d - 1.0) - 1.0));
  rc.eps_d = a * (c_plus / (d - 1.0) * (1.0 + 1.0 / (d - 2.0)) -
                  1.0 / (d * (d - 1.0) * (d - 1.0))) -
             1.0;

  bool ok = 0.5 <= (d - 2.0) / (d - 1.0) && (d - 2.0) / (d - 1.0) <= rc.b_dt &&
            rc.b_dt <= rc.c_dt && rc.c_dt >= 1.0 &&
            rc.c_dt <= 1.0 + rc.eps_d && 1.0 + rc.eps_d < 4.0 &&
            std::isfinite(rc.b_dt) && std::isfinite(rc.c_dt);
  if (!ok) {
    throw Error(ErrorCode::InvalidParameter,
                "characterization constants violate their bounds (d = " +
                    std::to_string(d) + ", t = " + std::to_string(t) + ")");
  }
  return rc;
}

namespace {

// Ring order of a 2-regular connected graph: position -> vertex, starting at
// vertex 0 and moving toward its smaller-id neighbor.
std::vector<int> ring_order(const WeightedGraph& g) {
  int n = g.n_vertices();
  if (n < 3 || !g.is_regular() || g.regular_degree() != 2) {
    throw Error(ErrorCode::NotCycle, "graph is not a cycle");
  }
  std::vector<int> order;
  order.reserve(n);
  int cur = 0;
  int next = std::min(g.incident(0)[0].neighbor, g.incident(0)[1].neighbor);
  order.push_back(0);
  while (next != 0) {
    order.push_back(next);
    int nn = -1;
    for (const IncidentEdge& ie : g.incident(next)) {
      if (ie.neighbor != cur) nn = ie.neighbor;
    }
    cur = next;
    next = nn;
    if (static_cast<int>(order.size()) > n) {
      throw Error(ErrorCode::NotCycle, "graph is not a single cycle");
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorCode::NotCycle, "graph is not a single cycle");
  }
  return order;
}

struct RingView {
  std::vector<int> order;            // position -> vertex
  std::vector<int> position;         // vertex -> position
  std::vector<double> weight_ahead;  // weight of edge {pos, pos+1}

  int n() const { return static_cast<int>(order.size()); }
  int wrap(long long i) const {
    int nn = n();
    return static_cast<int>(((i % nn) + nn) % nn);
  }
  double inv_weight_sum(long long from, long long to) const {  // positions inclusive
    double acc = 0.0;
    for (long long k = from; k <= to; ++k) acc += 1.0 / weight_ahead[wrap(k)];
    return acc;
  }
};

RingView ring_view(const WeightedGraph& g) {
  RingView rv;
  rv.order = ring_order(g);
  int n = rv.n();
  rv.position.assign(n, -1);
  for (int i = 0; i < n; ++i) rv.position[rv.order[i]] = i;
  rv.weight_ahead.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    rv.weight_ahead[i] = g.weight_between(rv.order[i], rv.order[(i + 1) % n]);
  }
  return rv;
}

void require_cycle_time(int t) {
  if (t < 2) {
    throw Error(ErrorCode::InvalidParameter,
                "cycle characterization requires t >= 2");
  }
}

}  // namespace

double cycle_alpha(const WeightedGraph& cycle, int vertex, int t) {
  require_cycle_time(t);
  RingView rv = ring_view(cycle);
  long long v = rv.position[vertex];
  double num = rv.inv_weight_sum(v, v + t);
  double den = rv.inv_weight_sum(v - t - 1, v + t);
  return num / den;
}

double cycle_beta(const WeightedGraph& cycle, int edge, int t) {
  require_cycle_time(t);
  RingView rv = ring_view(cycle);
  const Edge& e = cycle.edge(edge);
  // Identify the ring position v with {rho(v), rho(v+1)} = {tail, head}.
  long long v = rv.position[e.tail];
  if (rv.order[rv.wrap(v + 1)] != e.head) {
    v = rv.position[e.head];
  }
  return 1.0 / rv.inv_weight_sum(v - t, v + t);
}

double error_characterization_cycle_voltage(const WeightedGraph& cycle,
                                            const Injection& injection,
                                            int vertex, int t) {
  require_cycle_time(t);
  RingView rv = ring_view(cycle);
  ExactSolution exact = solve_exact(cycle, injection);
  long long v = rv.position[vertex];
  double alpha = cycle_alpha(cycle, vertex, t);
  double left = exact.voltages(rv.order[rv.wrap(v - t - 1)]);
  double right = exact.voltages(rv.order[rv.wrap(v + t + 1)]);
  return alpha * left + (1.0 - alpha) * right;
}

double error_characterization_cycle_flow(const WeightedGraph& cycle,
                                         const Injection& injection, int edge,
                                         int t) {
  require_cycle_time(t);
  RingView rv = ring_view(cycle);
  ExactSolution exact = solve_exact(cycle, injection);
  const Edge& e = cycle.edge(edge);
  long long v = rv.position[e.tail];
  int sign = +1;  // incidence sign of the ring-forward endpoint rho(v)
  if (rv.order[rv.wrap(v + 1)] != e.head) {
    v = rv.position[e.head];
    sign = -1;
  }
  double beta = 1.0 / rv.inv_weight_sum(v - t, v + t);
  double diff = exact.voltages(rv.order[rv.wrap(v - t)]) -
                exact.voltages(rv.order[rv.wrap(v + t + 1)]);
  return sign * beta * diff;
}

namespace {

void require_regular_characterization(const WeightedGraph& g, int t) {
  if (g.regular_degree() < 3) {
    throw Error(ErrorCode::NotRegular,
                "regular characterization requires degree >= 3");
  }
  if (!g.has_equal_weights()) {
    throw Error(ErrorCode::UnequalWeights,
                "regular characterization requires equal weights");
  }
  if (t < 3) {
    throw Error(ErrorCode::InvalidParameter,
                "regular characterization requires t >= 3");
  }
}

}  // namespace

Eigen::VectorXd error_characterization_regular_voltage(
    const WeightedGraph& graph, const Injection& injection, int t) {
  require_regular_characterization(graph, t);
  int d = graph.regular_degree();
  ExactSolution exact = solve_exact(graph, injection);
  RegularConstants rc = regular_constants(d, t);
  WalkDistribution dist = nb_distribution(graph, t + 1);
  return (dist.P * exact.voltages) / rc.b_dt;
}

Eigen::VectorXd error_characterization_regular_flow(const WeightedGraph& graph,
                                                    const Injection& injection,
                                                    int t) {
  require_regular_characterization(graph, t);
  int d = graph.regular_degree();
  double omega = graph.equal_weight();
  ExactSolution exact = solve_exact(graph, injection);
  RegularConstants rc = regular_constants(d, t);
  WalkDistribution dist = nb_distribution(graph, t);
  Eigen::VectorXd pred(graph.n_edges());
  double scale = omega / rc.c_dt * (d - 1.0) / d;
  for (int e = 0; e < graph.n_edges(); ++e) {
    double lhs = dist.P_excl.row(message_slot(e, 0)).dot(exact.voltages);
    double rhs = dist.P_excl.row(message_slot(e, 1)).dot(exact.voltages);
    pred(e) = scale * (lhs - rhs);
  }
  return pred;
}

}  // namespace minsum
