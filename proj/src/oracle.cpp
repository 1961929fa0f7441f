#include "q2cert/oracle.hpp"

#include "q2cert/errors.hpp"
#include "q2cert/optimize.hpp"

namespace q2cert {

namespace {

/// Adjacency plus a widely spaced diagonal: Gershgorin discs are disjoint,
/// so all eigenvalues are simple.
Realization spaced_diagonal(const Graph& g) {
  const int n = g.order();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  for (int i = 0; i < n; ++i) a(i, i) = 3.0 * n * i;
  return make_floating(a, g, Construction::Diagonal);
}

}  // namespace

QBounds q_bounds(const Graph& g, int restarts, std::uint64_t seed) {
  const int n = g.order();
  if (n > 10) throw HypothesisError("q_bounds: order above 10");
  if (!g.connected()) throw HypothesisError("q_bounds: graph must be connected");
  QBounds b;
  if (g.size() == 0) {
    b.lower = b.upper = 1;
    b.lower_reason = "empty";
    b.upper_reason = "trivial";
    b.upper_witness = make_floating(Eigen::MatrixXd::Zero(n, n), g, Construction::Diagonal);
    return b;
  }
  b.lower = 2;
  b.lower_reason = "edges";
  if (const auto p2 = unique_p2_violations(g); !p2.empty()) {
    b.lower = 3;
    b.lower_reason = "unique-P2";
    b.lower_witness = p2.front();
  }
  SearchOptions so;
  so.restarts = restarts;
  so.seed = seed;
  if (b.lower <= 2) {
    if (auto r = generic_q2_search(g, so); r.realization) {
      b.upper = 2;
      b.upper_reason = "search-2";
      b.upper_witness = std::move(r.realization);
      return b;
    }
  }
  if (auto r = three_eigenvalue_search(g, so); r.realization) {
    b.upper = verify_realization(*r.realization, false).spectrum.distinct_count;
    b.upper_reason = b.upper == 2 ? "search-2" : "search-3";
    b.upper_witness = std::move(r.realization);
    return b;
  }
  b.upper = n;
  b.upper_reason = "trivial";
  b.upper_witness = spaced_diagonal(g);
  return b;
}

std::vector<Graph> enumerate_dense_graphs(int n, int max_complement_edges) {
  if (n > 8) throw HypothesisError("enumerate_dense_graphs: order above 8");
  if (n < 1) throw HypothesisError("enumerate_dense_graphs: order below 1");
  std::vector<Graph> out;
  for (const auto& level : nonisomorphic_graphs(n, max_complement_edges))
    for (const Graph& h : level) out.push_back(complement(h));
  return out;
}

}  // namespace q2cert
