#ifndef Q2CERT_ORACLE_HPP
#define Q2CERT_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "q2cert/graph.hpp"
#include "q2cert/realization.hpp"

namespace q2cert {

struct QBounds {
  int lower = 1;
  std::string lower_reason;  // "empty", "edges" or "unique-P2"
  std::optional<PathTriple> lower_witness;
  int upper = 0;
  std::string upper_reason;  // "search-2", "search-3" or "trivial"
  std::optional<Realization> upper_witness;

  bool conclusive() const { return lower == upper; }
};

/// Structural lower bound and search-based upper bound for q(g). A failed
/// search only widens the interval.
QBounds q_bounds(const Graph& g, int restarts = 8, std::uint64_t seed = 1);

/// One representative per isomorphism class of graphs on n <= 8 vertices
/// whose complement has at most max_complement_edges edges, in increasing
/// complement size.
std::vector<Graph> enumerate_dense_graphs(int n, int max_complement_edges);

}  // namespace q2cert

#endif
