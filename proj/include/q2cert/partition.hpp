#ifndef Q2CERT_PARTITION_HPP
#define Q2CERT_PARTITION_HPP

#include <vector>

#include "q2cert/errors.hpp"
#include "q2cert/graph.hpp"

namespace q2cert {

/// Index sets are 0-based positions into the input sequence.
struct BalancedPartition {
  std::vector<int> a, b;
  int sum_a = 0, sum_b = 0;
  int diff() const { return sum_a > sum_b ? sum_a - sum_b : sum_b - sum_a; }
};

/// Splits a non-increasing sequence of positive integers with
/// sum(t_i - 1) <= n/2 - 1 into two parts whose sums differ by at most one,
/// by the induction on t_1 (strip one from every part larger than two, defer
/// y ones, recurse, then place the deferred ones).
BalancedPartition balance_partition(const std::vector<int>& t);

struct ExhaustivePartition {
  BalancedPartition best;  // minimal |sum_a - sum_b|
  bool feasible;           // best.diff() <= 1
};

/// Exhaustive subset search; at most 24 parts.
ExhaustivePartition brute_force_partition(const std::vector<int>& t);

struct JoinDecomposition {
  enum class Route { SameOrder, OrderDiff2, OddViaJdup };
  Route route = Route::SameOrder;
  VertexSet part_a = 0;  // for OddViaJdup: parts of g - removed
  VertexSet part_b = 0;
  int removed = -1;  // w
  int twin = -1;     // z, with g = jdup(g - w, z)
};

/// Writes g (or g - w for odd order) as the join of two connected induced
/// subgraphs. Requires e(complement) <= floor(n/2) - 1 and n >= 3.
JoinDecomposition join_decomposition(const Graph& g);

}  // namespace q2cert

#endif
