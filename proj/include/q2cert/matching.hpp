#ifndef Q2CERT_MATCHING_HPP
#define Q2CERT_MATCHING_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "q2cert/errors.hpp"
#include "q2cert/graph.hpp"

namespace q2cert {

struct MatchingResult {
  std::vector<std::pair<int, int>> matching;  // (left, right), perfect when no deficiency
  std::optional<VertexSet> deficient;         // S on the left with |N(S)| < |S|
  VertexSet deficient_neighbors = 0;          // N(S)
};

/// Augmenting-path matching between the sides of `split`, using only edges of
/// `h` that cross. Sides must have equal size.
MatchingResult perfect_matching(const Graph& h, const PartiteSplit& split);

struct BoxCertificate {
  VertexSet side_x = 0;
  VertexSet side_y = 0;
  std::vector<std::pair<int, int>> matching;  // (x, y)
};

/// Empty string when valid; otherwise the first violated invariant.
std::string box_certificate_violation(const Graph& g, const BoxCertificate& c);

/// Spanning K_{n/2} x K_2 in a simplified graph with bipartite complement.
BoxCertificate box_product_certificate(const Graph& g);

}  // namespace q2cert

#endif
