#include "q2cert/matching.hpp"

#include <limits>

#include "q2cert/structure.hpp"

namespace q2cert {

MatchingResult perfect_matching(const Graph& h, const PartiteSplit& split) {
  if (popcount(split.left) != popcount(split.right)) throw std::invalid_argument("matching sides differ in size");
  const int n = h.order();
  std::vector<int> mate(n, -1);
  VertexSet seen_right = 0, seen_left = 0;
  auto augment = [&](auto&& self, int u) -> bool {
    seen_left |= bit(u);
    for (int r : members(h.neighbors(u) & split.right & ~seen_right)) {
      seen_right |= bit(r);
      if (mate[r] < 0 || self(self, mate[r])) {
        mate[r] = u;
        mate[u] = r;
        return true;
      }
    }
    return false;
  };
  MatchingResult out;
  for (int u : members(split.left)) {
    seen_left = seen_right = 0;
    if (!augment(augment, u)) {
      // Everything reached from u is matched, so N(S) = reached right side.
      out.deficient = seen_left;
      out.deficient_neighbors = seen_right;
      return out;
    }
  }
  for (int u : members(split.left)) out.matching.emplace_back(u, mate[u]);
  return out;
}

std::string box_certificate_violation(const Graph& g, const BoxCertificate& c) {
  const int n = g.order();
  if (n % 2 != 0) return "odd order";
  if ((c.side_x & c.side_y) || (c.side_x | c.side_y) != g.all()) return "sides do not partition the vertices";
  if (popcount(c.side_x) != n / 2) return "sides are unbalanced";
  for (VertexSet side : {c.side_x, c.side_y}) {
    for (int v : members(side)) {
      if ((g.closed_neighbors(v) & side) != side) return "side is not a clique at vertex " + std::to_string(v);
    }
  }
  if (static_cast<int>(c.matching.size()) != n / 2) return "matching is not perfect";
  VertexSet used = 0;
  for (auto [x, y] : c.matching) {
    if (!((c.side_x >> x) & 1U) || !((c.side_y >> y) & 1U)) return "matching edge does not cross";
    if (!g.adjacent(x, y)) return "matching edge is not an edge";
    if ((used & (bit(x) | bit(y)))) return "matching edges overlap";
    used |= bit(x) | bit(y);
  }
  return {};
}

BoxCertificate box_product_certificate(const Graph& g) {
  const int n = g.order();
  if (n < 4 || n % 2 != 0) throw HypothesisError("order must be even and at least 4");
  const Graph gbar = complement(g);
  const auto first = bipartition(gbar);
  if (std::holds_alternative<OddCycle>(first)) throw HypothesisError("complement is not bipartite");
  const int e = gbar.size();
  if (!(e <= n - 2 || (e == n - 1 && has_cycle(gbar)))) {
    throw HypothesisError("complement edge bound: need e <= n-2, or e = n-1 with a cycle");
  }
  if (!is_simplified(g)) throw HypothesisError("not simplified: complement has non-isolated twins");

  std::vector<PartiteSplit> splits{std::get<PartiteSplit>(first)};
  for (const auto& s : all_bipartitions(gbar, std::numeric_limits<std::size_t>::max())) splits.push_back(s);
  std::optional<MatchingResult> failure;
  for (const auto& s : splits) {
    if (popcount(s.left) != n / 2) continue;
    auto m = perfect_matching(g, s);
    if (!m.deficient) {
      BoxCertificate c{s.left, s.right, std::move(m.matching)};
      const std::string bad = box_certificate_violation(g, c);
      if (!bad.empty()) throw LemmaContradiction("box certificate invalid: " + bad);
      return c;
    }
    if (!failure) failure = std::move(m);
  }
  std::string detail = "no balanced bipartition";
  if (failure) {
    detail = "Hall violator S = {";
    for (int v : members(*failure->deficient)) detail += std::to_string(v) + " ";
    detail += "}, N(S) = {";
    for (int v : members(failure->deficient_neighbors)) detail += std::to_string(v) + " ";
    detail += "}";
  }
  throw LemmaContradiction("no spanning box product found: " + detail);
}

}  // namespace q2cert
