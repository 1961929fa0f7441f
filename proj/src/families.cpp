#include "q2cert/families.hpp"

#include <algorithm>
#include <bit>
#include <optional>

namespace q2cert {

std::string to_string(const SpecialFamily& f) {
  using K = SpecialFamily::Kind;
  const std::string ab = "(" + std::to_string(f.a) + "," + std::to_string(f.b) + ")";
  const std::string a = "(" + std::to_string(f.a) + ")";
  switch (f.kind) {
    case K::None: return "None";
    case K::Complete: return "Complete";
    case K::Empty: return "Empty";
    case K::C4: return "C4";
    case K::Path: return "Path" + a;
    case K::DoubleStar: return "DoubleStar" + ab;
    case K::WStar: return "WStar" + a;
    case K::WStarPlus: return "WStarPlus" + a;
    case K::SabUnionK1: return "SabUnionK1" + ab;
    case K::WPlusUnionK1: return "WPlusUnionK1" + a;
    case K::BoxProduct: return "BoxProduct" + a;
  }
  return "None";
}

Graph double_star(int a, int b) {
  Graph g(a + b + 2);
  g.add_edge(0, 1);
  for (int i = 0; i < a; ++i) g.add_edge(0, 2 + i);
  for (int i = 0; i < b; ++i) g.add_edge(1, 2 + a + i);
  return g;
}

Graph w_star(int k) {
  Graph g(2 * k + 1);
  for (int i = 1; i <= k; ++i) {
    g.add_edge(0, i);
    g.add_edge(i, i + k);
  }
  return g;
}

Graph w_star_plus(int k) {
  Graph g(2 * k + 2);
  for (int i = 1; i <= k; ++i) {
    g.add_edge(0, i);
    g.add_edge(i, i + k);
  }
  g.add_edge(0, 2 * k + 1);
  return g;
}

Graph box_product(int s) {
  Graph g(2 * s);
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      g.add_edge(i, j);
      g.add_edge(s + i, s + j);
    }
    g.add_edge(i, s + i);
  }
  return g;
}

Graph with_isolated(const Graph& g) { return disjoint_union(g, Graph(1)); }

namespace {

bool is_tree(const Graph& g) { return g.order() >= 1 && g.size() == g.order() - 1 && g.connected(); }

std::optional<std::pair<int, int>> double_star_params(const Graph& g) {
  if (g.order() < 2 || !is_tree(g)) return std::nullopt;
  std::vector<int> inner;
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) > 1) inner.push_back(v);
  }
  if (inner.empty()) return std::pair{0, 0};  // K2
  if (inner.size() == 1) return std::pair{g.degree(inner[0]) - 1, 0};
  if (inner.size() == 2 && g.adjacent(inner[0], inner[1])) {
    const int a = g.degree(inner[0]) - 1;
    const int b = g.degree(inner[1]) - 1;
    return std::pair{std::max(a, b), std::min(a, b)};
  }
  return std::nullopt;
}

/// Center of a subdivided star: k neighbors of degree 2 whose far ends are
/// leaves, plus `extra_leaves` neighbors that are leaves themselves.
std::optional<int> subdivided_star_k(const Graph& g, int extra_leaves) {
  if (!is_tree(g)) return std::nullopt;
  const int n = g.order();
  if ((n - 1 - extra_leaves) % 2 != 0) return std::nullopt;
  const int k = (n - 1 - extra_leaves) / 2;
  if (k < 2) return std::nullopt;
  for (int c = 0; c < n; ++c) {
    if (g.degree(c) != k + extra_leaves) continue;
    int middles = 0, leaves = 0;
    bool ok = true;
    for (int w : members(g.neighbors(c))) {
      if (g.degree(w) == 1) {
        ++leaves;
      } else if (g.degree(w) == 2) {
        const int far = std::countr_zero(g.neighbors(w) & ~bit(c));
        ok = ok && g.degree(far) == 1;
        ++middles;
      } else {
        ok = false;
      }
    }
    if (ok && middles == k && leaves == extra_leaves) return k;
  }
  return std::nullopt;
}

/// The non-isolated part when exactly one vertex is isolated.
std::optional<Graph> drop_single_isolated(const Graph& g) {
  int isolated = -1, count = 0;
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) isolated = v, ++count;
  }
  if (count != 1) return std::nullopt;
  return remove_vertex(g, isolated);
}

std::optional<int> box_product_s(const Graph& g) {
  const int n = g.order();
  if (n < 4 || n % 2 != 0) return std::nullopt;
  const int s = n / 2;
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) != s) return std::nullopt;
  }
  for (int partner : members(g.neighbors(0))) {
    const VertexSet x = g.closed_neighbors(0) & ~bit(partner);
    const VertexSet y = g.all() & ~x;
    bool ok = true;
    for (int u : members(x)) {
      ok = ok && (g.closed_neighbors(u) & x) == x && popcount(g.neighbors(u) & y) == 1;
    }
    for (int u : members(y)) {
      ok = ok && (g.closed_neighbors(u) & y) == y && popcount(g.neighbors(u) & x) == 1;
    }
    if (ok) return s;
  }
  return std::nullopt;
}

}  // namespace

SpecialFamily recognize(const Graph& g) {
  using K = SpecialFamily::Kind;
  const int n = g.order();
  if (n == 4 && g.size() == 4 && g.connected() && g.degree(0) == 2 && g.degree(1) == 2 &&
      g.degree(2) == 2 && g.degree(3) == 2) {
    return {K::C4, 0, 0};
  }
  if (auto rest = drop_single_isolated(g)) {
    if (auto k = subdivided_star_k(*rest, 1)) return {K::WPlusUnionK1, *k, 0};
    if (auto ab = double_star_params(*rest)) return {K::SabUnionK1, ab->first, ab->second};
  }
  if (auto k = subdivided_star_k(g, 1)) return {K::WStarPlus, *k, 0};
  if (auto k = subdivided_star_k(g, 0)) return {K::WStar, *k, 0};
  if (auto ab = double_star_params(g)) return {K::DoubleStar, ab->first, ab->second};
  if (is_tree(g)) {
    bool path = true;
    for (int v = 0; v < n; ++v) path = path && g.degree(v) <= 2;
    if (path) return {K::Path, n, 0};
  }
  if (auto s = box_product_s(g)) return {K::BoxProduct, *s, 0};
  if (n >= 1 && g.size() == n * (n - 1) / 2) return {K::Complete, 0, 0};
  if (g.size() == 0) return {K::Empty, 0, 0};
  return {};
}

}  // namespace q2cert
