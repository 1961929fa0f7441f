#include "q2cert/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <numeric>
#include <queue>

namespace q2cert {

int popcount(VertexSet s) { return std::popcount(s); }

std::vector<int> members(VertexSet s) {
  std::vector<int> out;
  out.reserve(std::popcount(s));
  while (s != 0) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

VertexSet set_of(std::span<const int> vertices) {
  VertexSet s = 0;
  for (int v : vertices) s |= bit(v);
  return s;
}

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
  if (n < 0 || n > kMaxVertices) {
    throw GraphError("vertex count " + std::to_string(n) + " outside [0, 64]");
  }
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::complete(int n) { return complement(Graph(n)); }

Graph Graph::path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::cycle(int n) {
  Graph g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

int Graph::size() const {
  int twice = 0;
  for (VertexSet row : adj_) twice += std::popcount(row);
  return twice / 2;
}

VertexSet Graph::all() const { return n_ == 64 ? ~VertexSet{0} : bit(n_) - 1; }

int Graph::degree(int v) const { return std::popcount(adj_[v]); }

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v : members(adj_[u] & ~((bit(u) << 1) - 1))) out.emplace_back(u, v);
  }
  return out;
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  VertexSet seen = bit(0);
  VertexSet frontier = bit(0);
  while (frontier != 0) {
    VertexSet next = 0;
    for (int v : members(frontier)) next |= adj_[v];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == all();
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) {
    throw GraphError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n_));
  }
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
}

void Graph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  adj_[u] &= ~bit(v);
  adj_[v] &= ~bit(u);
}

Graph Graph::relabeled(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw GraphError("permutation size mismatch");
  std::vector<int> inverse(n_, -1);
  for (int i = 0; i < n_; ++i) {
    check_vertex(perm[i]);
    if (inverse[perm[i]] != -1) throw GraphError("not a permutation");
    inverse[perm[i]] = i;
  }
  Graph out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int w : members(adj_[perm[i]])) out.adj_[i] |= bit(inverse[w]);
  }
  return out;
}

Graph complement(const Graph& g) {
  Graph out(g.order());
  for (int u = 0; u < g.order(); ++u) {
    for (int v = u + 1; v < g.order(); ++v) {
      if (!g.adjacent(u, v)) out.add_edge(u, v);
    }
  }
  return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  const int n = g.order();
  Graph out(n + h.order());
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (auto [u, v] : h.edges()) out.add_edge(n + u, n + v);
  return out;
}

Graph join(const Graph& g, const Graph& h) {
  Graph out = disjoint_union(g, h);
  for (int u = 0; u < g.order(); ++u) {
    for (int v = 0; v < h.order(); ++v) out.add_edge(u, g.order() + v);
  }
  return out;
}

Graph jdup(const Graph& g, int v) {
  if (v < 0 || v >= g.order()) throw GraphError("jdup: vertex out of range");
  const int n = g.order();
  Graph out(n + 1);
  for (auto [a, b] : g.edges()) out.add_edge(a, b);
  for (int w : members(g.closed_neighbors(v))) out.add_edge(n, w);
  return out;
}

Subgraph induced(const Graph& g, VertexSet vertices) {
  Subgraph sub{Graph(popcount(vertices)), members(vertices)};
  for (std::size_t i = 0; i < sub.labels.size(); ++i) {
    for (std::size_t j = i + 1; j < sub.labels.size(); ++j) {
      if (g.adjacent(sub.labels[i], sub.labels[j])) {
        sub.graph.add_edge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return sub;
}

Graph remove_vertex(const Graph& g, int v) { return induced(g, g.all() & ~bit(v)).graph; }

std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<std::vector<int>> out;
  VertexSet unseen = g.all();
  while (unseen != 0) {
    const int root = std::countr_zero(unseen);
    VertexSet comp = bit(root);
    VertexSet frontier = comp;
    while (frontier != 0) {
      VertexSet next = 0;
      for (int v : members(frontier)) next |= g.neighbors(v);
      frontier = next & ~comp;
      comp |= next;
    }
    unseen &= ~comp;
    out.push_back(members(comp));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return out;
}

bool has_cycle(const Graph& g) {
  for (const auto& comp : components(g)) {
    const Subgraph sub = induced(g, set_of(comp));
    if (sub.graph.size() >= sub.graph.order()) return true;
  }
  return false;
}

namespace {

struct Coloring {
  std::vector<int> color;  // -1 unvisited, 0 left, 1 right
  std::optional<OddCycle> odd;
};

Coloring two_color(const Graph& g) {
  const int n = g.order();
  Coloring c{std::vector<int>(n, -1), std::nullopt};
  std::vector<int> parent(n, -1);
  for (int root = 0; root < n; ++root) {
    if (c.color[root] != -1) continue;
    c.color[root] = 0;
    std::queue<int> queue;
    queue.push(root);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int w : members(g.neighbors(u))) {
        if (c.color[w] == -1) {
          c.color[w] = 1 - c.color[u];
          parent[w] = u;
          queue.push(w);
        } else if (c.color[w] == c.color[u] && !c.odd) {
          // Walk both tree paths up to their meeting point.
          std::vector<int> up_u{u}, up_w{w};
          std::vector<int> depth_of(n, -1);
          for (int x = u, d = 0; x != -1; x = parent[x], ++d) depth_of[x] = d;
          int meet = w;
          while (depth_of[meet] == -1) {
            meet = parent[meet];
            up_w.push_back(meet);
          }
          up_w.pop_back();
          for (int x = u; x != meet;) {
            x = parent[x];
            up_u.push_back(x);
          }
          std::vector<int> cycle(up_u.begin(), up_u.end());
          cycle.insert(cycle.end(), up_w.rbegin(), up_w.rend());
          c.odd = OddCycle{cycle};
        }
      }
    }
  }
  return c;
}

}  // namespace

std::variant<PartiteSplit, OddCycle> bipartition(const Graph& g) {
  const Coloring c = two_color(g);
  if (c.odd) return *c.odd;
  PartiteSplit split;
  std::vector<int> isolated;
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) {
      isolated.push_back(v);
    } else if (c.color[v] == 0) {
      split.left |= bit(v);
    } else {
      split.right |= bit(v);
    }
  }
  for (int v : isolated) {
    if (popcount(split.left) <= popcount(split.right)) {
      split.left |= bit(v);
    } else {
      split.right |= bit(v);
    }
  }
  return split;
}

std::vector<PartiteSplit> all_bipartitions(const Graph& g, std::size_t limit) {
  const Coloring c = two_color(g);
  if (c.odd) return {};
  std::vector<std::pair<VertexSet, VertexSet>> sides;  // per nontrivial component
  VertexSet isolated = 0;
  for (const auto& comp : components(g)) {
    if (comp.size() == 1) {
      isolated |= bit(comp.front());
      continue;
    }
    VertexSet a = 0, b = 0;
    for (int v : comp) (c.color[v] == 0 ? a : b) |= bit(v);
    sides.emplace_back(a, b);
  }
  const std::vector<int> iso = members(isolated);
  std::vector<PartiteSplit> out;
  const std::uint64_t orientations = std::uint64_t{1} << sides.size();
  for (std::uint64_t mask = 0; mask < orientations; ++mask) {
    PartiteSplit base;
    for (std::size_t i = 0; i < sides.size(); ++i) {
      const bool flip = (mask >> i) & 1U;
      base.left |= flip ? sides[i].second : sides[i].first;
      base.right |= flip ? sides[i].first : sides[i].second;
    }
    for (std::size_t k = 0; k <= iso.size(); ++k) {
      PartiteSplit s = base;
      for (std::size_t i = 0; i < iso.size(); ++i) (i < k ? s.left : s.right) |= bit(iso[i]);
      out.push_back(s);
      if (out.size() >= limit) return out;
    }
  }
  return out;
}

bool is_valid_split(const Graph& g, const PartiteSplit& s) {
  if ((s.left & s.right) != 0 || (s.left | s.right) != g.all()) return false;
  for (auto [u, v] : g.edges()) {
    const bool ul = (s.left >> u) & 1U;
    const bool vl = (s.left >> v) & 1U;
    if (ul == vl) return false;
  }
  return true;
}

std::vector<PathTriple> unique_p2_violations(const Graph& g) {
  if (!g.connected()) throw GraphError("unique_p2_violations: graph is disconnected");
  std::vector<PathTriple> out;
  for (int x = 0; x < g.order(); ++x) {
    for (int y = x + 1; y < g.order(); ++y) {
      if (g.adjacent(x, y)) continue;
      const VertexSet common = g.neighbors(x) & g.neighbors(y);
      if (popcount(common) == 1) out.push_back({x, std::countr_zero(common), y});
    }
  }
  return out;
}

namespace {

/// Color refinement with canonical color names; colors of several graphs are
/// refined jointly so they are comparable.
std::vector<std::vector<int>> refine_colors(std::span<const Graph* const> graphs) {
  std::vector<std::vector<int>> colors;
  for (const Graph* g : graphs) {
    std::vector<int> c(g->order());
    for (int v = 0; v < g->order(); ++v) c[v] = g->degree(v);
    colors.push_back(std::move(c));
  }
  for (;;) {
    std::map<std::pair<int, std::vector<int>>, int> names;
    std::vector<std::vector<std::pair<int, std::vector<int>>>> sigs(graphs.size());
    for (std::size_t k = 0; k < graphs.size(); ++k) {
      const Graph& g = *graphs[k];
      for (int v = 0; v < g.order(); ++v) {
        std::vector<int> nb;
        for (int w : members(g.neighbors(v))) nb.push_back(colors[k][w]);
        std::sort(nb.begin(), nb.end());
        sigs[k].emplace_back(colors[k][v], std::move(nb));
        names.emplace(sigs[k].back(), 0);
      }
    }
    int next = 0;
    for (auto& [sig, name] : names) name = next++;
    bool changed = false;
    std::size_t old_classes = 0;
    {
      std::map<int, int> seen;
      for (const auto& c : colors)
        for (int x : c) seen[x];
      old_classes = seen.size();
    }
    for (std::size_t k = 0; k < graphs.size(); ++k) {
      for (std::size_t v = 0; v < sigs[k].size(); ++v) colors[k][v] = names[sigs[k][v]];
    }
    changed = names.size() != old_classes;
    if (!changed) return colors;
  }
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h) {
  const int n = g.order();
  if (n != h.order() || g.size() != h.size()) return std::nullopt;
  const Graph* both[] = {&g, &h};
  const auto colors = refine_colors(both);
  {
    auto cg = colors[0], ch = colors[1];
    std::sort(cg.begin(), cg.end());
    std::sort(ch.begin(), ch.end());
    if (cg != ch) return std::nullopt;
  }
  // Order h's vertices so each one is adjacent to an earlier one when possible.
  std::vector<int> order;
  VertexSet placed = 0;
  while (popcount(placed) < n) {
    int best = -1, best_links = -1;
    for (int v = 0; v < n; ++v) {
      if ((placed >> v) & 1U) continue;
      const int links = popcount(h.neighbors(v) & placed);
      if (links > best_links) best = v, best_links = links;
    }
    order.push_back(best);
    placed |= bit(best);
  }
  std::vector<int> perm(n, -1);
  VertexSet used = 0;
  auto extend = [&](auto&& self, int depth) -> bool {
    if (depth == n) return true;
    const int hv = order[depth];
    for (int gv = 0; gv < n; ++gv) {
      if ((used >> gv) & 1U || colors[0][gv] != colors[1][hv]) continue;
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        ok = h.adjacent(hv, order[d]) == g.adjacent(gv, perm[order[d]]);
      }
      if (!ok) continue;
      perm[hv] = gv;
      used |= bit(gv);
      if (self(self, depth + 1)) return true;
      used &= ~bit(gv);
    }
    perm[hv] = -1;
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return perm;
}

std::optional<std::vector<int>> find_spanning_embedding(const Graph& small, const Graph& big) {
  const int n = small.order();
  if (n != big.order() || small.size() > big.size()) return std::nullopt;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return small.degree(a) > small.degree(b); });
  std::vector<int> image(n, -1);  // small vertex -> big vertex
  VertexSet used = 0;
  auto extend = [&](auto&& self, int depth) -> bool {
    if (depth == n) return true;
    const int sv = order[depth];
    for (int bv = 0; bv < n; ++bv) {
      if ((used >> bv) & 1U || big.degree(bv) < small.degree(sv)) continue;
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        const int other = order[d];
        ok = !small.adjacent(sv, other) || big.adjacent(bv, image[other]);
      }
      if (!ok) continue;
      image[sv] = bv;
      used |= bit(bv);
      if (self(self, depth + 1)) return true;
      used &= ~bit(bv);
    }
    image[sv] = -1;
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  std::vector<int> perm(n);
  for (int s = 0; s < n; ++s) perm[image[s]] = s;
  return perm;
}

namespace {

/// Equitable refinement from an initial coloring. Colors are renamed by rank
/// of their signatures, so the result is isomorphism-invariant.
std::vector<int> refine_from(const Graph& g, std::vector<int> color) {
  const int n = g.order();
  std::size_t classes = std::set<int>(color.begin(), color.end()).size();
  for (;;) {
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> nb;
      for (int w : members(g.neighbors(v))) nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      sig[v] = {color[v], std::move(nb)};
    }
    std::map<std::pair<int, std::vector<int>>, int> names;
    for (const auto& s : sig) names.emplace(s, 0);
    int next = 0;
    for (auto& [key, name] : names) name = next++;
    for (int v = 0; v < n; ++v) color[v] = names[sig[v]];
    if (names.size() == classes) return color;
    classes = names.size();
  }
}

}  // namespace

std::string canonical_form(const Graph& g) {
  const int n = g.order();
  VertexSet core = 0;
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) > 0) core |= bit(v);
  }
  const Graph h = induced(g, core).graph;
  const int m = h.order();
  std::string best;
  auto leaf = [&](const std::vector<int>& color) {
    std::vector<int> order(m);
    for (int v = 0; v < m; ++v) order[color[v]] = v;
    std::string w(static_cast<std::size_t>(m * (m - 1) / 2), '0');
    std::size_t k = 0;
    for (int j = 1; j < m; ++j)
      for (int i = 0; i < j; ++i) w[k++] = h.adjacent(order[i], order[j]) ? '1' : '0';
    if (best.empty() || w < best) best = std::move(w);
  };
  // Individualization-refinement over the first non-singleton cell.
  auto search = [&](auto&& self, std::vector<int> color) -> void {
    color = refine_from(h, std::move(color));
    std::vector<int> size(m, 0);
    for (int c : color) ++size[c];
    int target = -1;
    for (int c = 0; c < m && target < 0; ++c) {
      if (size[c] > 1) target = c;
    }
    if (target < 0) {
      leaf(color);
      return;
    }
    for (int v = 0; v < m; ++v) {
      if (color[v] != target) continue;
      std::vector<int> next(m);
      for (int w = 0; w < m; ++w) next[w] = 2 * color[w] + (w == v ? 0 : 1);
      self(self, std::move(next));
    }
  };
  if (m > 0) search(search, std::vector<int>(m, 0));
  return std::to_string(n) + ":" + std::to_string(m) + ":" + best;
}

std::vector<std::vector<Graph>> nonisomorphic_graphs(int n, int max_edges) {
  max_edges = std::min(max_edges, n * (n - 1) / 2);
  std::vector<std::vector<Graph>> levels{{Graph(n)}};
  for (int e = 1; e <= max_edges; ++e) {
    std::map<std::string, Graph> seen;
    for (const Graph& g : levels.back()) {
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (g.adjacent(u, v)) continue;
          Graph h = g;
          h.add_edge(u, v);
          seen.emplace(canonical_form(h), h);
        }
      }
    }
    std::vector<Graph> level;
    for (auto& [key, h] : seen) level.push_back(std::move(h));
    levels.push_back(std::move(level));
  }
  return levels;
}

std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(g.order()));
  for (int v = 0; v < g.order(); ++v) mix(g.neighbors(v));
  return h;
}

}  // namespace q2cert
