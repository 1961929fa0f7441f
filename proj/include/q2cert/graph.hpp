#ifndef Q2CERT_GRAPH_HPP
#define Q2CERT_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace q2cert {

/// Bitset over at most 64 vertices.
using VertexSet = std::uint64_t;

inline constexpr VertexSet bit(int v) { return VertexSet{1} << v; }
int popcount(VertexSet s);
/// Members of `s` in increasing order.
std::vector<int> members(VertexSet s);
VertexSet set_of(std::span<const int> vertices);

/// Raised when an operation's precondition on its graph argument fails.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Labeled simple graph on vertices 0..n-1, adjacency rows as 64-bit words.
class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  Graph() = default;
  explicit Graph(int n);
  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);
  static Graph complete(int n);
  static Graph empty(int n) { return Graph(n); }
  static Graph path(int n);
  static Graph cycle(int n);

  int order() const { return n_; }
  int size() const;  // e(G)
  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
  VertexSet neighbors(int v) const { return adj_[v]; }
  VertexSet closed_neighbors(int v) const { return adj_[v] | bit(v); }
  VertexSet all() const;
  int degree(int v) const;
  std::vector<std::pair<int, int>> edges() const;
  bool connected() const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  /// Graph whose vertex i is vertex perm[i] of this graph.
  Graph relabeled(std::span<const int> perm) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<VertexSet> adj_;
};

/// An induced subgraph together with the original label of each vertex.
struct Subgraph {
  Graph graph;
  std::vector<int> labels;
};

Graph complement(const Graph& g);
/// Disjoint union plus all cross edges; h's vertices follow g's.
Graph join(const Graph& g, const Graph& h);
Graph disjoint_union(const Graph& g, const Graph& h);
/// Adds vertex n adjacent to exactly N[v].
Graph jdup(const Graph& g, int v);
Subgraph induced(const Graph& g, VertexSet vertices);
Graph remove_vertex(const Graph& g, int v);

/// Connected components sorted by decreasing size, then lexicographically.
std::vector<std::vector<int>> components(const Graph& g);
/// True iff some component has at least as many edges as vertices.
bool has_cycle(const Graph& g);

struct PartiteSplit {
  VertexSet left = 0;
  VertexSet right = 0;
};

struct OddCycle {
  std::vector<int> cycle;
};

/// Two-coloring with isolated vertices placed to equalize the sides (ties go
/// left), or an odd cycle.
std::variant<PartiteSplit, OddCycle> bipartition(const Graph& g);
/// Every bipartition of g: each nontrivial component in both orientations,
/// isolated vertices distributed in every possible count. Bounded by `limit`.
std::vector<PartiteSplit> all_bipartitions(const Graph& g, std::size_t limit = 4096);
bool is_valid_split(const Graph& g, const PartiteSplit& s);

/// Triples (x, u, y) where xuy is the only path of length two between the
/// non-adjacent x and y. Requires a connected graph.
struct PathTriple {
  int x, u, y;
  friend bool operator==(const PathTriple&, const PathTriple&) = default;
};
std::vector<PathTriple> unique_p2_violations(const Graph& g);

/// Backtracking isomorphism search; returns perm with h == g.relabeled(perm).
std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h);
/// Relabeling of `small` (same order as `big`) whose every edge is an edge of
/// `big`: returns perm with big ⊇ small.relabeled(perm).
std::optional<std::vector<int>> find_spanning_embedding(const Graph& small, const Graph& big);

/// Canonical form by individualization-refinement; equal iff isomorphic.
std::string canonical_form(const Graph& g);

std::uint64_t graph_hash(const Graph& g);

/// Isomorphism classes of graphs on n vertices with at most `max_edges`
/// edges; element e lists the classes with exactly e edges.
std::vector<std::vector<Graph>> nonisomorphic_graphs(int n, int max_edges);

}  // namespace q2cert

#endif
