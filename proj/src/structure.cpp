#include "q2cert/structure.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>

#include "q2cert/graph6.hpp"

namespace q2cert {

std::string trace_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : write_graph6(g)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::optional<std::pair<int, int>> first_twin_pair(const Graph& gbar) {
  const int n = gbar.order();
  for (int u = 0; u < n; ++u) {
    if (gbar.degree(u) == 0) continue;
    for (int v = u + 1; v < n; ++v) {
      if (gbar.neighbors(u) == gbar.neighbors(v)) return std::pair{u, v};
    }
  }
  return std::nullopt;
}

std::vector<int> argsort(const std::vector<int>& labels) {
  std::vector<int> perm(labels.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return labels[a] < labels[b]; });
  return perm;
}

}  // namespace

Simplification simplify(const Graph& g) {
  Simplification s{g, std::vector<int>(g.order()), {}};
  std::iota(s.labels.begin(), s.labels.end(), 0);
  while (true) {
    const Graph gbar = complement(s.graph);
    const auto pair = first_twin_pair(gbar);
    if (!pair) break;
    const auto [u, v] = *pair;
    s.trace.push_back({s.labels[u], s.labels[v], trace_hash(s.graph)});
    s.graph = remove_vertex(s.graph, u);
    s.labels.erase(s.labels.begin() + u);
  }
  return s;
}

bool is_simplified(const Graph& g) { return !first_twin_pair(complement(g)).has_value(); }

Graph replay(const Graph& reduced, const std::vector<int>& labels, const ReductionTrace& trace,
             bool check_hashes) {
  if (static_cast<int>(labels.size()) != reduced.order()) throw GraphError("label count mismatch");
  Graph g = reduced;
  std::vector<int> lab = labels;
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    const auto pos = std::find(lab.begin(), lab.end(), it->kept_twin);
    if (pos == lab.end()) throw GraphError("trace refers to a missing vertex");
    if (std::find(lab.begin(), lab.end(), it->removed_vertex) != lab.end()) {
      throw GraphError("trace re-adds a present vertex");
    }
    g = jdup(g, static_cast<int>(pos - lab.begin()));
    lab.push_back(it->removed_vertex);
    const auto perm = argsort(lab);
    g = g.relabeled(perm);
    std::vector<int> sorted(lab.size());
    for (std::size_t i = 0; i < perm.size(); ++i) sorted[i] = lab[perm[i]];
    lab = std::move(sorted);
    if (check_hashes && trace_hash(g) != it->graph_before_hash) {
      throw GraphError("trace hash mismatch at removal of vertex " + std::to_string(it->removed_vertex));
    }
  }
  for (std::size_t i = 0; i < lab.size(); ++i) {
    if (lab[i] != static_cast<int>(i)) throw GraphError("trace labels are not 0..n-1");
  }
  return g;
}

bool is_split_witness(const Graph& gbar, const PartiteSplit& split, const SplitWitness& w) {
  if ((w.m1 & w.m2) || (w.n1 & w.n2)) return false;
  if ((w.m1 | w.m2) != split.left || (w.n1 | w.n2) != split.right) return false;
  for (int m : members(w.m1)) {
    if ((gbar.neighbors(m) & w.n1) != w.n1) return false;
  }
  for (int m : members(w.m2)) {
    if ((gbar.neighbors(m) & w.n2) != w.n2) return false;
  }
  return true;
}

std::optional<SplitWitness> find_kmn_split(const Graph& gbar, const PartiteSplit& split) {
  if (!is_valid_split(gbar, split)) throw GraphError("not a bipartition of the complement");
  if (split.left == 0 || split.right == 0) throw GraphError("bipartition side is empty");
  // Missing cross pairs force opposite group indices, so every component of
  // the missing-pair graph takes a single index.
  const int n = gbar.order();
  Graph h(n);
  for (int r : members(split.left)) {
    for (int s : members(split.right & ~gbar.neighbors(r))) h.add_edge(r, s);
  }
  SplitWitness w;
  std::vector<std::vector<int>> comps = components(h);
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (const auto& comp : comps) {
    const VertexSet c = set_of(comp);
    const VertexSet r = c & split.left, s = c & split.right;
    int index = 1;
    if (r && !w.m1) {
      index = 1;
    } else if (r && !w.m2) {
      index = 2;
    } else if (s && !w.n1) {
      index = 2;
    } else if (s && !w.n2) {
      index = 1;
    }
    (index == 1 ? w.m1 : w.m2) |= r;
    (index == 1 ? w.n2 : w.n1) |= s;
  }
  if (!w.nontrivial()) return std::nullopt;
  if (!is_split_witness(gbar, split, w)) throw LemmaContradiction("component assignment produced an invalid witness");
  return w;
}

std::optional<PartiteSplit> ngthm_split(const Graph& gbar) {
  const auto splits = all_bipartitions(gbar, std::numeric_limits<std::size_t>::max());
  std::optional<PartiteSplit> chosen;
  for (const auto& split : splits) {
    if (split.left == 0 || split.right == 0) continue;
    if (find_kmn_split(gbar, split)) return std::nullopt;
    if (!chosen) chosen = split;
  }
  if (!chosen) return std::nullopt;
  const auto b = bipartition(gbar);
  const auto& bs = std::get<PartiteSplit>(b);
  if (bs.left && bs.right) return bs;
  return chosen;
}

SplitWitness normalize_witness(const SplitWitness& w, const PartiteSplit& split, std::string* zeroed,
                               PartiteSplit* oriented) {
  SplitWitness out = w;
  PartiteSplit s = split;
  std::string which;
  if (!w.n2) {
    which = "n2";
  } else if (!w.n1) {
    which = "n1";
    out = {w.m2, w.m1, w.n2, w.n1};
  } else if (!w.m2) {
    which = "m2";
    out = {w.n1, w.n2, w.m1, w.m2};
    s = {split.right, split.left};
  } else if (!w.m1) {
    which = "m1";
    out = {w.n2, w.n1, w.m2, w.m1};
    s = {split.right, split.left};
  } else {
    which = "none";
  }
  if (zeroed) *zeroed = which;
  if (oriented) *oriented = s;
  return out;
}

SimplifiedReport validate_simplified_properties(const Graph& g, const PartiteSplit& split,
                                                const SplitWitness& w) {
  const int n = g.order();
  const Graph gbar = complement(g);
  if (n < 3) throw HypothesisError("order below 3");
  if (gbar.size() == 0) throw HypothesisError("complement is empty");
  if (!is_valid_split(gbar, split)) throw HypothesisError("complement is not bipartite with the given sides");
  if (!is_split_witness(gbar, split, w)) throw HypothesisError("witness does not match the bipartition");
  if (!is_simplified(g)) throw HypothesisError("not simplified: complement has non-isolated twins");
  if (recognize(g).kind == SpecialFamily::Kind::C4) throw HypothesisError("excluded graph C4");
  const int e = gbar.size();
  if (!(e <= n - 2 || (e == n - 1 && has_cycle(gbar)))) {
    throw HypothesisError("complement edge bound: need e <= n-2, or e = n-1 with a cycle");
  }

  SimplifiedReport rep;
  PartiteSplit oriented;
  rep.normalized = normalize_witness(w, split, &rep.zeroed_part, &oriented);
  const SplitWitness& nw = rep.normalized;
  const int m1 = popcount(nw.m1), n1 = popcount(nw.n1), m2 = popcount(nw.m2);
  rep.part_empty = {rep.zeroed_part != "none", "zeroed part " + rep.zeroed_part};
  rep.m1_is_one = {m1 == 1, "m1 = " + std::to_string(m1)};
  if (n % 2 == 0) {
    rep.n1_bound = {2 * n1 <= n - 2, "n1 = " + std::to_string(n1) + ", n/2 - 1 = " + std::to_string(n / 2 - 1)};
    int isolated = 0;
    for (int v = 0; v < n; ++v) isolated += gbar.degree(v) == 0;
    rep.isolated_count = {2 * isolated >= n - 2 * n1,
                          "isolated = " + std::to_string(isolated) + ", n/2 - n1 = " + std::to_string(n / 2 - n1)};
  } else {
    rep.n1_bound = {true, "n odd"};
    rep.isolated_count = {true, "n odd"};
  }
  (void)m2;
  return rep;
}

IsolationAnalysis count_isolated(const Graph& gbar) {
  const int n = gbar.order();
  if (n < 4) throw HypothesisError("order below 4");
  const int e = gbar.size();
  if (!(e <= n - 3 || (e == n - 2 && has_cycle(gbar)))) {
    throw HypothesisError("complement edge bound: need e <= n-3, or e = n-2 with a cycle");
  }
  if (std::holds_alternative<OddCycle>(bipartition(gbar))) throw HypothesisError("complement is not bipartite");

  std::optional<IsolationAnalysis> best;
  for (const auto& split : all_bipartitions(gbar, std::numeric_limits<std::size_t>::max())) {
    if (split.left == 0 || split.right == 0) continue;
    const auto w = find_kmn_split(gbar, split);
    if (!w) continue;
    IsolationAnalysis a;
    std::string zeroed;
    a.witness = normalize_witness(*w, split, &zeroed, &a.split);
    if (zeroed == "none") continue;
    if (!best || (popcount(a.witness.m1) == 1 && popcount(best->witness.m1) != 1)) best = a;
    if (popcount(best->witness.m1) == 1) break;
  }
  if (!best) throw HypothesisError("no bipartition admits a witness with an empty part");
  IsolationAnalysis a = *best;
  for (int v = 0; v < n; ++v) {
    if (gbar.degree(v) == 0) {
      a.isolated |= bit(v);
    } else if ((a.witness.m2 >> v) & 1U) {
      (gbar.degree(v) == 1 ? a.v1 : a.v2) |= bit(v);
    }
  }
  a.simplified = is_simplified(complement(gbar));
  return a;
}

std::string to_string(BipartiteVerdict::Kind k) {
  using K = BipartiteVerdict::Kind;
  switch (k) {
    case K::Q2ByNGThm: return "Q2ByNGThm";
    case K::Q2ByBoxProduct: return "Q2ByBoxProduct";
    case K::Q2ByJdupLift: return "Q2ByJdupLift";
    case K::Q3Family: return "Q3Family";
    case K::NeedsRealization: return "NeedsRealization";
  }
  return "?";
}

BipartiteVerdict classify_bipartite_complement(const Graph& g) {
  using K = BipartiteVerdict::Kind;
  const int n = g.order();
  const Graph gbar = complement(g);
  if (n < 3) throw HypothesisError("order below 3");
  if (std::holds_alternative<OddCycle>(bipartition(gbar))) throw HypothesisError("complement is not bipartite");
  if (gbar.size() > n - 2) throw HypothesisError("complement has more than n-2 edges");

  BipartiteVerdict v{K::Q2ByNGThm, std::nullopt, false, 0, 0, 0, {}};
  if (auto s = ngthm_split(gbar)) {
    v.split = s;
    return v;
  }
  v.simplification = simplify(g);
  const Graph& gs = v.simplification.graph;
  const Graph gsbar = complement(gs);
  if (auto s = ngthm_split(gsbar)) {
    v.split = s;
    v.on_simplified = true;
    return v;
  }
  const SpecialFamily fam = recognize(gbar);
  if (fam.kind == SpecialFamily::Kind::SabUnionK1) {
    v.kind = K::Q3Family;
    v.a = fam.a;
    v.b = fam.b;
    return v;
  }
  const int ns = gs.order(), es = gsbar.size();
  if (ns % 2 == 0) {
    v.kind = K::Q2ByBoxProduct;
    return v;
  }
  if (es <= ns - 3 || has_cycle(gsbar)) {
    v.kind = K::Q2ByJdupLift;
    return v;
  }
  const SpecialFamily sfam = recognize(gsbar);
  if (sfam.kind != SpecialFamily::Kind::WPlusUnionK1) {
    throw LemmaContradiction("odd simplified acyclic complement with n-2 edges is " + to_string(sfam));
  }
  v.kind = K::NeedsRealization;
  v.k = sfam.a;
  return v;
}

}  // namespace q2cert
