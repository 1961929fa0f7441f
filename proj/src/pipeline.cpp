#include "q2cert/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <thread>

#include "q2cert/errors.hpp"
#include "q2cert/factory.hpp"
#include "q2cert/families.hpp"
#include "q2cert/graph6.hpp"
#include "q2cert/matching.hpp"
#include "q2cert/optimize.hpp"
#include "q2cert/partition.hpp"

namespace q2cert {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Q2: return "Q2";
    case Verdict::Q3: return "Q3";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "Q2") return Verdict::Q2;
  if (s == "Q3") return Verdict::Q3;
  if (s == "Unknown") return Verdict::Unknown;
  throw std::invalid_argument("unknown verdict: " + s);
}

const std::vector<std::string>& known_rules() {
  static const std::vector<std::string> rules = {"Complete", "LB1",      "NGThm",      "BoxProduct", "TightChar",
                                                 "M7Route",  "WHatRoute", "TriCyc",     "JoinClique", "Join",
                                                 "K2Join",   "Jdup",     "Search"};
  return rules;
}

namespace {

bool complement_bipartite(const Graph& gbar) { return std::holds_alternative<PartiteSplit>(bipartition(gbar)); }

int isolated_count(const Graph& gbar) {
  int c = 0;
  for (int v = 0; v < gbar.order(); ++v) c += gbar.degree(v) == 0;
  return c;
}

bool is_tricyc_shape(const Graph& g) {
  const int n = g.order();
  if (n < 6 || n % 2 != 0) return false;
  return find_isomorphism(join(complement(Graph::cycle(n - 3)), Graph::complete(3)), g).has_value();
}

}  // namespace

std::string rule_hypothesis_violation(const std::string& rule, const Graph& g) {
  const int n = g.order();
  const Graph gbar = complement(g);
  const int e = gbar.size();
  if (rule == "Complete") return e == 0 && n >= 2 ? "" : "graph is not complete";
  if (rule == "LB1") return n >= 3 && e <= n / 2 - 1 ? "" : "complement has more than floor(n/2)-1 edges";
  if (rule == "NGThm") {
    if (!complement_bipartite(gbar)) return "complement is not bipartite";
    return ngthm_split(gbar) ? "" : "some bipartition admits a nontrivial witness";
  }
  if (rule == "BoxProduct") {
    if (n % 2 != 0 || !complement_bipartite(gbar)) return "needs even order and bipartite complement";
    try {
      return box_certificate_violation(g, box_product_certificate(g));
    } catch (const std::exception& ex) {
      return ex.what();
    }
  }
  if (rule == "TightChar") {
    if (!complement_bipartite(gbar) || e != n - 2) return "complement is not bipartite with n-2 edges";
    return "";
  }
  if (rule == "M7Route" || rule == "WHatRoute") {
    const SpecialFamily f = recognize(gbar);
    if (f.kind != SpecialFamily::Kind::WPlusUnionK1) return "complement is not W(k,1,1) u K1";
    if (rule == "M7Route" && f.a != 2) return "M7 route needs k = 2";
    if (rule == "WHatRoute" && f.a < 3) return "W-hat route needs k >= 3";
    return "";
  }
  if (rule == "TriCyc") return is_tricyc_shape(g) ? "" : "complement is not an odd cycle on n-3 vertices plus 3 isolated";
  if (rule == "JoinClique" || rule == "Join") {
    const auto comps = components(gbar);
    if (comps.size() < 2) return "complement is connected, graph is not a join";
    if (rule == "JoinClique" && isolated_count(gbar) == 0) return "no complement-isolated vertices";
    return "";
  }
  if (rule == "K2Join") return isolated_count(gbar) >= 2 ? "" : "fewer than two dominating vertices";
  if (rule == "Jdup") return simplify(g).trace.empty() ? "graph has no complement twins" : "";
  if (rule == "Search") return "";
  return "unknown rule " + rule;
}

namespace {

/// Realization whose row i belongs to vertex labels[i] of some ambient graph.
struct Labeled {
  Realization r;
  std::vector<int> labels;
};

struct Derivation {
  Realization r;
  std::vector<RouteStep> route;
};

std::vector<int> inverse_of(const std::vector<int>& order) {
  std::vector<int> inv(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = static_cast<int>(i);
  return inv;
}

std::vector<int> iota_labels(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

/// Sorts rows by label.
Labeled sorted(Labeled lr) {
  std::vector<int> perm = iota_labels(static_cast<int>(lr.labels.size()));
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return lr.labels[a] < lr.labels[b]; });
  lr.r = permuted(lr.r, perm);
  std::vector<int> lab(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) lab[i] = lr.labels[perm[i]];
  lr.labels = std::move(lab);
  return lr;
}

Labeled jdup_extend(Labeled lr, int twin_label, int new_label, const Tolerances& tol) {
  const auto pos = std::find(lr.labels.begin(), lr.labels.end(), twin_label);
  if (pos == lr.labels.end()) throw ConstructionError("jdup: twin vertex missing");
  lr.r = jdup_lift(lr.r, static_cast<int>(pos - lr.labels.begin()), tol, false);
  lr.labels.push_back(new_label);
  return sorted(std::move(lr));
}

/// Inverse of simplify on a realization: reduced rows carry original labels.
Realization replay_realization(Labeled lr, const ReductionTrace& trace, const Tolerances& tol) {
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) lr = jdup_extend(std::move(lr), it->kept_twin, it->removed_vertex, tol);
  return lr.r;
}

/// Two highest complement-isolated vertices (w removed, z kept).
std::optional<std::pair<int, int>> isolated_pair(const Graph& gbar) {
  std::vector<int> iso;
  for (int v = gbar.order() - 1; v >= 0 && iso.size() < 2; --v)
    if (gbar.degree(v) == 0) iso.push_back(v);
  if (iso.size() < 2) return std::nullopt;
  return std::make_pair(iso[0], iso[1]);
}

std::vector<int> without(int n, int w) {
  std::vector<int> labels;
  for (int v = 0; v < n; ++v)
    if (v != w) labels.push_back(v);
  return labels;
}

class Engine {
 public:
  explicit Engine(const PipelineConfig& cfg) : cfg_(cfg) {}

  std::vector<std::string> failures;

  std::optional<Derivation> realize(const Graph& g, int depth = 0) {
    const int n = g.order();
    if (n < 2 || !g.connected()) return std::nullopt;
    if (!unique_p2_violations(g).empty()) return std::nullopt;
    using Route = std::optional<Derivation> (Engine::*)(const Graph&, int);
    static const std::vector<std::pair<const char*, Route>> routes = {
        {"Complete", &Engine::route_complete}, {"LB1", &Engine::route_lb1},   {"Bipartite", &Engine::route_bipartite},
        {"TriCyc", &Engine::route_tricyc},     {"Jdup", &Engine::route_jdup}, {"K2Join", &Engine::route_k2join},
        {"Join", &Engine::route_join},         {"Search", &Engine::route_search}};
    for (const auto& [name, fn] : routes) {
      try {
        auto d = (this->*fn)(g, depth);
        if (!d) continue;
        if (d->r.pattern != g) throw ConstructionError("route produced a realization of another graph");
        require_realization(d->r, 2, false, name, cfg_.tol);
        if (cfg_.exact_only && !d->r.exact) {
          note(name, g, "floating realization refused in exact-only mode");
          continue;
        }
        return d;
      } catch (const std::exception& ex) {
        note(name, g, ex.what());
      }
    }
    return std::nullopt;
  }

 private:
  const PipelineConfig& cfg_;

  void note(const std::string& route, const Graph& g, const std::string& what) {
    failures.push_back(route + " on " + write_graph6(g) + ": " + what);
  }

  std::uint64_t seed_for(const Graph& g, int salt) const {
    return derive_seed(cfg_.seed ^ graph_hash(g), static_cast<std::uint64_t>(salt));
  }

  static Derivation single(Realization r, const std::string& rule, const Graph& g) {
    return Derivation{std::move(r), {{rule, write_graph6(g)}}};
  }

  std::optional<Derivation> route_complete(const Graph& g, int) {
    if (g.size() != g.order() * (g.order() - 1) / 2) return std::nullopt;
    Derivation d = single(ortho_complete(g.order()), "Complete", g);
    // K_n is the trivial join decomposition, so LB1 covers it as well
    if (g.order() >= 3) d.route.insert(d.route.begin(), RouteStep{"LB1", write_graph6(g)});
    return d;
  }

  /// Join of the induced parts a and b, rows labeled by vertex.
  Labeled join_parts(const Graph& g, VertexSet a, VertexSet b, std::uint64_t seed) {
    const Subgraph sa = induced(g, a), sb = induced(g, b);
    Labeled lr{join_realization(sa.graph, sb.graph, seed), sa.labels};
    lr.labels.insert(lr.labels.end(), sb.labels.begin(), sb.labels.end());
    return sorted(std::move(lr));
  }

  std::optional<Derivation> route_lb1(const Graph& g, int) {
    const int n = g.order();
    if (n < 3 || complement(g).size() > n / 2 - 1) return std::nullopt;
    const JoinDecomposition jd = join_decomposition(g);
    Labeled lr = join_parts(g, jd.part_a, jd.part_b, seed_for(g, 1));
    if (jd.route == JoinDecomposition::Route::OddViaJdup) lr = jdup_extend(std::move(lr), jd.twin, jd.removed, cfg_.tol);
    return single(std::move(lr.r), "LB1", g);
  }

  /// Box-product seed lifted onto an even graph with bipartite complement.
  Realization box_route(const Graph& h) {
    const BoxCertificate cert = box_product_certificate(h);
    const int s = static_cast<int>(cert.matching.size());
    std::vector<int> order(2 * s);
    for (int i = 0; i < s; ++i) {
      order[i] = cert.matching[i].first;
      order[s + i] = cert.matching[i].second;
    }
    const Realization seed = permuted(box_k2_realization(s), inverse_of(order));
    LiftOptions lo;
    lo.seed = seed_for(h, 2);
    lo.tol = cfg_.tol;
    return supergraph_lift(seed, h, lo);
  }

  Realization embed_and_lift(const Realization& seed, const Graph& target, int salt) {
    const auto perm = find_spanning_embedding(seed.pattern, target);
    if (!perm) throw LemmaContradiction("seed pattern does not embed into " + write_graph6(target));
    LiftOptions lo;
    lo.seed = seed_for(target, salt);
    lo.tol = cfg_.tol;
    return supergraph_lift(permuted(seed, *perm), target, lo);
  }

  std::optional<Derivation> route_bipartite(const Graph& g, int) {
    using K = BipartiteVerdict::Kind;
    const int n = g.order();
    const Graph gbar = complement(g);
    if (n < 3 || !complement_bipartite(gbar) || gbar.size() > n - 2) return std::nullopt;
    const BipartiteVerdict v = classify_bipartite_complement(g);
    const std::string g6 = write_graph6(g);
    const bool tight = gbar.size() == n - 2;
    if (v.kind == K::Q2ByNGThm && !v.on_simplified) {
      return single(contraction_realization(g, v.split->left, v.split->right, seed_for(g, 3)), "NGThm", g);
    }
    const Simplification& s = v.simplification;
    const Graph& gs = s.graph;
    std::vector<RouteStep> route;
    if (tight) route.push_back({"TightChar", g6});
    if (!s.trace.empty()) route.push_back({"Jdup", g6});
    Realization reduced;
    switch (v.kind) {
      case K::Q2ByNGThm:
        reduced = contraction_realization(gs, v.split->left, v.split->right, seed_for(gs, 3));
        route.push_back({"NGThm", write_graph6(gs)});
        break;
      case K::Q2ByBoxProduct:
        reduced = box_route(gs);
        route.push_back({"BoxProduct", write_graph6(gs)});
        break;
      case K::Q2ByJdupLift: {
        const auto wz = isolated_pair(complement(gs));
        if (!wz) throw LemmaContradiction("odd simplified graph without two complement-isolated vertices");
        const Graph smaller = remove_vertex(gs, wz->first);
        Labeled lr{box_route(smaller), without(gs.order(), wz->first)};
        lr = jdup_extend(std::move(lr), wz->second, wz->first, cfg_.tol);
        reduced = lr.r;
        route.push_back({"K2Join", write_graph6(gs)});
        route.push_back({"BoxProduct", write_graph6(smaller)});
        break;
      }
      case K::NeedsRealization:
        if (v.k == 2) {
          reduced = embed_and_lift(m7_matrix(), gs, 4);
          route.push_back({"M7Route", write_graph6(gs)});
        } else {
          reduced = embed_and_lift(w_hat_sampled(v.k), gs, 5);
          route.push_back({"WHatRoute", write_graph6(gs)});
        }
        break;
      case K::Q3Family:
        return std::nullopt;
    }
    Realization full = replay_realization(Labeled{std::move(reduced), s.labels}, s.trace, cfg_.tol);
    return Derivation{std::move(full), std::move(route)};
  }

  std::optional<Derivation> route_tricyc(const Graph& g, int) {
    const int n = g.order();
    if (n < 6 || n % 2 != 0 || complement(g).size() != n - 3) return std::nullopt;
    const Graph shape = join(complement(Graph::cycle(n - 3)), Graph::complete(3));
    const auto perm = find_isomorphism(shape, g);
    if (!perm) return std::nullopt;
    return single(permuted(tricyc_realization(n, seed_for(g, 6)), *perm), "TriCyc", g);
  }

  std::optional<Derivation> route_jdup(const Graph& g, int depth) {
    const Simplification s = simplify(g);
    if (s.trace.empty()) return std::nullopt;
    auto inner = realize(s.graph, depth + 1);
    if (!inner) return std::nullopt;
    Derivation d{replay_realization(Labeled{std::move(inner->r), s.labels}, s.trace, cfg_.tol), {{"Jdup", write_graph6(g)}}};
    d.route.insert(d.route.end(), inner->route.begin(), inner->route.end());
    return d;
  }

  std::optional<Derivation> route_k2join(const Graph& g, int depth) {
    const auto wz = isolated_pair(complement(g));
    if (!wz || g.order() < 3) return std::nullopt;
    auto inner = realize(remove_vertex(g, wz->first), depth + 1);
    if (!inner) return std::nullopt;
    Labeled lr = jdup_extend(Labeled{std::move(inner->r), without(g.order(), wz->first)}, wz->second, wz->first, cfg_.tol);
    Derivation d{std::move(lr.r), {{"K2Join", write_graph6(g)}}};
    d.route.insert(d.route.end(), inner->route.begin(), inner->route.end());
    return d;
  }

  /// Splits the complement components into two sides whose orders differ by
  /// at most two, preferring balanced splits with connected sides.
  std::optional<Derivation> route_join(const Graph& g, int) {
    const int n = g.order();
    const Graph gbar = complement(g);
    const auto comps = components(gbar);
    if (comps.size() < 2) return std::nullopt;
    std::vector<std::vector<int>> big;
    std::vector<int> singles;
    for (const auto& c : comps) {
      if (c.size() == 1) singles.push_back(c.front());
      else big.push_back(c);
    }
    if (big.size() > 12) return std::nullopt;
    struct Candidate {
      int score;
      VertexSet a, b;
    };
    std::vector<Candidate> candidates;
    const int nb = static_cast<int>(big.size()), ns = static_cast<int>(singles.size());
    for (int mask = 0; mask < (1 << nb); ++mask) {
      VertexSet a = 0, b = 0;
      for (int i = 0; i < nb; ++i) (mask >> i & 1 ? a : b) |= set_of(big[i]);
      for (int k = 0; k <= ns; ++k) {
        VertexSet aa = a, bb = b;
        for (int i = 0; i < ns; ++i) (i < k ? aa : bb) |= bit(singles[i]);
        const int da = popcount(aa), db = popcount(bb);
        if (da == 0 || db == 0 || da < db || da - db > 2) continue;
        const bool connected = induced(g, aa).graph.connected() && induced(g, bb).graph.connected();
        candidates.push_back({(da - db) + (connected ? 0 : 4), aa, bb});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) { return x.score < y.score; });
    if (candidates.size() > 4) candidates.resize(4);
    std::string last;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      try {
        Labeled lr = join_parts(g, candidates[i].a, candidates[i].b, seed_for(g, 10 + static_cast<int>(i)));
        const bool clique_side = induced(gbar, candidates[i].a).graph.size() == 0 || induced(gbar, candidates[i].b).graph.size() == 0;
        return single(std::move(lr.r), clique_side ? "JoinClique" : "Join", g);
      } catch (const ConstructionError& ex) {
        last = ex.what();
      }
    }
    if (!last.empty()) throw ConstructionError(last);
    (void)n;
    return std::nullopt;
  }

  std::optional<Derivation> route_search(const Graph& g, int) {
    if (!cfg_.allow_search || g.order() > 20) return std::nullopt;
    SearchOptions so;
    so.restarts = cfg_.restarts;
    so.seed = seed_for(g, 20);
    so.tol = cfg_.tol;
    SearchResult res = generic_q2_search(g, so);
    if (!res.realization) return std::nullopt;
    return single(std::move(*res.realization), "Search", g);
  }
};

}  // namespace

Certificate classify(const Graph& g, const PipelineConfig& cfg) {
  const int n = g.order();
  if (n < 2) throw HypothesisError("classify: order below 2");
  if (n > 20) throw HypothesisError("classify: order above 20");
  if (!g.connected()) throw HypothesisError("classify: graph is disconnected; q(G) is determined by its components");
  Certificate c;
  c.input_graph6 = write_graph6(g);
  c.seed = cfg.seed;
  c.tol = cfg.tol;
  const Simplification s = simplify(g);
  c.trace = TraceRecord{write_graph6(s.graph), s.labels, s.trace};

  const auto p2 = unique_p2_violations(g);
  if (!p2.empty()) {
    c.lower_witness = p2.front();
    const Graph gbar = complement(g);
    const SpecialFamily fam = recognize(gbar);
    if (fam.kind == SpecialFamily::Kind::SabUnionK1 && gbar.size() == n - 2) {
      c.family = to_string(fam);
      c.route.push_back({"TightChar", c.input_graph6});
    }
    if (cfg.allow_search && !cfg.exact_only) {
      SearchOptions so;
      so.restarts = cfg.restarts;
      so.seed = derive_seed(cfg.seed ^ graph_hash(g), 30);
      so.tol = cfg.tol;
      SearchResult res = three_eigenvalue_search(g, so);
      if (res.realization && verify_realization(*res.realization, false, cfg.tol).spectrum.distinct_count == 3) {
        c.realization = std::move(res.realization);
        c.route.push_back({"Search", c.input_graph6});
      }
    }
    c.verdict = (c.realization || !c.family.empty()) ? Verdict::Q3 : Verdict::Unknown;
    if (c.verdict == Verdict::Unknown) c.notes.push_back("unique-P2 lower bound 3 without an upper-bound witness");
    return c;
  }

  Engine engine(cfg);
  auto d = engine.realize(g);
  c.notes = engine.failures;
  if (!d) {
    c.verdict = Verdict::Unknown;
    c.notes.push_back("no route produced a verified realization; this is not a proof that q > 2");
    return c;
  }
  c.verdict = Verdict::Q2;
  c.route = std::move(d->route);
  c.realization = std::move(d->r);
  c.ssp = verify_realization(*c.realization, true, cfg.tol).ssp;
  for (const auto& step : c.route) {
    if (step.rule == "K2Join") {
      c.notes.push_back("K2Join steps rest on the inner realization, which is included concretely");
      break;
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json ssp_to_json(const SspReport& s) {
  nlohmann::json j{{"mode", s.mode},
                   {"verdict", to_string(s.verdict)},
                   {"constraint_rows", s.constraint_rows},
                   {"constraint_cols", s.constraint_cols},
                   {"kernel_dimension", s.kernel_dimension}};
  if (s.smallest_singular_value) j["smallest_singular_value"] = *s.smallest_singular_value;
  return j;
}

SspReport::Verdict ssp_verdict_from_string(const std::string& s) {
  for (auto v : {SspReport::Verdict::SSP, SspReport::Verdict::NotSSP, SspReport::Verdict::Inconclusive})
    if (s == to_string(v)) return v;
  throw std::invalid_argument("unknown SSP verdict: " + s);
}

SspReport ssp_from_json(const nlohmann::json& j) {
  SspReport s;
  s.mode = j.at("mode").get<std::string>();
  s.verdict = ssp_verdict_from_string(j.at("verdict").get<std::string>());
  s.constraint_rows = j.at("constraint_rows").get<int>();
  s.constraint_cols = j.at("constraint_cols").get<int>();
  s.kernel_dimension = j.at("kernel_dimension").get<int>();
  if (j.contains("smallest_singular_value")) s.smallest_singular_value = j.at("smallest_singular_value").get<double>();
  return s;
}

nlohmann::json tol_to_json(const Tolerances& t) {
  return {{"residual", t.residual}, {"nonzero_floor", t.nonzero_floor}, {"zero_ceiling", t.zero_ceiling},
          {"rank", t.rank},         {"eigen_cluster", t.eigen_cluster}, {"search_floor", t.search_floor}};
}

Tolerances tol_from_json(const nlohmann::json& j) {
  Tolerances t;
  t.residual = j.at("residual").get<double>();
  t.nonzero_floor = j.at("nonzero_floor").get<double>();
  t.zero_ceiling = j.at("zero_ceiling").get<double>();
  t.rank = j.at("rank").get<double>();
  t.eigen_cluster = j.at("eigen_cluster").get<double>();
  t.search_floor = j.at("search_floor").get<double>();
  return t;
}

nlohmann::json spectrum_to_json(const SpectrumSummary& s) {
  return {{"mode", s.mode}, {"distinct_count", s.distinct_count}, {"values", s.cluster_values}, {"multiplicities", s.multiplicities}};
}

}  // namespace

nlohmann::json realization_to_json(const Realization& r) {
  const int n = r.pattern.order();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < n; ++j) row.push_back(r.exact ? to_string((*r.exact)(i, j)) : format_double(r.matrix(i, j)));
    rows.push_back(std::move(row));
  }
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  return {{"order", n},
          {"exact", r.exact.has_value()},
          {"matrix", std::move(rows)},
          {"pattern_graph6", write_graph6(r.pattern)},
          {"construction", to_string(r.construction)},
          {"parameters", std::move(params)},
          {"history", r.history}};
}

Realization realization_from_json(const nlohmann::json& j) {
  Realization r;
  const int n = j.at("order").get<int>();
  if (n < 1 || n > Graph::kMaxVertices) throw std::invalid_argument("realization order out of range");
  r.pattern = parse_graph6(j.at("pattern_graph6").get<std::string>());
  if (r.pattern.order() != n) throw std::invalid_argument("pattern order does not match matrix order");
  r.construction = construction_from_string(j.at("construction").get<std::string>());
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw std::invalid_argument("matrix row count mismatch");
  const bool exact = j.at("exact").get<bool>();
  RationalMatrix q(n, n);
  r.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw std::invalid_argument("matrix column count mismatch");
    for (int k = 0; k < n; ++k) {
      const std::string cell = row.at(k).get<std::string>();
      if (exact) {
        q(i, k) = parse_rational(cell);
        r.matrix(i, k) = q(i, k).convert_to<double>();
      } else {
        std::size_t used = 0;
        r.matrix(i, k) = std::stod(cell, &used);
        if (used != cell.size() || !std::isfinite(r.matrix(i, k))) throw std::invalid_argument("bad matrix entry " + cell);
      }
    }
  }
  if (exact) r.exact = q;
  for (const auto& [k, v] : j.at("parameters").items()) r.parameters[k] = v.get<double>();
  r.history = j.at("history").get<std::vector<std::string>>();
  return r;
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["schema"] = "q2cert/1";
  j["input_graph6"] = c.input_graph6;
  j["verdict"] = to_string(c.verdict);
  nlohmann::json tags = nlohmann::json::array(), detail = nlohmann::json::array();
  for (const auto& s : c.route) {
    tags.push_back(s.rule);
    detail.push_back({{"rule", s.rule}, {"graph6", s.graph6}});
  }
  j["theorem_route"] = tags;
  j["route_detail"] = detail;
  j["realization"] = c.realization ? realization_to_json(*c.realization) : nlohmann::json(nullptr);
  if (c.realization) j["spectrum"] = spectrum_to_json(verify_realization(*c.realization, false, c.tol).spectrum);
  j["ssp"] = c.ssp ? ssp_to_json(*c.ssp) : nlohmann::json(nullptr);
  if (c.trace) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : c.trace->steps)
      steps.push_back({{"removed", s.removed_vertex}, {"kept", s.kept_twin}, {"hash", s.graph_before_hash}});
    j["trace"] = {{"reduced_graph6", c.trace->reduced_graph6}, {"labels", c.trace->labels}, {"steps", steps}};
  } else {
    j["trace"] = nullptr;
  }
  j["lower_bound"] = c.lower_witness ? nlohmann::json{{"value", 3}, {"unique_p2", {c.lower_witness->x, c.lower_witness->u, c.lower_witness->y}}}
                                     : nlohmann::json(nullptr);
  j["family"] = c.family;
  j["notes"] = c.notes;
  j["seed"] = c.seed;
  j["tolerances"] = tol_to_json(c.tol);
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != "q2cert/1") throw std::invalid_argument("unsupported schema");
    Certificate c;
    c.input_graph6 = j.at("input_graph6").get<std::string>();
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    const auto tags = j.at("theorem_route").get<std::vector<std::string>>();
    const auto& detail = j.at("route_detail");
    if (detail.size() != tags.size()) throw std::invalid_argument("route detail length mismatch");
    for (std::size_t i = 0; i < tags.size(); ++i) {
      RouteStep s{detail.at(i).at("rule").get<std::string>(), detail.at(i).at("graph6").get<std::string>()};
      if (s.rule != tags[i]) throw std::invalid_argument("route detail disagrees with route tags");
      c.route.push_back(std::move(s));
    }
    if (!j.at("realization").is_null()) c.realization = realization_from_json(j.at("realization"));
    if (!j.at("ssp").is_null()) c.ssp = ssp_from_json(j.at("ssp"));
    if (!j.at("trace").is_null()) {
      const auto& t = j.at("trace");
      TraceRecord tr;
      tr.reduced_graph6 = t.at("reduced_graph6").get<std::string>();
      tr.labels = t.at("labels").get<std::vector<int>>();
      for (const auto& s : t.at("steps"))
        tr.steps.push_back({s.at("removed").get<int>(), s.at("kept").get<int>(), s.at("hash").get<std::string>()});
      c.trace = std::move(tr);
    }
    if (!j.at("lower_bound").is_null()) {
      const auto& lb = j.at("lower_bound");
      if (lb.at("value").get<int>() != 3) throw std::invalid_argument("lower bound value must be 3");
      const auto t = lb.at("unique_p2").get<std::vector<int>>();
      if (t.size() != 3) throw std::invalid_argument("unique-P2 witness needs three vertices");
      c.lower_witness = PathTriple{t[0], t[1], t[2]};
    }
    c.family = j.at("family").get<std::string>();
    c.notes = j.at("notes").get<std::vector<std::string>>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.tol = tol_from_json(j.at("tolerances"));
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("malformed certificate: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------
// Verification

namespace {

struct StepFailure {
  std::string step;
  std::string message;
};

void fail(const std::string& step, const std::string& message) { throw StepFailure{step, message}; }

/// Checks a claimed realization of g with at most `max_distinct` eigenvalues
/// (exactly 2 when max_distinct == 2).
void check_realization(const Realization& r, const Graph& g, int max_distinct, const Tolerances& tol,
                       std::vector<std::string>& passed) {
  const int n = g.order();
  if (r.pattern.order() != n || r.matrix.rows() != n) fail("dimensions", "matrix order differs from the graph");
  if (r.pattern != g) fail("pattern", "declared pattern differs from the input graph");
  passed.push_back("dimensions");
  if (r.exact ? !r.exact->is_symmetric() : r.matrix != r.matrix.transpose()) fail("symmetry", "matrix is not symmetric");
  passed.push_back("symmetry");
  const PatternResult pat = r.exact ? pattern_check_exact(*r.exact, g) : pattern_check(r.matrix, g, tol.nonzero_floor, tol.zero_ceiling);
  if (!pat.ok) fail("pattern", "entry (" + std::to_string(pat.row) + "," + std::to_string(pat.col) + "): " + pat.reason);
  passed.push_back("pattern");
  const SpectrumSummary spec = r.exact ? distinct_eigenvalues_exact(*r.exact) : distinct_eigenvalues(r.matrix, tol.eigen_cluster);
  if (spec.ambiguous) fail("spectrum", "eigenvalue clustering is ambiguous");
  if (max_distinct == 2) {
    if (spec.distinct_count != 2) fail("spectrum", "expected 2 distinct eigenvalues, found " + std::to_string(spec.distinct_count));
    if (!r.exact) {
      const double scale = std::max(1.0, r.matrix.cwiseAbs().maxCoeff());
      const double res = minimal_polynomial_residual(r.matrix, spec.cluster_values[0], spec.cluster_values[1]);
      if (res > 1e-9 * scale * scale) fail("spectrum", "minimal polynomial residual " + format_double(res));
    }
  } else if (spec.distinct_count > max_distinct || spec.distinct_count < 2) {
    fail("spectrum", "upper-bound witness has " + std::to_string(spec.distinct_count) + " distinct eigenvalues");
  }
  passed.push_back("spectrum");
}

}  // namespace

VerifyReport verify_certificate(const nlohmann::json& j) {
  VerifyReport rep;
  try {
    Certificate c;
    try {
      c = certificate_from_json(j);
    } catch (const std::exception& ex) {
      fail("schema", ex.what());
    }
    rep.passed.push_back("schema");
    Graph g;
    try {
      g = parse_graph6(c.input_graph6);
    } catch (const std::exception& ex) {
      fail("graph6", ex.what());
    }
    if (!g.connected()) fail("graph6", "input graph is disconnected");
    rep.passed.push_back("graph6");

    for (const auto& step : c.route) {
      Graph h;
      try {
        h = parse_graph6(step.graph6);
      } catch (const std::exception& ex) {
        fail("route", step.rule + ": " + ex.what());
      }
      const std::string why = rule_hypothesis_violation(step.rule, h);
      if (!why.empty()) fail("route", step.rule + ": " + why);
    }
    if (!c.route.empty() && c.route.front().graph6 != c.input_graph6) fail("route", "route does not start at the input graph");
    rep.passed.push_back("route");

    if (c.trace) {
      try {
        const Graph reduced = parse_graph6(c.trace->reduced_graph6);
        if (replay(reduced, c.trace->labels, c.trace->steps, true) != g) fail("trace", "replay does not rebuild the input");
        if (!is_simplified(reduced)) fail("trace", "reduced graph still has complement twins");
      } catch (const GraphError& ex) {
        fail("trace", ex.what());
      } catch (const ParseError& ex) {
        fail("trace", ex.what());
      }
      rep.passed.push_back("trace");
    }

    switch (c.verdict) {
      case Verdict::Q2: {
        if (!c.realization) fail("realization", "Q2 verdict without a realization");
        if (c.route.empty()) fail("route", "Q2 verdict without a route");
        if (c.lower_witness) fail("lower_bound", "Q2 verdict with a lower bound of 3");
        if (!c.family.empty()) fail("route", "Q2 verdict carrying a Q3 family tag");
        check_realization(*c.realization, g, 2, c.tol, rep.passed);
        const SpectrumSummary spec = c.realization->exact ? distinct_eigenvalues_exact(*c.realization->exact)
                                                          : distinct_eigenvalues(c.realization->matrix, c.tol.eigen_cluster);
        const auto& rec = j.at("spectrum");
        const auto values = rec.at("values").get<std::vector<double>>();
        const auto mult = rec.at("multiplicities").get<std::vector<int>>();
        if (rec.at("distinct_count").get<int>() != spec.distinct_count || values.size() != spec.cluster_values.size() ||
            mult != spec.multiplicities)
          fail("spectrum_record", "recorded spectrum summary disagrees");
        for (std::size_t i = 0; i < values.size(); ++i) {
          if (std::abs(values[i] - spec.cluster_values[i]) > 1e-8 * std::max(1.0, std::abs(values[i])))
            fail("spectrum_record", "recorded eigenvalue " + format_double(values[i]) + " disagrees");
        }
        rep.passed.push_back("spectrum_record");
        if (c.ssp) {
          const auto now = verify_realization(*c.realization, true, c.tol).ssp;
          if (!now || now->verdict != c.ssp->verdict || now->kernel_dimension != c.ssp->kernel_dimension)
            fail("ssp", "recorded SSP verdict does not reproduce");
          rep.passed.push_back("ssp");
        }
        break;
      }
      case Verdict::Q3: {
        if (!c.lower_witness) fail("lower_bound", "Q3 verdict without a unique-P2 witness");
        const auto p2 = unique_p2_violations(g);
        if (std::find(p2.begin(), p2.end(), *c.lower_witness) == p2.end())
          fail("lower_bound", "witness is not a unique path of length two");
        rep.passed.push_back("lower_bound");
        if (!c.realization && c.family.empty()) fail("upper_bound", "no upper-bound witness and no family tag");
        if (!c.family.empty()) {
          const Graph gbar = complement(g);
          const SpecialFamily f = recognize(gbar);
          if (f.kind != SpecialFamily::Kind::SabUnionK1 || to_string(f) != c.family || gbar.size() != g.order() - 2)
            fail("upper_bound", "family tag does not match the complement");
        }
        if (c.realization) check_realization(*c.realization, g, 3, c.tol, rep.passed);
        rep.passed.push_back("upper_bound");
        break;
      }
      case Verdict::Unknown:
        if (c.realization) fail("realization", "Unknown verdict carrying a realization");
        if (!c.family.empty()) fail("upper_bound", "Unknown verdict carrying a family tag");
        if (c.lower_witness) {
          const auto p2 = unique_p2_violations(g);
          if (std::find(p2.begin(), p2.end(), *c.lower_witness) == p2.end())
            fail("lower_bound", "witness is not a unique path of length two");
        }
        break;
    }
  } catch (const StepFailure& f) {
    rep.ok = false;
    rep.failing_step = f.step;
    rep.message = f.message;
  } catch (const std::exception& ex) {
    rep.ok = false;
    rep.failing_step = "internal";
    rep.message = ex.what();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Batch and sweep

BatchSummary batch_run(std::istream& in, std::ostream& out, int jobs, const PipelineConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> lines;
  std::vector<int> line_numbers;
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(first, last - first + 1));
    line_numbers.push_back(no);
  }
  std::vector<nlohmann::json> results(lines.size());
  std::vector<int> kinds(lines.size(), -1);  // verdict index or -1 for errors
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < lines.size();) {
      try {
        const Graph g = parse_graph6(lines[i]);
        const Certificate c = classify(g, cfg);
        results[i] = to_json(c);
        kinds[i] = static_cast<int>(c.verdict);
      } catch (const std::exception& ex) {
        results[i] = {{"line", line_numbers[i]}, {"input", lines[i]}, {"error", ex.what()}};
      }
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(lines.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BatchSummary s;
  for (std::size_t i = 0; i < results.size(); ++i) {
    out << results[i].dump() << '\n';
    ++s.total;
    switch (kinds[i]) {
      case 0: ++s.q2; break;
      case 1: ++s.q3; break;
      case 2: ++s.unknown; break;
      default: ++s.errors;
    }
  }
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

bool SweepReport::conjecture_holds() const {
  for (const auto& r : rows)
    if (!r.failures.empty() || !r.q3_matches_family) return false;
  return true;
}

nlohmann::json SweepReport::to_json() const {
  nlohmann::json out{{"n", n}, {"conjecture_holds", conjecture_holds()}};
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows) {
    rs.push_back({{"complement_edges", r.complement_edges},
                  {"classes", r.classes},
                  {"q2", r.q2},
                  {"q3", r.q3},
                  {"unknown", r.unknown},
                  {"failures", r.failures},
                  {"q3_graphs", r.q3_graphs},
                  {"tight_bipartite", r.tight_bipartite},
                  {"q3_matches_family", r.q3_matches_family},
                  {"family_mismatches", r.family_mismatches}});
  }
  out["rows"] = rs;
  return out;
}

SweepReport conjecture_sweep(int n, int max_complement_edges, const PipelineConfig& cfg) {
  if (n < 2 || n > 8) throw HypothesisError("conjecture_sweep: n must lie in 2..8");
  SweepReport rep;
  rep.n = n;
  const auto levels = nonisomorphic_graphs(n, max_complement_edges);
  for (int e = 0; e < static_cast<int>(levels.size()); ++e) {
    SweepRow row;
    row.complement_edges = e;
    for (const Graph& h : levels[e]) {
      const Graph g = complement(h);
      if (!g.connected()) continue;
      ++row.classes;
      const Certificate c = classify(g, cfg);
      const bool verified = verify_certificate(q2cert::to_json(c)).ok;
      const std::string g6 = write_graph6(g);
      if (c.verdict == Verdict::Q2 && verified) ++row.q2;
      else if (c.verdict == Verdict::Q3 && verified) ++row.q3;
      else ++row.unknown;
      if (c.verdict == Verdict::Q3) row.q3_graphs.push_back(g6);
      if (e <= n - 3 && !(c.verdict == Verdict::Q2 && verified)) row.failures.push_back(g6);
      if (e == n - 2 && complement_bipartite(h)) {
        ++row.tight_bipartite;
        const bool family = recognize(h).kind == SpecialFamily::Kind::SabUnionK1;
        const bool q3 = c.verdict == Verdict::Q3 && verified;
        const bool q2 = c.verdict == Verdict::Q2 && verified;
        if (family ? !q3 : !q2) {
          row.q3_matches_family = false;
          row.family_mismatches.push_back(g6);
        }
      }
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace q2cert
