#ifndef Q2CERT_PIPELINE_HPP
#define Q2CERT_PIPELINE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "q2cert/graph.hpp"
#include "q2cert/realization.hpp"
#include "q2cert/spectral.hpp"
#include "q2cert/structure.hpp"

namespace q2cert {

struct PipelineConfig {
  std::uint64_t seed = 1;
  int restarts = 8;         // search budget per search call
  bool exact_only = false;  // refuse floating constructions
  bool allow_search = true;
  Tolerances tol;
};

enum class Verdict { Q2, Q3, Unknown };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// One applied rule and the graph (graph6) it was applied to.
struct RouteStep {
  std::string rule;
  std::string graph6;
};

struct TraceRecord {
  std::string reduced_graph6;
  std::vector<int> labels;
  ReductionTrace steps;
};

struct Certificate {
  std::string input_graph6;
  Verdict verdict = Verdict::Unknown;
  std::vector<RouteStep> route;
  std::optional<Realization> realization;  // Q2: the witness; Q3: the upper-bound witness
  std::optional<SspReport> ssp;
  std::optional<TraceRecord> trace;
  std::optional<PathTriple> lower_witness;  // Q3
  std::string family;                       // Q3 via the double-star family
  std::vector<std::string> notes;
  std::uint64_t seed = 1;
  Tolerances tol;
};

/// Rule tags that may appear in a route.
const std::vector<std::string>& known_rules();
/// Empty when the rule's hypothesis holds for g, else the reason.
std::string rule_hypothesis_violation(const std::string& rule, const Graph& g);

/// Decision procedure for a connected graph of order 2..20.
Certificate classify(const Graph& g, const PipelineConfig& cfg = {});

nlohmann::json to_json(const Certificate& c);
/// Throws std::invalid_argument on malformed input.
Certificate certificate_from_json(const nlohmann::json& j);
nlohmann::json realization_to_json(const Realization& r);
Realization realization_from_json(const nlohmann::json& j);

struct VerifyReport {
  bool ok = true;
  std::string failing_step;  // empty when ok
  std::string message;
  std::vector<std::string> passed;
};

/// Re-checks a certificate from its JSON body alone.
VerifyReport verify_certificate(const nlohmann::json& j);

struct BatchSummary {
  int total = 0;
  int q2 = 0, q3 = 0, unknown = 0, errors = 0;
  double seconds = 0.0;
};

/// One JSON line per input line, in input order. Unparseable lines produce an
/// error record and processing continues.
BatchSummary batch_run(std::istream& in, std::ostream& out, int jobs, const PipelineConfig& cfg = {});

struct SweepRow {
  int complement_edges = 0;
  int classes = 0;
  int q2 = 0, q3 = 0, unknown = 0;
  std::vector<std::string> failures;      // e <= n-3 without a Q2 certificate
  std::vector<std::string> q3_graphs;     // graph6 of Q3 verdicts
  int tight_bipartite = 0;                // e = n-2 with bipartite complement
  bool q3_matches_family = true;          // tight bipartite rows: Q3 set == S_{a,b} u K1 complements
  std::vector<std::string> family_mismatches;
};

struct SweepReport {
  int n = 0;
  std::vector<SweepRow> rows;
  bool conjecture_holds() const;
  nlohmann::json to_json() const;
};

SweepReport conjecture_sweep(int n, int max_complement_edges, const PipelineConfig& cfg = {});

}  // namespace q2cert

#endif
