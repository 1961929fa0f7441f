#ifndef Q2CERT_STRUCTURE_HPP
#define Q2CERT_STRUCTURE_HPP

#include <optional>
#include <string>
#include <vector>

#include "q2cert/errors.hpp"
#include "q2cert/families.hpp"
#include "q2cert/graph.hpp"

namespace q2cert {

/// One twin removal, in original labels.
struct ReductionStep {
  int removed_vertex;
  int kept_twin;
  std::string graph_before_hash;

  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

using ReductionTrace = std::vector<ReductionStep>;

struct Simplification {
  Graph graph;              // reduced graph, vertices in increasing label order
  std::vector<int> labels;  // original label of each reduced vertex
  ReductionTrace trace;
};

/// Hash recorded in traces: hex FNV-1a of the graph6 string.
std::string trace_hash(const Graph& g);

/// Repeatedly removes the lower-labeled vertex of the lexicographically first
/// pair of non-isolated complement vertices with equal complement
/// neighborhoods, until none remain.
Simplification simplify(const Graph& g);
/// True iff no two non-isolated vertices of the complement are twins there.
bool is_simplified(const Graph& g);

/// Rebuilds the original graph from a reduced one by applying jdup in reverse
/// trace order. Throws GraphError if a recorded hash does not match.
Graph replay(const Graph& reduced, const std::vector<int>& labels, const ReductionTrace& trace,
             bool check_hashes = true);

/// Sets M_1, M_2 (one side) and N_1, N_2 (other side) such that M_i and N_i
/// are completely joined in the complement for i = 1, 2.
struct SplitWitness {
  VertexSet m1 = 0, m2 = 0, n1 = 0, n2 = 0;

  bool nontrivial() const { return (m1 && m2) || (n1 && n2); }
  friend bool operator==(const SplitWitness&, const SplitWitness&) = default;
};

bool is_split_witness(const Graph& gbar, const PartiteSplit& split, const SplitWitness& w);

/// A nontrivial witness for the given bipartition of `gbar`, or nullopt when
/// none exists.
std::optional<SplitWitness> find_kmn_split(const Graph& gbar, const PartiteSplit& split);

/// A bipartition for the contraction construction when no bipartition of
/// `gbar` (both sides nonempty) admits a nontrivial witness; nullopt otherwise.
std::optional<PartiteSplit> ngthm_split(const Graph& gbar);

struct Assertion {
  bool holds;
  std::string detail;
};

struct SimplifiedReport {
  SplitWitness normalized;   // n2 = 0 after renaming
  std::string zeroed_part;   // which original part was empty: "n2", "n1", "m2" or "m1"
  Assertion part_empty;      // (1) some part is empty
  Assertion m1_is_one;       // (2)
  Assertion n1_bound;        // (3) n even => n_1 <= n/2 - 1
  Assertion isolated_count;  // (4) n even => at least n/2 - n_1 isolated complement vertices
  bool all_hold() const {
    return part_empty.holds && m1_is_one.holds && n1_bound.holds && isolated_count.holds;
  }
};

/// Witness normalized so that its empty part is N_2.
SplitWitness normalize_witness(const SplitWitness& w, const PartiteSplit& split, std::string* zeroed,
                               PartiteSplit* oriented);

/// Checks the structural consequences for a simplified graph other than C4.
SimplifiedReport validate_simplified_properties(const Graph& g, const PartiteSplit& split,
                                                const SplitWitness& w);

struct IsolationAnalysis {
  VertexSet isolated = 0;  // I
  VertexSet v1 = 0;        // degree-one vertices of M_2
  VertexSet v2 = 0;        // vertices of M_2 with degree at least two
  SplitWitness witness;    // normalized, n_2 = 0
  PartiteSplit split;
  bool simplified = false;
};

/// Isolated-vertex analysis of a bipartite complement with
/// e <= n-3, or e = n-2 with a cycle. Twin-freeness is reported, not required.
IsolationAnalysis count_isolated(const Graph& gbar);

struct BipartiteVerdict {
  enum class Kind { Q2ByNGThm, Q2ByBoxProduct, Q2ByJdupLift, Q3Family, NeedsRealization };
  Kind kind;
  std::optional<PartiteSplit> split;  // bipartition used by the contraction construction
  bool on_simplified = false;         // NGThm applies to the simplified graph
  int a = 0, b = 0;                   // S_{a,b} parameters for Q3Family
  int k = 0;                          // W(k,1,1) parameter for NeedsRealization
  Simplification simplification;
};

std::string to_string(BipartiteVerdict::Kind k);

/// Decision for connected g whose complement is bipartite with at most n-2 edges.
BipartiteVerdict classify_bipartite_complement(const Graph& g);

}  // namespace q2cert

#endif
