#ifndef Q2CERT_REALIZATION_HPP
#define Q2CERT_REALIZATION_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "q2cert/errors.hpp"
#include "q2cert/graph.hpp"
#include "q2cert/rational.hpp"
#include "q2cert/spectral.hpp"

namespace q2cert {

enum class Construction {
  OrthoComplete,
  BoxK2,
  M7,
  WHat,
  CycleRep,
  TriCyc,
  K3BarJoin,
  Lift,
  JdupLift,
  Contraction,  // bipartite-complement orthogonal block construction
  Join,         // orthogonal join of two prescribed-spectrum blocks
  Diagonal,
  Search,
  Permuted,
};

std::string to_string(Construction c);
Construction construction_from_string(const std::string& s);

/// A symmetric matrix together with the graph whose off-diagonal pattern it
/// is meant to realize.
struct Realization {
  Eigen::MatrixXd matrix;
  std::optional<RationalMatrix> exact;
  Graph pattern;
  Construction construction = Construction::Search;
  std::map<std::string, double> parameters;
  std::vector<std::string> history;  // earlier constructions, oldest first
};

Realization make_exact(const RationalMatrix& m, const Graph& pattern, Construction c);
Realization make_floating(const Eigen::MatrixXd& m, const Graph& pattern, Construction c);

struct RealizationReport {
  PatternResult pattern;
  SpectrumSummary spectrum;
  std::optional<SspReport> ssp;
};

/// Exact checks when exact entries are present, floating otherwise.
RealizationReport verify_realization(const Realization& r, bool check_ssp, const Tolerances& tol = {});
/// True iff the SSP verdict is SSP (exact when available).
bool has_ssp(const Realization& r, const Tolerances& tol = {});

/// Throws ConstructionError unless the pattern holds and the spectrum has
/// exactly `distinct` unambiguous values (and SSP when requested).
void require_realization(const Realization& r, int distinct, bool require_ssp, const std::string& what,
                         const Tolerances& tol = {});

/// Relabels so that new vertex i is old vertex perm[i] (matrix and pattern).
Realization permuted(const Realization& r, const std::vector<int>& perm);

/// Affine map sending the two cluster values to -1 and +1.
Eigen::MatrixXd normalize_two_valued(const Eigen::MatrixXd& a, double l1, double l2);
Eigen::MatrixXd denormalize_two_valued(const Eigen::MatrixXd& a, double l1, double l2);

/// Derived seed for stream `index` of a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace q2cert

#endif
