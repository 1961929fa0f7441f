#ifndef Q2CERT_SPECTRAL_HPP
#define Q2CERT_SPECTRAL_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "q2cert/graph.hpp"
#include "q2cert/rational.hpp"

namespace q2cert {

struct Tolerances {
  double residual = 1e-10;       // optimizer acceptance
  double nonzero_floor = 1e-8;   // pattern entries must exceed this
  double zero_ceiling = 1e-12;   // non-edge entries must stay below this
  double rank = 1e-8;            // SSP relative singular-value tolerance
  double eigen_cluster = 1e-8;   // relative eigenvalue clustering tolerance
  double search_floor = 1e-6;    // optimizer acceptance floor for pattern entries
};

struct SpectrumSummary {
  std::string mode;                       // "exact" or "floating"
  std::vector<double> eigenvalues;        // ascending (approximate in exact mode)
  std::vector<double> cluster_values;     // one representative per distinct eigenvalue
  std::vector<int> multiplicities;        // aligned with cluster_values
  int distinct_count = 0;
  bool ambiguous = false;
};

/// Floating eigen-solve with consecutive gaps below tol * scale merged;
/// gaps in [tol, 10 tol) * scale mark the summary ambiguous.
SpectrumSummary distinct_eigenvalues(const Eigen::MatrixXd& a, double tol = 1e-8);
/// Square-free factorization of the exact characteristic polynomial.
SpectrumSummary distinct_eigenvalues_exact(const RationalMatrix& a);

struct PatternResult {
  bool ok = true;
  int row = -1, col = -1;
  std::string reason;
};

PatternResult pattern_check(const Eigen::MatrixXd& a, const Graph& g, double nonzero_floor = 1e-8,
                            double zero_ceiling = 1e-12);
PatternResult pattern_check_exact(const RationalMatrix& a, const Graph& g);

struct SspReport {
  enum class Verdict { SSP, NotSSP, Inconclusive };
  std::string mode;  // "exact" or "floating"
  int constraint_rows = 0;
  int constraint_cols = 0;
  int kernel_dimension = 0;
  std::optional<double> smallest_singular_value;  // relative; absent without free variables or in exact mode
  Verdict verdict = Verdict::SSP;
};

std::string to_string(SspReport::Verdict v);

/// Linear map from the free entries of X (one per non-edge u < v) to the
/// strictly upper triangle of AX - XA.
Eigen::MatrixXd ssp_constraint_matrix(const Eigen::MatrixXd& a, const Graph& g);
RationalMatrix ssp_constraint_matrix(const RationalMatrix& a, const Graph& g);

SspReport ssp_check(const Eigen::MatrixXd& a, const Graph& g, double tol = 1e-8);
SspReport ssp_check_exact(const RationalMatrix& a, const Graph& g);

/// max |((A - l1 I)(A - l2 I))_ij| for the two cluster values of a
/// two-eigenvalue matrix.
double minimal_polynomial_residual(const Eigen::MatrixXd& a, double l1, double l2);

}  // namespace q2cert

#endif
