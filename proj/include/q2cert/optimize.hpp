#ifndef Q2CERT_OPTIMIZE_HPP
#define Q2CERT_OPTIMIZE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>

#include "q2cert/graph.hpp"
#include "q2cert/realization.hpp"
#include "q2cert/spectral.hpp"

namespace q2cert {

/// Fills r (and J when non-null) at x.
using ResidualFunction = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac)>;

struct LmOptions {
  int max_iterations = 300;
  double tolerance = 1e-13;  // stop once ||r|| falls below this
  double initial_lambda = 1e-3;
};

struct LmResult {
  Eigen::VectorXd x;
  double residual = 0.0;  // ||r||_2
  int iterations = 0;
  bool converged = false;
};

LmResult levenberg_marquardt(const ResidualFunction& f, Eigen::VectorXd x0, const LmOptions& opt = {});

/// Symmetric matrix from x = (diagonal, then one value per edge of g in
/// g.edges() order).
Eigen::MatrixXd assemble_symmetric(const Graph& g, const Eigen::VectorXd& x);
/// ||A^2 - I||_F^2 and its gradient in the same coordinates.
double q2_objective(const Graph& g, const Eigen::VectorXd& x, Eigen::VectorXd* grad);

struct LiftOptions {
  std::uint64_t seed = 1;
  int ladder_steps = 16;      // halvings of the new-edge magnitude
  int continuation_steps = 4;
  Tolerances tol;
};

/// Perturbs a onto the larger pattern gsup keeping its spectrum. Needs SSP;
/// handles two-valued spectra and spectra with all eigenvalues simple.
Realization supergraph_lift(const Realization& a, const Graph& gsup, const LiftOptions& opt = {});

/// Realization of jdup(pattern, v) with the same two eigenvalues, built by an
/// exact rotation of diag(A, d) for an eigenvalue d of A. When the seed has
/// SSP, rotation parameters are retried until SSP is verified; with
/// keep_ssp false a rotation that loses SSP is returned as a last resort.
Realization jdup_lift(const Realization& a, int v, const Tolerances& tol = {}, bool keep_ssp = true);

/// Realization of g whose spectrum is exactly sigma (distinct values), lifted
/// from diag(sigma).
Realization prescribed_spectrum_realization(const Graph& g, const Eigen::VectorXd& sigma,
                                            const LiftOptions& opt = {});

struct SearchOptions {
  int restarts = 8;
  std::uint64_t seed = 1;
  int max_iterations = 400;
  Tolerances tol;
};

struct SearchResult {
  std::optional<Realization> realization;  // absent means inconclusive
  int restarts_used = 0;
  double best_residual = 0.0;
};

/// Pattern-constrained minimization of ||A^2 - I||_F^2 with a barrier keeping
/// edge entries away from zero.
SearchResult generic_q2_search(const Graph& g, const SearchOptions& opt = {});
/// Same search for (A^2 - I)(A - cI) = 0 with c free; best effort q <= 3.
SearchResult three_eigenvalue_search(const Graph& g, const SearchOptions& opt = {});

}  // namespace q2cert

#endif
