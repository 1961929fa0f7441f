#ifndef Q2CERT_FACTORY_HPP
#define Q2CERT_FACTORY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "q2cert/graph.hpp"
#include "q2cert/optimize.hpp"
#include "q2cert/rational.hpp"
#include "q2cert/realization.hpp"

namespace q2cert {

/// (2/s) J - I, exact.
Realization ortho_complete(int s);
/// [[B, I], [I, -B]] with B = ortho_complete(s); squares to 2I.
Realization box_k2_realization(int s);

/// The 7x7 integer matrix with two eigenvalues realizing h7().
Realization m7_matrix();
Graph h7();

struct TConstruction {
  RationalMatrix t;     // (i - j)^2
  RationalMatrix b;     // beta * t
  Rational beta;        // 1 / (2 ||t||_inf)
  std::vector<Rational> u;  // integer null vector of t
  Eigen::VectorXd v;    // u / ||u||
};
TConstruction t_construction(int k);

/// W(k+1, 0, 1): center 0, leaves 1..k+1, middles k+2..2k+2, leaf j ~ j+k+1.
Graph w_graph(int k);
/// Complement of w_graph(k) plus the edge (k+1, 2k+2).
Graph g_odd(int k);

/// Orthogonal symmetric realization of complement(w_graph(k)).
Realization w_hat(int k, double alpha);
/// w_hat with alpha taken from +-j/17 in a fixed order; first valid SSP result.
Realization w_hat_sampled(int k);

/// R symmetric with R^2 = S. Eigenvalues must be positive, or non-negative
/// when allow_singular (tiny negative rounding is clipped).
Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& s, bool allow_singular = false);

struct CycleRep {
  RationalMatrix m;                 // (n-3) x 3
  std::vector<std::vector<long>> rows;  // integer rows before scaling
  Rational epsilon;                 // scale applied to the rows after the third
  Realization gram;                 // m m^T, pattern complement(C_{n-3})
  std::vector<double> gram_eigenvalues;  // eigenvalues of m^T m
};
CycleRep cycle_complement_rep(int n);

/// B' = [M; R M1] with B'^T B' = alpha I; full_cross is false when no
/// sampled R left the bottom 3x3 block complete.
struct TriCycFactor {
  Eigen::MatrixXd b_prime;
  double alpha = 0.0;
  double epsilon = 1.0;
  bool full_cross = false;
  int attempts = 0;
};
TriCycFactor tricyc_factor(int n, std::uint64_t seed = 1);
/// Realization of complement(C_{n-3}) join K3 with eigenvalues 0 and alpha.
Realization tricyc_realization(int n, std::uint64_t seed = 1);

/// Realization of pattern(gamma) join (3 isolated vertices). gamma must be
/// PSD with eigenvalues 0 and c, the latter of multiplicity 3.
Realization k3bar_join(const Realization& gamma, std::uint64_t seed = 1);

/// Orthogonal symmetric realization of ga join gb, where the orders differ by
/// at most two.
Realization join_realization(const Graph& ga, const Graph& gb, std::uint64_t seed = 1);

/// Orthogonal symmetric realization [[sqrt(I - CC^T), C], [C^T, -sqrt(I - C^T C)]]
/// of a graph whose complement is bipartite with sides x, y.
Realization contraction_realization(const Graph& g, VertexSet x, VertexSet y, std::uint64_t seed = 1,
                                    int attempts = 40);

}  // namespace q2cert

#endif
