#include "doctest.h"

#include <random>

#include "q2cert/factory.hpp"
#include "q2cert/families.hpp"
#include "q2cert/optimize.hpp"

using namespace q2cert;

namespace {

bool squares_to(const RationalMatrix& m, const Rational& c) {
  return m * m == c * RationalMatrix::identity(m.rows());
}

int distinct(const Realization& r) { return verify_realization(r, false).spectrum.distinct_count; }

}  // namespace

TEST_CASE("ortho_complete") {
  const Realization k2 = ortho_complete(2);
  CHECK((*k2.exact)(0, 0) == 0);
  CHECK((*k2.exact)(0, 1) == 1);
  const Realization k3 = ortho_complete(3);
  CHECK((*k3.exact)(0, 0) == Rational(-1, 3));
  CHECK((*k3.exact)(1, 2) == Rational(2, 3));
  for (int s = 2; s <= 10; ++s) {
    const Realization r = ortho_complete(s);
    CHECK(squares_to(*r.exact, 1));
    CHECK(pattern_check_exact(*r.exact, Graph::complete(s)).ok);
  }
  CHECK_THROWS_AS(ortho_complete(1), HypothesisError);
}

TEST_CASE("box_k2_realization") {
  for (int s = 2; s <= 12; ++s) {
    const Realization r = box_k2_realization(s);
    CHECK(squares_to(*r.exact, 2));
    CHECK(r.pattern == box_product(s));
    require_realization(r, 2, true, "box");
  }
  CHECK(box_k2_realization(2).pattern == Graph::cycle(4).relabeled(std::vector<int>{0, 1, 3, 2}));
}

TEST_CASE("m7 matrix") {
  const Realization r = m7_matrix();
  CHECK((*r.exact)(0, 0) == 3);
  CHECK((*r.exact)(0, 1) == 1);
  CHECK((*r.exact)(4, 4) == 2);
  CHECK((*r.exact)(4, 6) == -1);
  const auto rep = verify_realization(r, true);
  CHECK(rep.pattern.ok);
  CHECK(rep.spectrum.distinct_count == 2);
  CHECK(rep.ssp->verdict == SspReport::Verdict::SSP);
  // M^2 = 4M: eigenvalues 0 and 4
  const RationalMatrix m = *r.exact;
  CHECK(m * m == Rational(4) * m);
  CHECK(rep.spectrum.cluster_values[0] == doctest::Approx(0.0));
  CHECK(rep.spectrum.cluster_values[1] == doctest::Approx(4.0));
  CHECK(rep.spectrum.multiplicities == std::vector<int>{4, 3});
  // h7 is a spanning subgraph of the odd-order graph for k = 2
  const Graph g7 = complement(with_isolated(w_star_plus(2)));
  CHECK(find_spanning_embedding(h7(), g7).has_value());
}

TEST_CASE("t_construction") {
  const TConstruction t3 = t_construction(3);
  for (int j = 0; j < 4; ++j) CHECK(t3.t(0, j) == j * j);
  CHECK(t3.u == std::vector<Rational>{1, -3, 3, -1});
  for (int k = 3; k <= 8; ++k) {
    const TConstruction t = t_construction(k);
    const int n = k + 1;
    for (int i = 0; i < n; ++i) {
      Rational tu(0);
      for (int j = 0; j < n; ++j) tu += t.t(i, j) * t.u[j];
      CHECK(tu == 0);
      CHECK(t.u[i] != 0);
    }
    const RationalMatrix b2 = t.b * t.b;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(b2(i, j) > 0);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t.b.to_double()).eigenvalues();
    CHECK(ev.cwiseAbs().maxCoeff() < 1.0);
    CHECK(t.v.norm() == doctest::Approx(1.0));
  }
  const TConstruction t5 = t_construction(5);
  for (int j = 3; j < 6; ++j) CHECK(t5.u[j] == -1);
  CHECK_THROWS_AS(t_construction(2), HypothesisError);
}

TEST_CASE("symmetric_sqrt") {
  CHECK(symmetric_sqrt(Eigen::MatrixXd::Identity(3, 3)).isApprox(Eigen::MatrixXd::Identity(3, 3)));
  Eigen::MatrixXd d = Eigen::Vector2d(4, 9).asDiagonal();
  CHECK(symmetric_sqrt(d).isApprox(Eigen::MatrixXd(Eigen::Vector2d(2, 3).asDiagonal())));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd g(6, 6);
    for (int i = 0; i < 36; ++i) g.data()[i] = gauss(rng);
    const Eigen::MatrixXd s = g * g.transpose() + 0.1 * Eigen::MatrixXd::Identity(6, 6);
    const Eigen::MatrixXd r = symmetric_sqrt(s);
    CHECK((r * r - s).norm() < 1e-11 * s.norm());
  }
  Eigen::MatrixXd singular = Eigen::Vector2d(0, 1).asDiagonal();
  CHECK_THROWS(symmetric_sqrt(singular));
  CHECK_NOTHROW(symmetric_sqrt(singular, true));
  Eigen::MatrixXd negative = Eigen::Vector2d(-1, 1).asDiagonal();
  CHECK_THROWS(symmetric_sqrt(negative, true));
}

TEST_CASE("w_hat") {
  for (int k = 3; k <= 8; ++k) {
    CAPTURE(k);
    const Realization r = w_hat_sampled(k);
    const int n = 2 * k + 3;
    CHECK((r.matrix * r.matrix - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-10);
    CHECK(r.pattern == complement(w_graph(k)));
    CHECK(has_ssp(r));
    const Eigen::MatrixXd c1 = r.matrix.block(1, 1, k + 1, k + 1);
    const Eigen::MatrixXd c2 = r.matrix.block(k + 2, k + 2, k + 1, k + 1);
    const Eigen::VectorXd v = r.matrix.block(1, 0, k + 1, 1);
    CHECK((c1 + c2 + v * v.transpose()).norm() < 1e-10);
    CHECK(find_spanning_embedding(r.pattern, g_odd(k)).has_value());
  }
  CHECK_THROWS_AS(w_hat(3, 0.0), HypothesisError);
  // W(k+1,0,1) contains W(k,1,1) u K1
  for (int k = 2; k <= 6; ++k) CHECK(find_spanning_embedding(with_isolated(w_star_plus(k)), w_graph(k)).has_value());
}

TEST_CASE("cycle_complement_rep") {
  CHECK(1 * 1 + 1 * 3 + 2 * -2 == 0);
  const CycleRep six = cycle_complement_rep(6);
  CHECK(six.m == RationalMatrix::from_integers({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}));
  CHECK(six.gram.pattern == Graph(3));
  const Eigen::Matrix3d ptp = RationalMatrix::from_integers({{1, 1, 2}, {1, 3, -2}, {-1, 1, 1}}).to_double().transpose() *
                              RationalMatrix::from_integers({{1, 1, 2}, {1, 3, -2}, {-1, 1, 1}}).to_double();
  const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(ptp).eigenvalues();
  CHECK(ev[0] == doctest::Approx(2.0));
  CHECK(ev[1] == doctest::Approx(7.0));
  CHECK(ev[2] == doctest::Approx(14.0));
  for (int n = 7; n <= 16; ++n) {
    CAPTURE(n);
    const CycleRep rep = cycle_complement_rep(n);
    const int count = n - 3;
    for (int i = 0; i < count; ++i) {
      for (int j = i + 1; j < count; ++j) {
        const bool consecutive = j == i + 1 || (i == 0 && j == count - 1);
        CHECK(((*rep.gram.exact)(i, j) == 0) == consecutive);
      }
    }
    // Weyl margin: eps^2 ||Q^T Q||_F <= gap/4 < gap/2
    Rational frob2(0);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Rational e(0);
        for (int i = 3; i < count; ++i) e += rep.rows[i][a] * rep.rows[i][b];
        frob2 += e * e;
      }
    const Rational e2 = rep.epsilon * rep.epsilon;
    CHECK(e2 * e2 * frob2 < Rational(25, 4));
    CHECK(rep.gram_eigenvalues[1] - rep.gram_eigenvalues[0] > 0.5);
    CHECK(rep.gram_eigenvalues[2] - rep.gram_eigenvalues[1] > 0.5);
  }
}

TEST_CASE("tricyc_realization") {
  for (int n : {6, 8, 10, 12}) {
    CAPTURE(n);
    const Realization r = tricyc_realization(n);
    CHECK(r.pattern == join(complement(Graph::cycle(n - 3)), Graph::complete(3)));
    const auto rep = verify_realization(r, true);
    CHECK(rep.spectrum.distinct_count == 2);
    CHECK(rep.spectrum.multiplicities == std::vector<int>{n - 3, 3});
    CHECK(rep.ssp->verdict == SspReport::Verdict::SSP);
  }
  CHECK_THROWS_AS(tricyc_realization(7), HypothesisError);
}

TEST_CASE("one-edge 3x3 block keeps SSP") {
  Eigen::Matrix3d c;
  c << 2, 1, 0, 1, 3, 0, 0, 0, 7;
  Graph h(3);
  h.add_edge(0, 1);
  CHECK(ssp_check(c, h).verdict == SspReport::Verdict::SSP);
}

TEST_CASE("k3bar_join") {
  const Realization gamma = tricyc_realization(8);
  const Realization r = k3bar_join(gamma);
  CHECK(r.pattern.order() == 11);
  CHECK(r.pattern == join(gamma.pattern, Graph(3)));
  CHECK(has_ssp(r));
  // the Gram factor of the output is scalar: M M^T has eigenvalues 0 and c + 1
  const auto spec = verify_realization(r, false).spectrum;
  CHECK(spec.cluster_values[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(spec.multiplicities == std::vector<int>{8, 3});
  CHECK_THROWS_AS(k3bar_join(cycle_complement_rep(8).gram), HypothesisError);
}

TEST_CASE("supergraph_lift") {
  const Realization prism = box_k2_realization(3);
  CHECK(supergraph_lift(prism, prism.pattern).matrix == prism.matrix);
  Graph chord = prism.pattern;
  chord.add_edge(0, 4);
  const Realization lifted = supergraph_lift(prism, chord);
  CHECK(lifted.pattern == chord);
  require_realization(lifted, 2, true, "lift");
  const Eigen::VectorXd e0 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(prism.matrix).eigenvalues();
  const Eigen::VectorXd e1 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(lifted.matrix).eigenvalues();
  CHECK((e0 - e1).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(lifted.matrix(0, 4)) >= 1e-6);

  // seed without SSP: the empty graph with a repeated eigenvalue
  const Realization flat = make_floating(Eigen::MatrixXd::Identity(2, 2), Graph(2), Construction::Diagonal);
  CHECK_THROWS_AS(supergraph_lift(flat, Graph::complete(2)), HypothesisError);

  // lifting the prism all the way to K6
  const Realization full = supergraph_lift(prism, Graph::complete(6));
  require_realization(full, 2, true, "lift to K6");
}

TEST_CASE("prescribed spectrum") {
  Eigen::VectorXd sigma(5);
  sigma << -0.7, -0.2, 0.1, 0.5, 0.8;
  const Realization r = prescribed_spectrum_realization(Graph::complete(5), sigma);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(r.matrix).eigenvalues();
  CHECK((ev - sigma).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(pattern_check(r.matrix, Graph::complete(5)).ok);
}

TEST_CASE("jdup_lift") {
  const Realization k3 = jdup_lift(ortho_complete(2), 0);
  CHECK(k3.pattern == Graph::complete(3));
  CHECK(k3.exact.has_value());
  CHECK(distinct(k3) == 2);
  Realization r = ortho_complete(2);
  for (int t = 1; t <= 5; ++t) {
    r = jdup_lift(r, t % r.pattern.order());
    CHECK(r.pattern == Graph::complete(2 + t));
    CHECK(distinct(r) == 2);
    CHECK(has_ssp(r));
  }
  const Realization m7 = m7_matrix();
  const Realization m8 = jdup_lift(m7, 0);
  CHECK(m8.pattern == jdup(h7(), 0));
  CHECK(distinct(m8) == 2);
  CHECK(has_ssp(m8));
  // irrational eigenvalues take the floating path
  const Realization box = jdup_lift(box_k2_realization(3), 2);
  CHECK_FALSE(box.exact.has_value());
  CHECK(distinct(box) == 2);
}

TEST_CASE("join_realization") {
  std::mt19937_64 rng(11);
  for (int a = 1; a <= 7; ++a) {
    for (int d = 0; d <= 2; ++d) {
      const int b = a + d;
      // vertex 0 dominates, so both parts are connected
      Graph ga(a), gb(b);
      std::bernoulli_distribution coin(0.4);
      for (int i = 0; i < a; ++i)
        for (int j = i + 1; j < a; ++j)
          if (i == 0 || coin(rng)) ga.add_edge(i, j);
      for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j)
          if (i == 0 || coin(rng)) gb.add_edge(i, j);
      CAPTURE(a);
      CAPTURE(b);
      const Realization r = join_realization(ga, gb, a * 10 + d);
      CHECK(r.pattern == join(ga, gb));
      CHECK(distinct(r) == 2);
    }
  }
  CHECK_THROWS_AS(join_realization(Graph(4), Graph(1)), HypothesisError);
}

TEST_CASE("contraction_realization") {
  // complement is a perfect matching across the sides
  Graph bar(6);
  for (int i = 0; i < 3; ++i) bar.add_edge(2 * i, 2 * i + 1);
  const Graph g = complement(bar);
  const VertexSet x = bit(0) | bit(2) | bit(4), y = bit(1) | bit(3) | bit(5);
  const Realization r = contraction_realization(g, x, y);
  CHECK(r.pattern == g);
  CHECK(distinct(r) == 2);
  CHECK((r.matrix * r.matrix - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-9);
  CHECK_THROWS_AS(contraction_realization(g, x, 0), HypothesisError);
  // a path complement with alternating sides leaves a disconnected cross pattern
  const Graph p6 = complement(Graph::path(6));
  CHECK_THROWS_AS(contraction_realization(p6, x, y, 1, 5), ConstructionError);
}

TEST_CASE("q2 objective gradient matches finite differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const Graph g = complement(Graph::cycle(7));
  const int dim = g.order() + g.size();
  int worst_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) x[i] = unit(rng);
    Eigen::VectorXd grad;
    q2_objective(g, x, &grad);
    Eigen::VectorXd fd(dim);
    const double h = 1e-6;
    for (int i = 0; i < dim; ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      fd[i] = (q2_objective(g, xp, nullptr) - q2_objective(g, xm, nullptr)) / (2 * h);
    }
    if ((grad - fd).norm() <= 1e-5 * std::max(1.0, grad.norm())) ++worst_ok;
  }
  CHECK(worst_ok == 100);
}

TEST_CASE("generic_q2_search") {
  const SearchResult k4 = generic_q2_search(Graph::complete(4));
  REQUIRE(k4.realization.has_value());
  CHECK(distinct(*k4.realization) == 2);

  const SearchResult p3 = generic_q2_search(Graph::path(3), {.restarts = 12});
  CHECK_FALSE(p3.realization.has_value());

  const Graph kk = join(Graph::complete(4), Graph(4));
  const SearchResult j = generic_q2_search(kk);
  REQUIRE(j.realization.has_value());
  CHECK(j.realization->pattern == kk);
  const Eigen::MatrixXd cross = j.realization->matrix.topRightCorner(4, 4);
  CHECK(std::abs(cross.determinant()) > 1e-8);
}

TEST_CASE("three eigenvalue search") {
  const SearchResult p3 = three_eigenvalue_search(Graph::path(3));
  REQUIRE(p3.realization.has_value());
  CHECK(distinct(*p3.realization) <= 3);
}
