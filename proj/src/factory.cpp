#include "q2cert/factory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace q2cert {

namespace {

void stamp(Realization& r, const std::string& key, double value) { r.parameters[key] = value; }

Eigen::Matrix3d random_orthogonal(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  Eigen::Matrix3d q = qr.householderQ();
  const Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

bool totally_nonzero(const Eigen::MatrixXd& m, double floor) { return m.cwiseAbs().minCoeff() >= floor; }

std::vector<int> inverse_of(const std::vector<int>& order) {
  std::vector<int> inv(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = static_cast<int>(i);
  return inv;
}

long dot(const std::vector<long>& a, const std::vector<long>& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

std::vector<long> cross(const std::vector<long>& a, const std::vector<long>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void reduce(std::vector<long>& w) {
  const long g = std::gcd(std::gcd(std::abs(w[0]), std::abs(w[1])), std::abs(w[2]));
  if (g > 1)
    for (long& x : w) x /= g;
}

}  // namespace

Realization ortho_complete(int s) {
  if (s < 2) throw HypothesisError("ortho_complete: s must be at least 2");
  RationalMatrix m(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) m(i, j) = Rational(2, s) - (i == j ? 1 : 0);
  Realization r = make_exact(m, Graph::complete(s), Construction::OrthoComplete);
  stamp(r, "s", s);
  return r;
}

Realization box_k2_realization(int s) {
  const Realization b = ortho_complete(s);
  RationalMatrix m(2 * s, 2 * s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      m(i, j) = (*b.exact)(i, j);
      m(s + i, s + j) = -(*b.exact)(i, j);
    }
    m(i, s + i) = m(s + i, i) = 1;
  }
  Graph g = disjoint_union(Graph::complete(s), Graph::complete(s));
  for (int i = 0; i < s; ++i) g.add_edge(i, s + i);
  Realization r = make_exact(m, g, Construction::BoxK2);
  stamp(r, "s", s);
  return r;
}

Realization m7_matrix() {
  const RationalMatrix m = RationalMatrix::from_integers({{3, 1, 1, 1, 0, 0, 0},
                                                          {1, 1, 0, 0, 1, -1, 0},
                                                          {1, 0, 1, 0, -1, 0, 1},
                                                          {1, 0, 0, 1, 0, 1, -1},
                                                          {0, 1, -1, 0, 2, -1, -1},
                                                          {0, -1, 0, 1, -1, 2, -1},
                                                          {0, 0, 1, -1, -1, -1, 2}});
  return make_exact(m, h7(), Construction::M7);
}

Graph h7() {
  // complement: triangle {1,2,3}, matching 1-6, 2-5, 3-4, and 0 adjacent to 4, 5, 6
  Graph bar(7);
  for (auto [u, v] : {std::pair{1, 2}, {1, 3}, {2, 3}, {1, 6}, {2, 5}, {3, 4}, {0, 4}, {0, 5}, {0, 6}}) bar.add_edge(u, v);
  return complement(bar);
}

TConstruction t_construction(int k) {
  if (k < 3) throw HypothesisError("t_construction: k must be at least 3");
  const int n = k + 1;
  TConstruction out;
  out.t = RationalMatrix(n, n);
  Rational norm_inf(0);
  for (int i = 0; i < n; ++i) {
    Rational row(0);
    for (int j = 0; j < n; ++j) {
      out.t(i, j) = (i - j) * (i - j);
      row += out.t(i, j);
    }
    norm_inf = std::max(norm_inf, row);
  }
  out.beta = 1 / (2 * norm_inf);
  out.b = out.beta * out.t;
  out.u.assign(n, Rational(0));
  for (int i = 4; i <= n; ++i) {  // 1-based as in the closed form
    out.u[0] += Rational((i - 2) * (i - 3), 2);
    out.u[1] -= (i - 1) * (i - 3);
    out.u[2] += Rational((i - 1) * (i - 2), 2);
    out.u[i - 1] -= 1;
  }
  out.v.resize(n);
  for (int i = 0; i < n; ++i) out.v[i] = out.u[i].convert_to<double>();
  out.v.normalize();
  return out;
}

Graph w_graph(int k) {
  Graph w(2 * k + 3);
  for (int j = 1; j <= k + 1; ++j) {
    w.add_edge(0, j + k + 1);
    w.add_edge(j, j + k + 1);
  }
  return w;
}

Graph g_odd(int k) {
  Graph g = complement(w_graph(k));
  g.add_edge(k + 1, 2 * k + 2);
  return g;
}

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& s, bool allow_singular) {
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, s.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("symmetric_sqrt: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  Eigen::VectorXd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] > 1e-12 * scale) continue;
    if (!allow_singular && ev[i] <= 0) throw std::invalid_argument("symmetric_sqrt: matrix is not positive definite");
    if (!allow_singular) continue;  // tiny but positive
    if (ev[i] < -1e-12 * scale) throw std::invalid_argument("symmetric_sqrt: matrix is not positive semidefinite");
    ev[i] = 0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

Realization w_hat(int k, double alpha) {
  if (alpha == 0.0 || std::abs(alpha) > 1.0) throw HypothesisError("w_hat: alpha must lie in [-1,1] and be nonzero");
  const TConstruction tc = t_construction(k);
  const int m = k + 1, n = 2 * k + 3;
  const Eigen::MatrixXd b = tc.b.to_double();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd ab2 = alpha * alpha * b * b;
  // v is a null vector of B, so the first argument is singular.
  const Eigen::MatrixXd c1 = symmetric_sqrt(id - ab2 - tc.v * tc.v.transpose(), true);
  const Eigen::MatrixXd c2 = -symmetric_sqrt(id - ab2);
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(n, n);
  mat.block(0, 1, 1, m) = tc.v.transpose();
  mat.block(1, 0, m, 1) = tc.v;
  mat.block(1, 1, m, m) = c1;
  mat.block(1, 1 + m, m, m) = alpha * b;
  mat.block(1 + m, 1, m, m) = alpha * b;
  mat.block(1 + m, 1 + m, m, m) = c2;
  Realization r = make_floating(mat, complement(w_graph(k)), Construction::WHat);
  stamp(r, "k", k);
  stamp(r, "alpha", alpha);
  stamp(r, "beta", tc.beta.convert_to<double>());
  if ((r.matrix * r.matrix - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-10)
    throw ConstructionError("w_hat: matrix is not orthogonal");
  require_realization(r, 2, false, "w_hat");
  return r;
}

Realization w_hat_sampled(int k) {
  std::string last;
  for (int j = 16; j >= 1; --j) {
    for (int sign : {1, -1}) {
      try {
        Realization r = w_hat(k, sign * j / 17.0);
        if (has_ssp(r)) return r;
        last = "SSP not verified";
      } catch (const ConstructionError& e) {
        last = e.what();
      }
    }
  }
  throw ConstructionError("w_hat_sampled: every alpha failed (" + last + ")");
}

CycleRep cycle_complement_rep(int n) {
  if (n < 6) throw HypothesisError("cycle_complement_rep: n must be at least 6");
  CycleRep out;
  const int count = n - 3;
  if (n == 6) {
    out.rows = {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}};
  } else {
    std::vector<std::vector<long>> vs{{1, 1, 2}, {1, 3, -2}, {-1, 1, 1}};
    while (static_cast<int>(vs.size()) < count - 1) {
      const auto& last = vs.back();
      std::vector<long> p = cross(last, {1, 0, 0});
      if (dot(p, p) == 0) p = cross(last, {0, 1, 0});
      const std::vector<long> q = cross(last, p);
      std::optional<std::vector<long>> found;
      int attempts = 0;
      for (long radius = 1; !found && attempts < 1000; ++radius) {
        for (long a = -radius; a <= radius && !found && attempts < 1000; ++a) {
          for (long b = -radius; b <= radius && !found && attempts < 1000; ++b) {
            if (std::max(std::abs(a), std::abs(b)) != radius) continue;
            ++attempts;
            std::vector<long> w{a * p[0] + b * q[0], a * p[1] + b * q[1], a * p[2] + b * q[2]};
            reduce(w);
            bool ok = true;
            for (std::size_t i = 0; i + 1 < vs.size() && ok; ++i) ok = dot(w, vs[i]) != 0;
            for (std::size_t i = 1; i < vs.size() && ok; ++i) ok = dot(cross(vs[i], vs[0]), w) != 0;
            if (ok) found = w;
          }
        }
      }
      if (!found) throw ConstructionError("cycle_complement_rep: sampling budget exhausted");
      vs.push_back(*found);
    }
    vs.push_back(cross(vs[0], vs.back()));
    out.rows = vs;
  }
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const bool consecutive = j == i + 1 || (i == 0 && j == count - 1 && count > 2);
      if ((dot(out.rows[i], out.rows[j]) == 0) != consecutive)
        throw ConstructionError("cycle_complement_rep: orthogonality conditions violated");
    }
  }

  // scale the tail so that eps^2 ||Q^T Q||_F <= gap / 4, with eps dyadic
  out.epsilon = 1;
  if (count > 3) {
    Rational frob2(0);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        Rational e(0);
        for (int i = 3; i < count; ++i) e += out.rows[i][a] * out.rows[i][b];
        frob2 += e * e;
      }
    }
    const Rational gap(5);  // min gap of {14, 7, 2}
    while (out.epsilon * out.epsilon * out.epsilon * out.epsilon * frob2 > gap * gap / 16) out.epsilon /= 2;
  }
  out.m = RationalMatrix(count, 3);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < 3; ++j) out.m(i, j) = (i >= 3 ? out.epsilon : Rational(1)) * out.rows[i][j];
  const RationalMatrix gram = out.m * out.m.transpose();
  out.gram = make_exact(gram, complement(Graph::cycle(count)), Construction::CycleRep);
  stamp(out.gram, "n", n);
  stamp(out.gram, "epsilon", out.epsilon.convert_to<double>());
  const Eigen::Matrix3d mtm = (out.m.transpose() * out.m).to_double();
  const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(mtm).eigenvalues();
  out.gram_eigenvalues = {ev[0], ev[1], ev[2]};
  const PatternResult pat = pattern_check_exact(gram, out.gram.pattern);
  if (!pat.ok) throw ConstructionError("cycle_complement_rep: " + pat.reason);
  return out;
}

TriCycFactor tricyc_factor(int n, std::uint64_t seed) {
  if (n < 6 || n % 2 != 0) throw HypothesisError("tricyc_realization: n must be even and at least 6");
  const CycleRep rep = cycle_complement_rep(n);
  const Eigen::MatrixXd m = rep.m.to_double();
  const Eigen::Matrix3d mtm = m.transpose() * m;
  TriCycFactor out;
  out.alpha = 1.5 * rep.gram_eigenvalues[2];
  out.epsilon = rep.epsilon.convert_to<double>();
  const Eigen::Matrix3d m1 = symmetric_sqrt(out.alpha * Eigen::Matrix3d::Identity() - mtm);
  std::mt19937_64 rng(seed);
  std::optional<Eigen::Matrix3d> partial;  // cross block fine, bottom block not complete
  Eigen::Matrix3d chosen;
  for (out.attempts = 1; out.attempts <= 200; ++out.attempts) {
    const Eigen::Matrix3d r = random_orthogonal(rng);
    const Eigen::Matrix3d rm1 = r * m1;
    if (!totally_nonzero(m * rm1.transpose(), 1e-6)) continue;
    const Eigen::Matrix3d c = rm1 * rm1.transpose();
    if (std::min({std::abs(c(0, 1)), std::abs(c(0, 2)), std::abs(c(1, 2))}) >= 1e-6) {
      chosen = rm1;
      out.full_cross = true;
      break;
    }
    if (!partial) partial = rm1;
  }
  if (!out.full_cross && !partial) throw ConstructionError("tricyc_realization: no orthogonal R gave a full cross block");
  if (!out.full_cross) chosen = *partial;
  out.b_prime.resize(n, 3);
  out.b_prime << m, chosen;
  return out;
}

Realization tricyc_realization(int n, std::uint64_t seed) {
  const TriCycFactor f = tricyc_factor(n, seed);
  const int count = n - 3;
  const CycleRep rep = cycle_complement_rep(n);
  const Graph cbar = complement(Graph::cycle(count));
  Eigen::MatrixXd a = f.b_prime * f.b_prime.transpose();
  a.topLeftCorner(count, count) = rep.gram.matrix;
  Graph h(3);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(a(count + i, count + j)) >= 1e-6) h.add_edge(i, j);
      else a(count + i, count + j) = a(count + j, count + i) = 0.0;
  Realization r = make_floating(a, join(cbar, h), Construction::TriCyc);
  stamp(r, "n", n);
  stamp(r, "alpha", f.alpha);
  stamp(r, "seed", static_cast<double>(seed));
  stamp(r, "attempts", f.attempts);
  stamp(r, "epsilon", f.epsilon);
  require_realization(r, 2, true, "tricyc_realization");
  if (!f.full_cross) {
    LiftOptions lo;
    lo.seed = seed;
    r = supergraph_lift(r, join(cbar, Graph::complete(3)), lo);
    require_realization(r, 2, true, "tricyc_realization lift");
  }
  return r;
}

Realization k3bar_join(const Realization& gamma, std::uint64_t seed) {
  const int n = gamma.pattern.order();
  const SpectrumSummary spec = distinct_eigenvalues(gamma.matrix);
  if (spec.distinct_count != 2 || spec.ambiguous) throw HypothesisError("k3bar_join: gamma must have two eigenvalues");
  const double c = spec.cluster_values[1];
  if (std::abs(spec.cluster_values[0]) > 1e-9 * std::max(1.0, std::abs(c)) || c <= 0 || spec.multiplicities[1] != 3)
    throw HypothesisError("k3bar_join: gamma must be PSD of rank 3 with a scalar Gram factor");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma.matrix);
  const Eigen::MatrixXd cf = es.eigenvectors().rightCols(3) * std::sqrt(c);
  if ((cf.transpose() * cf - c * Eigen::Matrix3d::Identity()).norm() > 1e-10 * c)
    throw HypothesisError("k3bar_join: Gram factor is not scalar");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    const Eigen::Matrix3d q = random_orthogonal(rng);
    const Eigen::MatrixXd crossb = cf * q.transpose();
    if (!totally_nonzero(crossb, 1e-6)) continue;
    Eigen::MatrixXd a(n + 3, n + 3);
    a.topLeftCorner(n, n) = gamma.matrix;
    a.topRightCorner(n, 3) = crossb;
    a.bottomLeftCorner(3, n) = crossb.transpose();
    a.bottomRightCorner(3, 3).setIdentity();
    Realization r = make_floating(a, join(gamma.pattern, Graph(3)), Construction::K3BarJoin);
    r.history = gamma.history;
    r.history.push_back(to_string(gamma.construction));
    r.parameters = gamma.parameters;
    stamp(r, "join_seed", static_cast<double>(seed));
    stamp(r, "join_attempts", attempt + 1);
    require_realization(r, 2, true, "k3bar_join");
    return r;
  }
  throw ConstructionError("k3bar_join: no orthogonal Q gave a full cross block");
}

Realization join_realization(const Graph& ga_in, const Graph& gb_in, std::uint64_t seed) {
  const bool swapped = ga_in.order() < gb_in.order();
  const Graph& ga = swapped ? gb_in : ga_in;
  const Graph& gb = swapped ? ga_in : gb_in;
  const int a = ga.order(), b = gb.order(), d = a - b;
  if (b < 1 || d > 2) throw HypothesisError("join_realization: parts must be nonempty with orders differing by at most 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::string last;
  for (int attempt = 0; attempt < 12; ++attempt) {
    Eigen::VectorXd sigma(b);
    for (int i = 0; i < b; ++i) sigma[i] = -0.8 + 1.6 * (i + 0.2 + 0.6 * unit(rng)) / b;
    Eigen::VectorXd spec_a(a);
    spec_a.head(b) = sigma;
    if (d >= 1) spec_a[b] = 1.0;
    if (d == 2) spec_a[b + 1] = -1.0;
    LiftOptions lo;
    lo.seed = derive_seed(seed, 2 * attempt);
    Realization ra, rb;
    try {
      ra = prescribed_spectrum_realization(ga, spec_a, lo);
      lo.seed = derive_seed(seed, 2 * attempt + 1);
      rb = prescribed_spectrum_realization(gb, -sigma, lo);
    } catch (const ConvergenceError& e) {
      last = e.what();
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(ra.matrix), eb(rb.matrix);
    auto column_for = [](const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es, double value) {
      Eigen::Index idx;
      (es.eigenvalues().array() - value).abs().minCoeff(&idx);
      return es.eigenvectors().col(idx);
    };
    for (int signs = 0; signs < 8; ++signs) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(a, b);
      for (int i = 0; i < b; ++i) {
        const double s = unit(rng) < 0.5 ? -1.0 : 1.0;
        c += s * std::sqrt(1.0 - sigma[i] * sigma[i]) * column_for(ea, sigma[i]) * column_for(eb, -sigma[i]).transpose();
      }
      if (!totally_nonzero(c, 1e-6)) continue;
      Eigen::MatrixXd m(a + b, a + b);
      m << ra.matrix, c, c.transpose(), rb.matrix;
      Realization r = make_floating(m, join(ga, gb), Construction::Join);
      stamp(r, "seed", static_cast<double>(seed));
      stamp(r, "attempt", attempt);
      if ((r.matrix * r.matrix - Eigen::MatrixXd::Identity(a + b, a + b)).norm() > 1e-9) {
        last = "join block is not orthogonal";
        continue;
      }
      if (swapped) {
        std::vector<int> perm(a + b);
        for (int i = 0; i < b; ++i) perm[i] = a + i;
        for (int i = 0; i < a; ++i) perm[b + i] = i;
        r = permuted(r, perm);
      }
      require_realization(r, 2, false, "join_realization");
      return r;
    }
    last = "cross block kept a zero entry";
  }
  throw ConstructionError("join_realization: " + last);
}

Realization contraction_realization(const Graph& g, VertexSet x, VertexSet y, std::uint64_t seed, int attempts) {
  const int n = g.order();
  if ((x & y) != 0 || (x | y) != g.all() || x == 0 || y == 0)
    throw HypothesisError("contraction_realization: sides must partition the vertices");
  for (VertexSet side : {x, y})
    for (int u : members(side))
      if ((g.closed_neighbors(u) & side) != side) throw HypothesisError("contraction_realization: sides must be cliques");
  std::vector<int> order = members(x);
  const int p = static_cast<int>(order.size()), q = n - p;
  for (int v : members(y)) order.push_back(v);
  const Graph local = g.relabeled(order);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p, q);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < q; ++j)
        if (local.adjacent(i, p + j)) c(i, j) = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 0.5 * unit(rng));
    const double norm = Eigen::JacobiSVD<Eigen::MatrixXd>(c).singularValues()[0];
    if (norm == 0) throw ConstructionError("contraction_realization: no cross edges");
    c *= (0.5 + 0.4 * unit(rng)) / norm;
    Eigen::MatrixXd m(n, n);
    m << symmetric_sqrt(Eigen::MatrixXd::Identity(p, p) - c * c.transpose()), c, c.transpose(),
        -symmetric_sqrt(Eigen::MatrixXd::Identity(q, q) - c.transpose() * c);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !local.adjacent(i, j)) m(i, j) = 0.0;
    Realization r = make_floating(m, local, Construction::Contraction);
    if (!pattern_check(r.matrix, local).ok) continue;
    if ((r.matrix * r.matrix - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-9) continue;
    r = permuted(r, inverse_of(order));
    stamp(r, "seed", static_cast<double>(seed));
    stamp(r, "attempt", attempt);
    require_realization(r, 2, false, "contraction_realization");
    return r;
  }
  throw ConstructionError("contraction_realization: sqrt blocks kept zero entries in every attempt");
}

}  // namespace q2cert
