#include "q2cert/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

namespace q2cert {

LmResult levenberg_marquardt(const ResidualFunction& f, Eigen::VectorXd x0, const LmOptions& opt) {
  LmResult out;
  out.x = std::move(x0);
  Eigen::VectorXd r, rn;
  Eigen::MatrixXd jac;
  f(out.x, r, &jac);
  double cost = r.squaredNorm();
  double lambda = opt.initial_lambda;
  for (out.iterations = 0; out.iterations < opt.max_iterations; ++out.iterations) {
    if (std::sqrt(cost) < opt.tolerance) break;
    const Eigen::MatrixXd h = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    Eigen::VectorXd step;
    bool improved = false;
    while (lambda < 1e16) {
      Eigen::MatrixXd hd = h;
      for (Eigen::Index i = 0; i < h.rows(); ++i) hd(i, i) += lambda * std::max(h(i, i), 1e-10);
      step = hd.ldlt().solve(-g);
      Eigen::VectorXd xn = out.x + step;
      f(xn, rn, nullptr);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn < cost) {
        out.x = std::move(xn);
        cost = cn;
        lambda = std::max(lambda / 3.0, 1e-15);
        improved = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) break;
    if (step.norm() < 1e-16 * (1.0 + out.x.norm())) break;
    f(out.x, r, &jac);
  }
  out.residual = std::sqrt(cost);
  out.converged = out.residual < opt.tolerance;
  return out;
}

namespace {

/// Symmetric matrix with a fixed part plus free diagonal and free edges.
struct Parametrization {
  int n = 0;
  bool free_diagonal = true;
  std::vector<std::pair<int, int>> free_edges;
  Eigen::MatrixXd base;

  int size() const { return (free_diagonal ? n : 0) + static_cast<int>(free_edges.size()); }
  int edge_offset() const { return free_diagonal ? n : 0; }

  Eigen::MatrixXd assemble(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd a = base;
    if (free_diagonal)
      for (int i = 0; i < n; ++i) a(i, i) = x[i];
    const int off = edge_offset();
    for (std::size_t k = 0; k < free_edges.size(); ++k) {
      const auto [u, v] = free_edges[k];
      a(u, v) = a(v, u) = x[off + static_cast<int>(k)];
    }
    return a;
  }

  Eigen::VectorXd extract(const Eigen::MatrixXd& a) const {
    Eigen::VectorXd x(size());
    if (free_diagonal)
      for (int i = 0; i < n; ++i) x[i] = a(i, i);
    const int off = edge_offset();
    for (std::size_t k = 0; k < free_edges.size(); ++k) x[off + static_cast<int>(k)] = a(free_edges[k].first, free_edges[k].second);
    return x;
  }

  /// E A + A E for the direction of variable k.
  Eigen::MatrixXd square_derivative(const Eigen::MatrixXd& a, int k) const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    if (free_diagonal && k < n) {
      d.row(k) += a.row(k);
      d.col(k) += a.col(k);
      return d;
    }
    const auto [u, v] = free_edges[k - edge_offset()];
    d.row(u) += a.row(v);
    d.row(v) += a.row(u);
    d.col(u) += a.col(v);
    d.col(v) += a.col(u);
    return d;
  }

  Eigen::MatrixXd direction(int k) const {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
    if (free_diagonal && k < n) {
      e(k, k) = 1.0;
    } else {
      const auto [u, v] = free_edges[k - edge_offset()];
      e(u, v) = e(v, u) = 1.0;
    }
    return e;
  }
};

constexpr double kSqrt2 = 1.4142135623730951;

int upper_count(int n) { return n * (n + 1) / 2; }

/// Weighted upper triangle so that the squared norm equals the Frobenius norm.
void write_upper(const Eigen::MatrixXd& m, Eigen::Ref<Eigen::VectorXd> out) {
  const int n = static_cast<int>(m.rows());
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out[idx++] = (i == j ? 1.0 : kSqrt2) * m(i, j);
}

ResidualFunction two_valued_residual(const Parametrization& p, double target_trace) {
  return [&p, target_trace](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    const int n = p.n;
    const int m = upper_count(n);
    const Eigen::MatrixXd a = p.assemble(x);
    r.resize(m + 1);
    write_upper(a * a - Eigen::MatrixXd::Identity(n, n), r.head(m));
    r[m] = a.trace() - target_trace;
    if (!jac) return;
    jac->resize(m + 1, p.size());
    for (int k = 0; k < p.size(); ++k) {
      write_upper(p.square_derivative(a, k), jac->col(k).head(m));
      (*jac)(m, k) = (p.free_diagonal && k < n) ? 1.0 : 0.0;
    }
  };
}

ResidualFunction eigenvalue_residual(const Parametrization& p, const Eigen::VectorXd& sigma) {
  return [&p, sigma](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.assemble(x));
    r = es.eigenvalues() - sigma;
    if (!jac) return;
    const Eigen::MatrixXd& q = es.eigenvectors();
    jac->resize(p.n, p.size());
    for (int k = 0; k < p.size(); ++k) {
      if (p.free_diagonal && k < p.n) {
        jac->col(k) = q.row(k).transpose().array().square();
      } else {
        const auto [u, v] = p.free_edges[k - p.edge_offset()];
        jac->col(k) = 2.0 * q.row(u).transpose().cwiseProduct(q.row(v).transpose());
      }
    }
  };
}

std::vector<std::pair<int, int>> new_edges(const Graph& small, const Graph& big) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [u, v] : big.edges())
    if (!small.adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

double min_edge_magnitude(const Eigen::MatrixXd& a, const Graph& g) {
  double m = INFINITY;
  for (const auto& [u, v] : g.edges()) m = std::min(m, std::abs(a(u, v)));
  return m;
}

bool spectra_match(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  const Eigen::VectorXd ea = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
  const Eigen::VectorXd eb = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(b, Eigen::EigenvaluesOnly).eigenvalues();
  const double scale = std::max(1.0, ea.cwiseAbs().maxCoeff());
  return (ea - eb).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace

Eigen::MatrixXd assemble_symmetric(const Graph& g, const Eigen::VectorXd& x) {
  Parametrization p{g.order(), true, g.edges(), Eigen::MatrixXd::Zero(g.order(), g.order())};
  if (x.size() != p.size()) throw std::invalid_argument("assemble_symmetric: wrong coordinate count");
  return p.assemble(x);
}

double q2_objective(const Graph& g, const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
  const int n = g.order();
  const Eigen::MatrixXd a = assemble_symmetric(g, x);
  const Eigen::MatrixXd e = a * a - Eigen::MatrixXd::Identity(n, n);
  if (grad) {
    const Eigen::MatrixXd d = a * e;  // A^3 - A
    const auto edges = g.edges();
    grad->resize(x.size());
    for (int i = 0; i < n; ++i) (*grad)[i] = 4.0 * d(i, i);
    for (std::size_t k = 0; k < edges.size(); ++k) (*grad)[n + static_cast<int>(k)] = 8.0 * d(edges[k].first, edges[k].second);
  }
  return e.squaredNorm();
}

Realization supergraph_lift(const Realization& a, const Graph& gsup, const LiftOptions& opt) {
  const int n = a.pattern.order();
  if (gsup.order() != n) throw HypothesisError("supergraph_lift: vertex count mismatch");
  for (const auto& [u, v] : a.pattern.edges())
    if (!gsup.adjacent(u, v)) throw HypothesisError("supergraph_lift: target is not a supergraph of the pattern");
  if (gsup == a.pattern) return a;
  if (!has_ssp(a, opt.tol)) throw HypothesisError("supergraph_lift: seed realization lacks SSP");

  const SpectrumSummary spec = distinct_eigenvalues(a.matrix, opt.tol.eigen_cluster);
  const bool two_valued = spec.distinct_count == 2;
  if (!two_valued && spec.distinct_count != n)
    throw HypothesisError("supergraph_lift: spectrum must be two-valued or simple");

  double l1 = 0, l2 = 0;
  Eigen::MatrixXd work = a.matrix;
  Eigen::VectorXd sigma;
  double spread = 1.0;
  if (two_valued) {
    l1 = spec.cluster_values[0];
    l2 = spec.cluster_values[1];
    work = normalize_two_valued(a.matrix, l1, l2);
  } else {
    sigma = Eigen::Map<const Eigen::VectorXd>(spec.eigenvalues.data(), n);
    double gap = INFINITY;
    for (int i = 1; i < n; ++i) gap = std::min(gap, sigma[i] - sigma[i - 1]);
    spread = std::clamp(gap, 1e-3, 1.0);
  }
  const double target_trace = std::round(work.trace());

  const auto added = new_edges(a.pattern, gsup);
  Parametrization p{n, true, a.pattern.edges(), Eigen::MatrixXd::Zero(n, n)};
  const ResidualFunction f = two_valued ? two_valued_residual(p, target_trace) : eigenvalue_residual(p, sigma);
  const double scale = two_valued ? 1.0 : std::max(1.0, sigma.cwiseAbs().maxCoeff());
  LmOptions lm;
  lm.tolerance = 1e-13 * scale;

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double eps = 0.25 * spread;
  for (int rung = 0; rung <= opt.ladder_steps; ++rung, eps *= 0.5) {
    std::vector<double> target(added.size());
    for (double& t : target) t = (unit(rng) < 0.5 ? -1.0 : 1.0) * eps * (0.5 + 0.5 * unit(rng));
    Eigen::VectorXd x = p.extract(work);
    bool ok = true;
    for (int step = 1; step <= opt.continuation_steps && ok; ++step) {
      const double t = static_cast<double>(step) / opt.continuation_steps;
      p.base.setZero();
      for (std::size_t k = 0; k < added.size(); ++k) p.base(added[k].first, added[k].second) = p.base(added[k].second, added[k].first) = t * target[k];
      const LmResult res = levenberg_marquardt(f, x, lm);
      x = res.x;
      ok = res.residual < opt.tol.residual * scale;
    }
    if (!ok) continue;
    Eigen::MatrixXd lifted = p.assemble(x);
    if (min_edge_magnitude(lifted, gsup) < opt.tol.search_floor) continue;
    if (two_valued) lifted = denormalize_two_valued(lifted, l1, l2);
    Realization out = make_floating(lifted, gsup, Construction::Lift);
    out.history = a.history;
    out.history.push_back(to_string(a.construction));
    out.parameters = a.parameters;
    out.parameters["lift_eps"] = eps;
    out.parameters["lift_seed"] = static_cast<double>(opt.seed);
    if (!pattern_check(out.matrix, gsup, opt.tol.search_floor, opt.tol.zero_ceiling).ok) continue;
    if (!spectra_match(out.matrix, a.matrix, 1e-9)) continue;
    if (!has_ssp(out, opt.tol)) continue;
    return out;
  }
  throw ConvergenceError("supergraph_lift: no isospectral perturbation found after " +
                         std::to_string(opt.ladder_steps + 1) + " magnitudes");
}

namespace {

/// The two eigenvalues of an exact two-valued matrix, when rational.
std::optional<std::pair<Rational, Rational>> rational_two_values(const RationalMatrix& a) {
  Polynomial radical{Rational(1)};
  for (const auto& f : square_free_decomposition(characteristic_polynomial(a))) {
    Polynomial prod(radical.size() + f.factor.size() - 1, Rational(0));
    for (std::size_t i = 0; i < radical.size(); ++i)
      for (std::size_t j = 0; j < f.factor.size(); ++j) prod[i + j] += radical[i] * f.factor[j];
    radical = prod;
  }
  if (degree(radical) != 2) return std::nullopt;
  // x^2 + b x + c, monic
  const Rational b = radical[1] / radical[2], c = radical[0] / radical[2];
  Rational root;
  if (!rational_sqrt(b * b - 4 * c, &root)) return std::nullopt;
  return std::make_pair((-b - root) / 2, (-b + root) / 2);
}

RationalMatrix rotate_exact(const RationalMatrix& a, int v, const Rational& d, const Rational& c, const Rational& s) {
  const int n = a.rows();
  RationalMatrix dm(n + 1, n + 1), r = RationalMatrix::identity(n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dm(i, j) = a(i, j);
  dm(n, n) = d;
  r(v, v) = c;
  r(v, n) = -s;
  r(n, v) = s;
  r(n, n) = c;
  return r * dm * r.transpose();
}

Eigen::MatrixXd rotate_float(const Eigen::MatrixXd& a, int v, double d, double c, double s) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(n + 1, n + 1), r = Eigen::MatrixXd::Identity(n + 1, n + 1);
  dm.topLeftCorner(n, n) = a;
  dm(n, n) = d;
  r(v, v) = c;
  r(v, n) = -s;
  r(n, v) = s;
  r(n, n) = c;
  return r * dm * r.transpose();
}

}  // namespace

Realization jdup_lift(const Realization& a, int v, const Tolerances& tol, bool keep_ssp) {
  const int n = a.pattern.order();
  if (v < 0 || v >= n) throw HypothesisError("jdup_lift: vertex out of range");
  const SpectrumSummary spec = a.exact ? distinct_eigenvalues_exact(*a.exact) : distinct_eigenvalues(a.matrix, tol.eigen_cluster);
  if (spec.distinct_count != 2 || spec.ambiguous) throw HypothesisError("jdup_lift: seed must have exactly two eigenvalues");
  const bool seed_ssp = has_ssp(a, tol);
  const Graph target = jdup(a.pattern, v);

  static constexpr std::array<std::array<int, 3>, 6> kTriples{
      {{3, 4, 5}, {4, 3, 5}, {5, 12, 13}, {12, 5, 13}, {8, 15, 17}, {15, 8, 17}}};

  std::optional<std::pair<Rational, Rational>> exact_values;
  if (a.exact) exact_values = rational_two_values(*a.exact);

  // prefer the eigenvalue farther from the diagonal entry at v
  std::vector<int> order{0, 1};
  const double avv = a.matrix(v, v);
  if (std::abs(avv - spec.cluster_values[1]) > std::abs(avv - spec.cluster_values[0])) std::swap(order[0], order[1]);

  std::optional<Realization> fallback;
  for (int which : order) {
    for (const auto& t : kTriples) {
      Realization out;
      if (exact_values) {
        const Rational d = which == 0 ? exact_values->first : exact_values->second;
        if (d == (*a.exact)(v, v)) continue;
        out = make_exact(rotate_exact(*a.exact, v, d, Rational(t[0], t[2]), Rational(t[1], t[2])), target,
                         Construction::JdupLift);
      } else {
        const double d = spec.cluster_values[which];
        if (std::abs(d - avv) < tol.nonzero_floor * std::max(1.0, std::abs(d))) continue;
        out = make_floating(rotate_float(a.matrix, v, d, double(t[0]) / t[2], double(t[1]) / t[2]), target,
                            Construction::JdupLift);
      }
      out.history = a.history;
      out.history.push_back(to_string(a.construction));
      out.parameters = a.parameters;
      out.parameters["jdup_vertex"] = v;
      out.parameters["jdup_cos"] = double(t[0]) / t[2];
      const RealizationReport rep = verify_realization(out, seed_ssp, tol);
      if (!rep.pattern.ok || rep.spectrum.distinct_count != 2 || rep.spectrum.ambiguous) continue;
      if (!seed_ssp) return out;
      if (rep.ssp && rep.ssp->verdict == SspReport::Verdict::SSP) return out;
      if (!fallback) fallback = out;
    }
  }
  if (fallback && !keep_ssp) return *fallback;
  if (fallback) throw ConstructionError("jdup_lift: no rotation kept SSP at vertex " + std::to_string(v));
  throw ConstructionError("jdup_lift: no rotation produced the duplicated pattern at vertex " + std::to_string(v));
}

Realization prescribed_spectrum_realization(const Graph& g, const Eigen::VectorXd& sigma, const LiftOptions& opt) {
  const int n = g.order();
  if (sigma.size() != n) throw HypothesisError("prescribed_spectrum_realization: spectrum length mismatch");
  Eigen::VectorXd sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 1; i < n; ++i)
    if (sorted[i] - sorted[i - 1] < 1e-6) throw HypothesisError("prescribed_spectrum_realization: eigenvalues must be distinct");
  Realization diag = make_floating(sorted.asDiagonal().toDenseMatrix(), Graph(n), Construction::Diagonal);
  return supergraph_lift(diag, g, opt);
}

namespace {

/// Residual for the pattern search: weighted upper triangle of A^2 - I and
/// barrier terms w / a_e.
struct SearchProblem {
  Parametrization p;
  double weight = 0.0;

  void operator()(const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) const {
    const int n = p.n, m = upper_count(n), e = static_cast<int>(p.free_edges.size());
    const Eigen::MatrixXd a = p.assemble(x);
    r.resize(m + e);
    write_upper(a * a - Eigen::MatrixXd::Identity(n, n), r.head(m));
    for (int k = 0; k < e; ++k) r[m + k] = weight / x[n + k];
    if (!jac) return;
    jac->setZero(m + e, p.size());
    for (int k = 0; k < p.size(); ++k) write_upper(p.square_derivative(a, k), jac->col(k).head(m));
    for (int k = 0; k < e; ++k) (*jac)(m + k, n + k) = -weight / (x[n + k] * x[n + k]);
  }
};

struct CubicProblem {
  Parametrization p;
  double weight = 0.0;

  // x = (pattern coordinates, c)
  void operator()(const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) const {
    const int n = p.n, m = upper_count(n), e = static_cast<int>(p.free_edges.size()), nv = p.size();
    const Eigen::MatrixXd a = p.assemble(x.head(nv));
    const double c = x[nv];
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd a2 = a * a;
    r.resize(m + e);
    write_upper((a2 - id) * (a - c * id), r.head(m));
    for (int k = 0; k < e; ++k) r[m + k] = weight / x[n + k];
    if (!jac) return;
    jac->setZero(m + e, nv + 1);
    for (int k = 0; k < nv; ++k) {
      const Eigen::MatrixXd dir = p.direction(k);
      const Eigen::MatrixXd d = dir * a2 + a * dir * a + a2 * dir - c * p.square_derivative(a, k) - dir;
      write_upper(d, jac->col(k).head(m));
    }
    write_upper(id - a2, jac->col(nv).head(m));
    for (int k = 0; k < e; ++k) (*jac)(m + k, n + k) = -weight / (x[n + k] * x[n + k]);
  }
};

bool near_scalar(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  return (a - a.trace() / static_cast<double>(n) * Eigen::MatrixXd::Identity(n, n)).norm() < 1e-6;
}

Eigen::VectorXd random_start(const Graph& g, std::mt19937_64& rng) {
  const int n = g.order();
  const auto edges = g.edges();
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd x(n + static_cast<int>(edges.size()));
  const double s = 1.0 / std::sqrt(static_cast<double>(std::max(n, 1)));
  for (int i = 0; i < n; ++i) x[i] = unit(rng);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double u = unit(rng);
    x[n + static_cast<int>(k)] = s * (u < 0 ? -1.0 : 1.0) * (0.3 + 0.7 * std::abs(u));
  }
  return x;
}

constexpr std::array<double, 4> kBarrierLadder{1e-2, 1e-3, 1e-4, 0.0};

}  // namespace

SearchResult generic_q2_search(const Graph& g, const SearchOptions& opt) {
  const int n = g.order();
  if (n > 20) throw HypothesisError("generic_q2_search: order above 20");
  if (!g.connected()) throw HypothesisError("generic_q2_search: graph must be connected");
  SearchResult out;
  out.best_residual = INFINITY;
  SearchProblem prob{Parametrization{n, true, g.edges(), Eigen::MatrixXd::Zero(n, n)}, 0.0};
  LmOptions lm;
  lm.max_iterations = opt.max_iterations;
  for (int restart = 0; restart < opt.restarts; ++restart) {
    out.restarts_used = restart + 1;
    std::mt19937_64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(restart)));
    Eigen::VectorXd x = random_start(g, rng);
    LmResult res;
    for (double w : kBarrierLadder) {
      prob.weight = w;
      res = levenberg_marquardt(std::cref(prob), x, lm);
      x = res.x;
    }
    out.best_residual = std::min(out.best_residual, res.residual);
    if (res.residual >= opt.tol.residual) continue;
    const Eigen::MatrixXd a = prob.p.assemble(x);
    const double floor = min_edge_magnitude(a, g);
    if (floor < opt.tol.search_floor || near_scalar(a)) continue;
    Realization r = make_floating(a, g, Construction::Search);
    r.parameters["seed"] = static_cast<double>(opt.seed);
    r.parameters["restart"] = restart;
    r.parameters["residual"] = res.residual;
    const RealizationReport rep = verify_realization(r, false, opt.tol);
    if (!rep.pattern.ok || rep.spectrum.distinct_count != 2 || rep.spectrum.ambiguous) continue;
    out.realization = std::move(r);
    return out;
  }
  return out;
}

SearchResult three_eigenvalue_search(const Graph& g, const SearchOptions& opt) {
  const int n = g.order();
  if (n > 20) throw HypothesisError("three_eigenvalue_search: order above 20");
  SearchResult out;
  out.best_residual = INFINITY;
  CubicProblem prob{Parametrization{n, true, g.edges(), Eigen::MatrixXd::Zero(n, n)}, 0.0};
  LmOptions lm;
  lm.max_iterations = opt.max_iterations;
  for (int restart = 0; restart < opt.restarts; ++restart) {
    out.restarts_used = restart + 1;
    std::mt19937_64 rng(derive_seed(opt.seed, static_cast<std::uint64_t>(restart)));
    const Eigen::VectorXd start = random_start(g, rng);
    Eigen::VectorXd x(start.size() + 1);
    x << start, std::uniform_real_distribution<double>(-0.9, 0.9)(rng);
    LmResult res;
    for (double w : kBarrierLadder) {
      prob.weight = w;
      res = levenberg_marquardt(std::cref(prob), x, lm);
      x = res.x;
    }
    out.best_residual = std::min(out.best_residual, res.residual);
    if (res.residual >= opt.tol.residual) continue;
    const Eigen::MatrixXd a = prob.p.assemble(x.head(prob.p.size()));
    if (min_edge_magnitude(a, g) < opt.tol.search_floor) continue;
    Realization r = make_floating(a, g, Construction::Search);
    r.parameters["seed"] = static_cast<double>(opt.seed);
    r.parameters["restart"] = restart;
    r.parameters["c"] = x[prob.p.size()];
    const RealizationReport rep = verify_realization(r, false, opt.tol);
    if (!rep.pattern.ok || rep.spectrum.distinct_count > 3 || rep.spectrum.ambiguous) continue;
    out.realization = std::move(r);
    return out;
  }
  return out;
}

}  // namespace q2cert
