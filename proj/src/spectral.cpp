#include "q2cert/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace q2cert {

namespace {

void require_square(int rows, int cols, const Graph& g) {
  if (rows != cols) throw std::invalid_argument("matrix is not square");
  if (rows != g.order()) throw std::invalid_argument("matrix and graph orders differ");
}

}  // namespace

SpectrumSummary distinct_eigenvalues(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix is not square");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("matrix is not symmetric");
  }
  SpectrumSummary s;
  s.mode = "floating";
  if (a.rows() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double close = tol * scale, far = 10 * tol * scale;
  double start = s.eigenvalues[0], sum = start;
  int count = 1;
  auto flush = [&](double last) {
    if (last - start >= close) s.ambiguous = true;
    s.cluster_values.push_back(sum / count);
    s.multiplicities.push_back(count);
  };
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
    const double gap = s.eigenvalues[i] - s.eigenvalues[i - 1];
    if (gap < close) {
      sum += s.eigenvalues[i];
      ++count;
      continue;
    }
    if (gap < far) s.ambiguous = true;
    flush(s.eigenvalues[i - 1]);
    start = sum = s.eigenvalues[i];
    count = 1;
  }
  flush(s.eigenvalues.back());
  s.distinct_count = static_cast<int>(s.cluster_values.size());
  return s;
}

SpectrumSummary distinct_eigenvalues_exact(const RationalMatrix& a) {
  if (!a.is_symmetric()) throw std::invalid_argument("matrix is not symmetric");
  SpectrumSummary s;
  s.mode = "exact";
  if (a.rows() == 0) return s;
  const auto factors = square_free_decomposition(characteristic_polynomial(a));
  // Locate the real roots of each factor numerically to order the clusters.
  const SpectrumSummary approx = distinct_eigenvalues(a.to_double(), 1e-9);
  s.eigenvalues = approx.eigenvalues;
  struct Root {
    double value;
    int multiplicity;
  };
  std::vector<Root> roots;
  for (const auto& f : factors) {
    const int d = degree(f.factor);
    s.distinct_count += d;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -f.factor[i].convert_to<double>();
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    for (int i = 0; i < d; ++i) roots.push_back({es.eigenvalues()(i).real(), f.multiplicity});
  }
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.value < y.value; });
  for (const auto& r : roots) {
    s.cluster_values.push_back(r.value);
    s.multiplicities.push_back(r.multiplicity);
  }
  return s;
}

PatternResult pattern_check(const Eigen::MatrixXd& a, const Graph& g, double nonzero_floor, double zero_ceiling) {
  require_square(static_cast<int>(a.rows()), static_cast<int>(a.cols()), g);
  const int n = g.order();
  const double sym_tol = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > sym_tol) throw std::invalid_argument("matrix is not symmetric");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double x = std::abs(a(i, j));
      if (g.adjacent(i, j) && x <= nonzero_floor) return {false, i, j, "edge entry below nonzero floor"};
      if (!g.adjacent(i, j) && x >= zero_ceiling) return {false, i, j, "non-edge entry above zero ceiling"};
    }
  }
  return {};
}

PatternResult pattern_check_exact(const RationalMatrix& a, const Graph& g) {
  require_square(a.rows(), a.cols(), g);
  if (!a.is_symmetric()) throw std::invalid_argument("matrix is not symmetric");
  const int n = g.order();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool nonzero = a(i, j) != 0;
      if (nonzero != g.adjacent(i, j)) {
        return {false, i, j, nonzero ? "non-edge entry is nonzero" : "edge entry is zero"};
      }
    }
  }
  return {};
}

std::string to_string(SspReport::Verdict v) {
  switch (v) {
    case SspReport::Verdict::SSP: return "SSP";
    case SspReport::Verdict::NotSSP: return "not-SSP";
    case SspReport::Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

template <class Matrix, class Scalar>
void fill_constraints(const Matrix& a, const Graph& g, Matrix& l, int n) {
  // Column for each non-edge (p, q); row for each pair (i, j), i < j.
  std::vector<std::pair<int, int>> free;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      if (!g.adjacent(p, q)) free.emplace_back(p, q);
  std::vector<std::vector<int>> row_of(n, std::vector<int>(n, -1));
  int r = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) row_of[i][j] = r++;
  for (std::size_t c = 0; c < free.size(); ++c) {
    const auto [p, q] = free[c];
    // X = E_pq + E_qp: (AX - XA)_ij = A_ip d_qj + A_iq d_pj - d_ip A_qj - d_iq A_pj.
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Scalar v = 0;
        if (j == q) v += a(i, p);
        if (j == p) v += a(i, q);
        if (i == p) v -= a(q, j);
        if (i == q) v -= a(p, j);
        if (v != 0) l(row_of[i][j], static_cast<int>(c)) = v;
      }
    }
  }
}

int free_count(const Graph& g) {
  const int n = g.order();
  return n * (n - 1) / 2 - g.size();
}

}  // namespace

Eigen::MatrixXd ssp_constraint_matrix(const Eigen::MatrixXd& a, const Graph& g) {
  require_square(static_cast<int>(a.rows()), static_cast<int>(a.cols()), g);
  const int n = g.order();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n * (n - 1) / 2, free_count(g));
  fill_constraints<Eigen::MatrixXd, double>(a, g, l, n);
  return l;
}

RationalMatrix ssp_constraint_matrix(const RationalMatrix& a, const Graph& g) {
  require_square(a.rows(), a.cols(), g);
  const int n = g.order();
  RationalMatrix l(n * (n - 1) / 2, free_count(g));
  fill_constraints<RationalMatrix, Rational>(a, g, l, n);
  return l;
}

SspReport ssp_check(const Eigen::MatrixXd& a, const Graph& g, double tol) {
  const PatternResult p = pattern_check(a, g);
  if (!p.ok) throw std::invalid_argument("SSP check on a matrix outside the pattern: " + p.reason);
  const Eigen::MatrixXd l = ssp_constraint_matrix(a, g);
  SspReport rep;
  rep.mode = "floating";
  rep.constraint_rows = static_cast<int>(l.rows());
  rep.constraint_cols = static_cast<int>(l.cols());
  if (l.cols() == 0) return rep;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(l).singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  const int excess = std::max(0, rep.constraint_cols - rep.constraint_rows);
  if (top == 0.0) {
    rep.kernel_dimension = rep.constraint_cols;
    rep.smallest_singular_value = 0.0;
    rep.verdict = SspReport::Verdict::NotSSP;
    return rep;
  }
  const double smallest = excess > 0 ? 0.0 : sv(sv.size() - 1) / top;
  rep.smallest_singular_value = smallest;
  int small = excess;
  bool marginal = false;
  for (int i = 0; i < sv.size(); ++i) {
    const double rel = sv(i) / top;
    if (rel < tol) {
      ++small;
    } else if (rel < 10 * tol) {
      marginal = true;
    }
  }
  rep.kernel_dimension = small;
  if (marginal) {
    rep.verdict = SspReport::Verdict::Inconclusive;
  } else {
    rep.verdict = small == 0 ? SspReport::Verdict::SSP : SspReport::Verdict::NotSSP;
  }
  return rep;
}

SspReport ssp_check_exact(const RationalMatrix& a, const Graph& g) {
  const PatternResult p = pattern_check_exact(a, g);
  if (!p.ok) throw std::invalid_argument("SSP check on a matrix outside the pattern: " + p.reason);
  const RationalMatrix l = ssp_constraint_matrix(a, g);
  SspReport rep;
  rep.mode = "exact";
  rep.constraint_rows = l.rows();
  rep.constraint_cols = l.cols();
  rep.kernel_dimension = l.cols() - rank(l);
  rep.verdict = rep.kernel_dimension == 0 ? SspReport::Verdict::SSP : SspReport::Verdict::NotSSP;
  return rep;
}

double minimal_polynomial_residual(const Eigen::MatrixXd& a, double l1, double l2) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  return ((a - l1 * id) * (a - l2 * id)).cwiseAbs().maxCoeff();
}

}  // namespace q2cert
