#include "q2cert/realization.hpp"

#include <stdexcept>

namespace q2cert {

namespace {

const std::vector<std::pair<Construction, std::string>>& names() {
  static const std::vector<std::pair<Construction, std::string>> table = {
      {Construction::OrthoComplete, "OrthoComplete"}, {Construction::BoxK2, "BoxK2"},
      {Construction::M7, "M7"},                       {Construction::WHat, "WHat"},
      {Construction::CycleRep, "CycleRep"},           {Construction::TriCyc, "TriCyc"},
      {Construction::K3BarJoin, "K3BarJoin"},         {Construction::Lift, "Lift"},
      {Construction::JdupLift, "JdupLift"},           {Construction::Contraction, "Contraction"},
      {Construction::Join, "Join"},                   {Construction::Diagonal, "Diagonal"},
      {Construction::Search, "Search"},               {Construction::Permuted, "Permuted"},
  };
  return table;
}

}  // namespace

std::string to_string(Construction c) {
  for (const auto& [k, v] : names())
    if (k == c) return v;
  return "?";
}

Construction construction_from_string(const std::string& s) {
  for (const auto& [k, v] : names())
    if (v == s) return k;
  throw std::invalid_argument("unknown construction tag: " + s);
}

Realization make_exact(const RationalMatrix& m, const Graph& pattern, Construction c) {
  Realization r;
  r.exact = m;
  r.matrix = m.to_double();
  r.pattern = pattern;
  r.construction = c;
  return r;
}

Realization make_floating(const Eigen::MatrixXd& m, const Graph& pattern, Construction c) {
  Realization r;
  r.matrix = 0.5 * (m + m.transpose());
  r.pattern = pattern;
  r.construction = c;
  return r;
}

RealizationReport verify_realization(const Realization& r, bool check_ssp, const Tolerances& tol) {
  RealizationReport rep;
  if (r.exact) {
    rep.pattern = pattern_check_exact(*r.exact, r.pattern);
    rep.spectrum = distinct_eigenvalues_exact(*r.exact);
    if (check_ssp && rep.pattern.ok) rep.ssp = ssp_check_exact(*r.exact, r.pattern);
  } else {
    rep.pattern = pattern_check(r.matrix, r.pattern, tol.nonzero_floor, tol.zero_ceiling);
    rep.spectrum = distinct_eigenvalues(r.matrix, tol.eigen_cluster);
    if (check_ssp && rep.pattern.ok) rep.ssp = ssp_check(r.matrix, r.pattern, tol.rank);
  }
  return rep;
}

bool has_ssp(const Realization& r, const Tolerances& tol) {
  const auto rep = verify_realization(r, true, tol);
  return rep.ssp && rep.ssp->verdict == SspReport::Verdict::SSP;
}

void require_realization(const Realization& r, int distinct, bool require_ssp, const std::string& what,
                         const Tolerances& tol) {
  const auto rep = verify_realization(r, require_ssp, tol);
  if (!rep.pattern.ok) {
    throw ConstructionError(what + ": pattern violation at (" + std::to_string(rep.pattern.row) + "," +
                            std::to_string(rep.pattern.col) + "): " + rep.pattern.reason);
  }
  if (rep.spectrum.ambiguous) throw ConstructionError(what + ": ambiguous eigenvalue clustering");
  if (rep.spectrum.distinct_count != distinct) {
    throw ConstructionError(what + ": expected " + std::to_string(distinct) + " distinct eigenvalues, found " +
                            std::to_string(rep.spectrum.distinct_count));
  }
  if (require_ssp && (!rep.ssp || rep.ssp->verdict != SspReport::Verdict::SSP)) {
    throw ConstructionError(what + ": SSP not verified (" +
                            (rep.ssp ? to_string(rep.ssp->verdict) : std::string("unchecked")) + ")");
  }
}

Realization permuted(const Realization& r, const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Realization out = r;
  out.pattern = r.pattern.relabeled(perm);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.matrix(i, j) = r.matrix(perm[i], perm[j]);
  if (r.exact) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = (*r.exact)(perm[i], perm[j]);
    out.exact = m;
  }
  return out;
}

Eigen::MatrixXd normalize_two_valued(const Eigen::MatrixXd& a, double l1, double l2) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  return (2.0 * a - (l1 + l2) * id) / (l2 - l1);
}

Eigen::MatrixXd denormalize_two_valued(const Eigen::MatrixXd& a, double l1, double l2) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  return ((l2 - l1) * a + (l1 + l2) * id) / 2.0;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace q2cert
