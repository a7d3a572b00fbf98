#include "conelcp/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "conelcp/lcp.hpp"
#include "conelcp/simplex.hpp"

namespace conelcp {

Matrix symmetrizant(const Matrix& a) {
  const std::size_t m = a.dim();
  Matrix s(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedTrue: return "CertifiedTrue";
    case Verdict::CertifiedFalse: return "CertifiedFalse";
    case Verdict::ProbablyTrue: return "ProbablyTrue";
  }
  return "?";
}

const char* to_string(QRoute r) {
  switch (r) {
    case QRoute::PMatrix: return "p-matrix";
    case QRoute::Positive: return "positive";
    case QRoute::OracleNoSolution: return "oracle-no-solution";
    case QRoute::Sampled: return "sampled";
  }
  return "?";
}

const char* to_string(TrichotomyClass c) {
  switch (c) {
    case TrichotomyClass::PositiveDefinite: return "PositiveDefinite";
    case TrichotomyClass::NonpositiveForm: return "NonpositiveForm";
    case TrichotomyClass::Indefinite: return "Indefinite";
  }
  return "?";
}

PropertyVerdict is_positive_definite(const Matrix& a, double tol) {
  const SymEigen eig = sym_eigen(symmetrizant(a));
  const std::size_t last = a.dim() - 1;
  EigenCertificate cert{eig.eigenvalues[last], eig.basis.column(last), 0.0};
  cert.form_value = dot(a * cert.eigenvector, cert.eigenvector);
  const Verdict v = cert.eigenvalue > tol ? Verdict::CertifiedTrue : Verdict::CertifiedFalse;
  return {v, std::move(cert)};
}

PropertyVerdict is_p_matrix(const Matrix& a, double tol) {
  const std::size_t m = a.dim();
  if (m > kMaxMinorDim)
    throw Error(ErrorCode::DimensionTooLarge, "P-test limited to m <= 20");
  MinorCertificate smallest;
  smallest.minor = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx;
  std::size_t checked = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    idx.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
    const double minor = determinant(principal_submatrix(a, idx));
    ++checked;
    if (!(minor > tol))
      return {Verdict::CertifiedFalse, MinorCertificate{idx, minor, checked}};
    if (minor < smallest.minor) {
      smallest.minor = minor;
      smallest.index_set = idx;
    }
  }
  smallest.minors_checked = checked;
  return {Verdict::CertifiedTrue, std::move(smallest)};
}

PropertyVerdict has_f_property(const Matrix& a, double tol) {
  const std::size_t m = a.dim();
  InequalitySystem sys;
  const Matrix at = a.transpose();
  for (std::size_t i = 0; i < m; ++i) sys.rows.push_back(at.row(i));
  sys.rhs.assign(m, 0.0);
  sys.upper.assign(m, 1.0);
  const LpResult lp = lp_feasibility(Vector(m, 1.0), sys);
  if (lp.status != LpStatus::Optimal)
    throw Error(ErrorCode::NumericalBreakdown, "bounded F-test program did not reach an optimum");

  FeasibilityCertificate cert{lp.value, lp.point, scaled(-1.0, lp.point)};
  if (lp.value <= tol) return {Verdict::CertifiedTrue, std::move(cert)};
  return {Verdict::CertifiedFalse, std::move(cert)};
}

bool check_non_f_certificate(const Matrix& a, const Vector& y, double tol) {
  if (y.size() != a.dim()) return false;
  double sum = 0.0;
  for (double v : y) sum += v;
  const Vector aty = a.transpose() * y;
  return min_entry(y) >= -tol && sum > tol && *std::max_element(aty.begin(), aty.end()) <= tol;
}

bool has_feasible_point(const Matrix& m, const Vector& q) {
  InequalitySystem sys;
  for (std::size_t i = 0; i < m.dim(); ++i) sys.rows.push_back(scaled(-1.0, m.row(i)));
  sys.rhs = q;
  return lp_feasibility(Vector(m.dim(), 0.0), sys).status == LpStatus::Optimal;
}

namespace {

bool all_entries_exceed(const Matrix& a, double tol) {
  return std::all_of(a.data().begin(), a.data().end(), [tol](double v) { return v > tol; });
}

// Sign-pattern and coordinate vectors tried before random sampling. For small
// m every pattern in {+1,-1}^m except all-plus, in lexicographic order of the
// sign string; otherwise -1, -e_i and 1 - 2e_i.
std::vector<Vector> adversarial_qs(std::size_t m) {
  std::vector<Vector> qs;
  if (m <= 6) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      Vector q(m, 1.0);
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::uint64_t{1} << (m - 1 - i))) q[i] = -1.0;
      qs.push_back(std::move(q));
    }
    return qs;
  }
  qs.emplace_back(m, -1.0);
  for (std::size_t i = 0; i < m; ++i) {
    Vector q(m, 0.0);
    q[i] = -1.0;
    qs.push_back(std::move(q));
  }
  for (std::size_t i = 0; i < m; ++i) {
    Vector q(m, 1.0);
    q[i] = -1.0;
    qs.push_back(std::move(q));
  }
  return qs;
}

}  // namespace

PropertyVerdict q_property_check(const Matrix& a, std::size_t samples, std::uint64_t seed,
                                 double tol) {
  const std::size_t m = a.dim();
  if (m > kMaxQCheckDim)
    throw Error(ErrorCode::DimensionTooLarge, "Q semi-decision limited to m <= 12");

  if (is_p_matrix(a, tol).certified_true())
    return {Verdict::CertifiedTrue, QCertificate{QRoute::PMatrix, {}, 0}};
  if (all_entries_exceed(a, tol))
    return {Verdict::CertifiedTrue, QCertificate{QRoute::Positive, {}, 0}};

  auto unsolvable = [&](const Vector& q) {
    return enumerate_solutions(ClassicalLcp{a, q}, tol).empty();
  };
  for (const Vector& q : adversarial_qs(m))
    if (unsolvable(q)) return {Verdict::CertifiedFalse, QCertificate{QRoute::OracleNoSolution, q, 0}};

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (std::size_t s = 0; s < samples; ++s) {
    Vector q(m);
    for (double& v : q) v = normal(rng);
    if (unsolvable(q))
      return {Verdict::CertifiedFalse, QCertificate{QRoute::OracleNoSolution, q, s + 1}};
  }
  return {Verdict::ProbablyTrue, QCertificate{QRoute::Sampled, {}, samples}};
}

Trichotomy form_class(const Matrix& a, double tol) {
  const SymEigen eig = sym_eigen(symmetrizant(a));
  const double lmin = eig.eigenvalues.back();
  const double lmax = eig.eigenvalues.front();
  TrichotomyClass kind = TrichotomyClass::Indefinite;
  if (lmin > tol)
    kind = TrichotomyClass::PositiveDefinite;
  else if (lmax <= tol)
    kind = TrichotomyClass::NonpositiveForm;
  return {kind, lmin, lmax};
}

Trichotomy trichotomy(const Matrix& a, double tol) {
  (void)inverse(a);
  return form_class(a, tol);
}

}  // namespace conelcp
