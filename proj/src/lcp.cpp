#include "conelcp/lcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conelcp {

const char* outcome_name(const SolveOutcome& o) {
  if (std::holds_alternative<LcpSolution>(o)) return "Solution";
  if (std::holds_alternative<RayTermination>(o)) return "RayTermination";
  return "NoSolutionCertified";
}

namespace {

void require_conformal(const Matrix& m, const Vector& q, std::size_t cone_dim) {
  if (q.size() != m.dim() || cone_dim != m.dim())
    throw Error(ErrorCode::DimensionMismatch, "LCP data is not conformal");
}

Verification assemble(const Vector& x, Vector w, double primal, double dual, double tol) {
  Verification v;
  v.report.x = x;
  v.report.residual_primal = primal;
  v.report.residual_dual = dual;
  v.report.complementarity = std::abs(dot(x, w));
  v.accepted = primal <= tol && dual <= tol &&
               v.report.complementarity <= tol * (1.0 + norm2(x) * norm2(w));
  v.report.w = std::move(w);
  return v;
}

}  // namespace

Verification verify_solution(const ConeLcp& p, const Vector& x, double tol) {
  require_conformal(p.m, p.q, p.cone.dim());
  if (x.size() != p.m.dim()) throw Error(ErrorCode::DimensionMismatch, "x is not conformal");
  Vector w = add(p.m * x, p.q);
  const double primal = p.cone.violation(x);
  const double dual = p.cone.dual_violation(w);
  return assemble(x, std::move(w), primal, dual, tol);
}

Verification verify_solution(const ClassicalLcp& p, const Vector& x, double tol) {
  require_conformal(p.m, p.q, p.m.dim());
  if (x.size() != p.m.dim()) throw Error(ErrorCode::DimensionMismatch, "x is not conformal");
  Vector w = add(p.m * x, p.q);
  const double primal = std::max(0.0, -min_entry(x));
  const double dual = std::max(0.0, -min_entry(w));
  return assemble(x, std::move(w), primal, dual, tol);
}

std::size_t default_max_pivots(std::size_t m) {
  constexpr std::size_t cap = 1'000'000;
  if (m >= 17) return cap;
  return std::min<std::size_t>(cap, std::size_t{10} << m);
}

namespace {

// Solves M_αα x_α = -q_α with x = 0 off α. Empty optional when M_αα is singular.
std::optional<Vector> solve_on_support(const Matrix& m, const Vector& q,
                                       const std::vector<std::size_t>& alpha) {
  Vector x(m.dim(), 0.0);
  if (alpha.empty()) return x;
  Vector rhs(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) rhs[i] = -q[alpha[i]];
  try {
    const Vector xa = lu_solve(principal_submatrix(m, alpha), rhs);
    for (std::size_t i = 0; i < alpha.size(); ++i) x[alpha[i]] = xa[i];
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) return std::nullopt;
    throw;
  }
  return x;
}

constexpr double kLemkeVerifyTol = 1e-8;
constexpr double kPivotTol = 1e-11;

// Dense tableau for  I·w − M·z − d·z0 = q. Columns 0..m-1 hold w, m..2m-1
// hold z, 2m holds z0 and 2m+1 the right-hand side. The w block always
// carries B⁻¹, which supplies the lexicographic tie-break.
class LemkeTableau {
 public:
  explicit LemkeTableau(const ClassicalLcp& p)
      : m_(p.m.dim()), width_(2 * m_ + 2), t_(m_ * width_, 0.0), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      at(i, i) = 1.0;
      for (std::size_t j = 0; j < m_; ++j) at(i, m_ + j) = -p.m(i, j);
      at(i, 2 * m_) = -1.0;
      at(i, rhs_col()) = p.q[i];
      basis_[i] = i;
    }
  }

  std::size_t artificial() const { return 2 * m_; }
  std::size_t rhs_col() const { return 2 * m_ + 1; }
  std::size_t complement(std::size_t var) const { return var < m_ ? var + m_ : var - m_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  // Row leaving when z0 first enters: lexicographic minimum of (q_i, e_iᵀ)
  // under division by the -1 coefficient, i.e. smallest q with the largest
  // index on ties.
  std::size_t initial_row() const {
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (at(i, rhs_col()) <= at(r, rhs_col())) r = i;
    return r;
  }

  // Lexicographic minimum ratio row for the entering column, or nullopt on a ray.
  std::optional<std::size_t> ratio_row(std::size_t col) const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < m_; ++i) {
      if (at(i, col) <= kPivotTol) continue;
      if (!best) {
        best = i;
        continue;
      }
      const int cmp = compare_rows(i, *best, col);
      if (cmp < 0 || (cmp == 0 && basis_[i] == artificial())) best = i;
    }
    if (!best) return best;
    // The artificial leaves whenever it ties for the minimum ratio.
    const double theta = at(*best, rhs_col()) / at(*best, col);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] != artificial() || at(i, col) <= kPivotTol) continue;
      const double ratio = at(i, rhs_col()) / at(i, col);
      if (ratio <= theta + 1e-12 * (1.0 + std::abs(theta))) return i;
    }
    return best;
  }

  void pivot(std::size_t row, std::size_t col) {
    const double piv = at(row, col);
    for (std::size_t j = 0; j < width_; ++j) at(row, j) /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(row, j);
      at(i, col) = 0.0;
    }
    basis_[row] = col;
  }

  Vector z_values() const {
    Vector z(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= m_ && basis_[i] < 2 * m_) z[basis_[i] - m_] = at(i, rhs_col());
    return z;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

  // Compares (rhs, B⁻¹ row)/pivot between rows a and b.
  int compare_rows(std::size_t a, std::size_t b, std::size_t col) const {
    const double pa = at(a, col), pb = at(b, col);
    auto cmp = [&](double va, double vb) {
      const double ra = va / pa, rb = vb / pb;
      const double slack = 1e-12 * (1.0 + std::max(std::abs(ra), std::abs(rb)));
      if (ra < rb - slack) return -1;
      if (ra > rb + slack) return 1;
      return 0;
    };
    if (int c = cmp(at(a, rhs_col()), at(b, rhs_col())); c != 0) return c;
    for (std::size_t j = 0; j < m_; ++j)
      if (int c = cmp(at(a, j), at(b, j)); c != 0) return c;
    return 0;
  }

  std::size_t m_;
  std::size_t width_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

SolveOutcome lemke_solve(const ClassicalLcp& p, std::optional<std::size_t> max_pivots) {
  require_conformal(p.m, p.q, p.m.dim());
  const std::size_t m = p.m.dim();
  if (min_entry(p.q) >= 0.0) return verify_solution(p, Vector(m, 0.0), 0.0).report;

  const std::size_t limit = max_pivots.value_or(default_max_pivots(m));
  LemkeTableau tab(p);
  std::size_t pivots = 0;

  std::size_t row = tab.initial_row();
  std::size_t leaving = tab.basis()[row];
  tab.pivot(row, tab.artificial());
  ++pivots;

  while (true) {
    const std::size_t entering = tab.complement(leaving);
    const auto next = tab.ratio_row(entering);
    if (!next) return RayTermination{pivots};
    if (pivots >= limit)
      throw Error(ErrorCode::IterationLimit, "Lemke exceeded " + std::to_string(limit) + " pivots");
    leaving = tab.basis()[*next];
    tab.pivot(*next, entering);
    ++pivots;
    if (leaving == tab.artificial()) break;
  }

  // Recompute x on the terminal complementary basis to shed pivoting error.
  Vector x = tab.z_values();
  std::vector<std::size_t> alpha;
  for (std::size_t v : tab.basis())
    if (v >= m && v < 2 * m) alpha.push_back(v - m);
  std::sort(alpha.begin(), alpha.end());
  if (auto polished = solve_on_support(p.m, p.q, alpha)) {
    const Verification pv = verify_solution(p, *polished, kLemkeVerifyTol);
    if (pv.accepted || !verify_solution(p, x, kLemkeVerifyTol).accepted) x = *polished;
  }
  for (double& v : x) v = std::max(v, 0.0);

  Verification v = verify_solution(p, x, kLemkeVerifyTol);
  if (!v.accepted)
    throw Error(ErrorCode::NumericalBreakdown, "Lemke terminal point fails verification");
  return std::move(v.report);
}

std::vector<LcpSolution> enumerate_solutions(const ClassicalLcp& p, double tol) {
  require_conformal(p.m, p.q, p.m.dim());
  const std::size_t m = p.m.dim();
  if (m > kMaxEnumerationDim)
    throw Error(ErrorCode::DimensionTooLarge,
                "enumeration limited to m <= 20, got " + std::to_string(m));

  std::vector<LcpSolution> found;
  std::vector<std::size_t> alpha;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    alpha.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint64_t{1} << i)) alpha.push_back(i);
    const auto x = solve_on_support(p.m, p.q, alpha);
    if (!x) continue;
    const Vector w = add(p.m * *x, p.q);
    if (min_entry(*x) < -tol || min_entry(w) < -tol) continue;
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const LcpSolution& s) {
      return max_abs_diff(s.x, *x) <= kDedupRadius;
    });
    if (duplicate) continue;
    found.push_back(verify_solution(p, *x, tol).report);
  }
  return found;
}

ConeSolveResult solve_on_cone_detailed(const ConeLcp& p, double tol) {
  require_conformal(p.m, p.q, p.cone.dim());
  const Matrix& l = p.cone.generators();
  const Matrix lt = l.transpose();
  ConeSolveResult result{NoSolutionCertified{}, ClassicalLcp{lt * p.m * l, lt * p.q}, {}, false};

  SolveOutcome classical = lemke_solve(result.reduced);
  if (std::holds_alternative<RayTermination>(classical) &&
      p.m.dim() <= kEnumerationFallbackDim) {
    result.used_enumeration = true;
    const auto all = enumerate_solutions(result.reduced, tol);
    classical = all.empty() ? SolveOutcome{NoSolutionCertified{}} : SolveOutcome{all.front()};
  }
  if (!has_solution(classical)) {
    result.outcome = classical;
    return result;
  }

  const Vector& z = std::get<LcpSolution>(classical).x;
  result.reduced_solution = z;
  Verification v = verify_solution(p, l * z, tol);
  if (!v.accepted)
    throw Error(ErrorCode::NumericalBreakdown,
                "mapped cone solution fails verification at the requested tolerance");
  result.outcome = std::move(v.report);
  return result;
}

SolveOutcome solve_on_cone(const ConeLcp& p, double tol) {
  return solve_on_cone_detailed(p, tol).outcome;
}

}  // namespace conelcp
