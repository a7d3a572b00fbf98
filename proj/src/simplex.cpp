#include "conelcp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conelcp {

namespace {

constexpr double kEps = 1e-10;
constexpr std::size_t kBlandAfter = 1000;
constexpr std::size_t kMaxPivots = 100000;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_(rows * (cols + 1), 0.0), basis_(rows, 0),
        excluded_(cols, false) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double rhs(std::size_t i) const { return at(i, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  void exclude(std::size_t j) { excluded_[j] = true; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
    ++pivots_;
    if (pivots_ > kMaxPivots)
      throw Error(ErrorCode::IterationLimit, "simplex exceeded 100000 pivots");
  }

  // Maximizes cost·x from the current basic feasible solution. Returns false
  // when the objective is unbounded.
  bool optimize(const Vector& cost) {
    while (true) {
      const bool bland = pivots_ >= kBlandAfter;
      std::optional<std::size_t> entering;
      double best = kEps;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (excluded_[j]) continue;
        double r = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) r -= cost[basis_[i]] * at(i, j);
        if (r <= kEps) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (r > best) {
          best = r;
          entering = j;
        }
      }
      if (!entering) return true;

      std::optional<std::size_t> leaving;
      double theta = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, *entering);
        if (a <= kEps) continue;
        const double ratio = std::max(rhs(i), 0.0) / a;
        if (ratio < theta - kEps ||
            (ratio <= theta + kEps && leaving && basis_[i] < basis_[*leaving])) {
          theta = std::min(theta, ratio);
          leaving = i;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  double value(const Vector& cost) const {
    double v = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) v += cost[basis_[i]] * rhs(i);
    return v;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  std::size_t rows_, cols_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> excluded_;
  std::size_t pivots_ = 0;
};

}  // namespace

double constraint_violation(const InequalitySystem& system, const Vector& y) {
  double worst = std::max(0.0, -min_entry(y));
  for (std::size_t i = 0; i < system.rows.size(); ++i)
    worst = std::max(worst, dot(system.rows[i], y) - system.rhs[i]);
  for (std::size_t j = 0; j < system.upper.size(); ++j)
    worst = std::max(worst, y[j] - system.upper[j]);
  return worst;
}

LpResult lp_feasibility(const Vector& objective, const InequalitySystem& system) {
  const std::size_t n = objective.size();
  if (system.rows.size() != system.rhs.size() || (!system.upper.empty() && system.upper.size() != n))
    throw Error(ErrorCode::DimensionMismatch, "inequality system is not conformal");
  for (const Vector& row : system.rows)
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "constraint row length");

  // Constraint rows: G y ≤ h, then y_j ≤ u_j.
  std::vector<Vector> g = system.rows;
  Vector h = system.rhs;
  for (std::size_t j = 0; j < system.upper.size(); ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    g.push_back(std::move(e));
    h.push_back(system.upper[j]);
  }
  const std::size_t p = g.size();
  std::size_t artificials = 0;
  for (double v : h)
    if (v < 0.0) ++artificials;

  // Columns: y (n), slacks (p), artificials.
  const std::size_t cols = n + p + artificials;
  Tableau tab(p, cols);
  std::size_t next_art = n + p;
  for (std::size_t i = 0; i < p; ++i) {
    const double sign = h[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * g[i][j];
    tab.at(i, n + i) = sign;
    tab.rhs(i) = sign * h[i];
    if (sign < 0.0) {
      tab.at(i, next_art) = 1.0;
      tab.basis()[i] = next_art++;
    } else {
      tab.basis()[i] = n + i;
    }
  }

  LpResult result;
  if (artificials > 0) {
    Vector phase1(cols, 0.0);
    for (std::size_t j = n + p; j < cols; ++j) phase1[j] = -1.0;
    tab.optimize(phase1);
    if (tab.value(phase1) < -1e-9 * (1.0 + norm_inf(h))) {
      result.status = LpStatus::Infeasible;
      result.pivots = tab.pivots();
      return result;
    }
    for (std::size_t i = 0; i < p; ++i) {
      if (tab.basis()[i] < n + p) continue;
      for (std::size_t j = 0; j < n + p; ++j) {
        if (std::abs(tab.at(i, j)) > 1e-9) {
          tab.pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t j = n + p; j < cols; ++j) tab.exclude(j);
  }

  Vector cost(cols, 0.0);
  std::copy(objective.begin(), objective.end(), cost.begin());
  const bool bounded = tab.optimize(cost);
  result.pivots = tab.pivots();
  if (!bounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.point.assign(n, 0.0);
  for (std::size_t i = 0; i < p; ++i)
    if (tab.basis()[i] < n) result.point[tab.basis()[i]] = std::max(tab.rhs(i), 0.0);
  result.value = dot(objective, result.point);
  return result;
}

}  // namespace conelcp
