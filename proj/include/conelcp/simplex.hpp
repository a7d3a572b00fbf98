#pragma once

// Small dense two-phase simplex:  maximize cᵀy  s.t.  G y ≤ h,  0 ≤ y ≤ u.

#include <optional>

#include "conelcp/linalg.hpp"

namespace conelcp {

struct InequalitySystem {
  std::vector<Vector> rows;  // each of length n
  Vector rhs;                // h, one entry per row
  Vector upper;              // u; empty means no upper bounds
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vector point;
  std::size_t pivots = 0;
};

/// Dantzig pricing for the first 1000 pivots, Bland's rule afterwards.
/// Throws IterationLimit after 100000 pivots.
LpResult lp_feasibility(const Vector& objective, const InequalitySystem& system);

/// Largest violation of Gy ≤ h, y ≥ 0 and y ≤ u at a point.
double constraint_violation(const InequalitySystem& system, const Vector& y);

}  // namespace conelcp
