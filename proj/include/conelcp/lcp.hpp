#pragma once

// Linear complementarity: find x ∈ K with w = Mx + q ∈ K* and ⟨x, w⟩ = 0.

#include <cstdint>
#include <optional>
#include <variant>

#include "conelcp/cones.hpp"
#include "conelcp/linalg.hpp"

namespace conelcp {

struct ClassicalLcp {
  Matrix m;
  Vector q;
};

struct ConeLcp {
  SimplicialCone cone;
  Matrix m;
  Vector q;
};

/// Residual report for a candidate x. residual_primal is the cone violation
/// of x, residual_dual the dual-cone violation of w, complementarity |⟨x,w⟩|.
struct LcpSolution {
  Vector x;
  Vector w;
  double residual_primal = 0.0;
  double residual_dual = 0.0;
  double complementarity = 0.0;
};

struct Verification {
  LcpSolution report;
  bool accepted = false;
};

struct RayTermination {
  std::size_t pivots = 0;
};
struct NoSolutionCertified {};

using SolveOutcome = std::variant<LcpSolution, RayTermination, NoSolutionCertified>;

inline bool has_solution(const SolveOutcome& o) { return std::holds_alternative<LcpSolution>(o); }
const char* outcome_name(const SolveOutcome& o);

/// Accepts iff x ∈ K, w ∈ K* (each within tol) and |⟨x,w⟩| ≤ tol·(1 + ‖x‖‖w‖).
Verification verify_solution(const ConeLcp& p, const Vector& x, double tol);
Verification verify_solution(const ClassicalLcp& p, const Vector& x, double tol);

/// 10·2^m capped at 10⁶.
std::size_t default_max_pivots(std::size_t m);

/// Lemke's complementary pivoting with covering vector (1,…,1) and a
/// lexicographic ratio test. Solutions are polished on their complementary
/// basis and verified on R^m_+ at 1e-8. Throws IterationLimit.
SolveOutcome lemke_solve(const ClassicalLcp& p, std::optional<std::size_t> max_pivots = {});

inline constexpr std::size_t kMaxEnumerationDim = 20;
inline constexpr double kDedupRadius = 1e-7;

/// Every complementary index set α with M_αα nonsingular is solved and kept
/// when x ≥ -tol and w ≥ -tol. Solutions closer than 1e-7 (∞-norm) are
/// reported once. An empty result means no complementary basis is feasible.
/// Throws DimensionTooLarge above m = 20.
std::vector<LcpSolution> enumerate_solutions(const ClassicalLcp& p, double tol);

/// Reduces LCP(K, M, q) with K = L·R^m_+ to the classical LCP(LᵀML, Lᵀq) and
/// maps a solution z back as x = L·z.
struct ConeSolveResult {
  SolveOutcome outcome;
  ClassicalLcp reduced;
  std::optional<Vector> reduced_solution;
  bool used_enumeration = false;
};

ConeSolveResult solve_on_cone_detailed(const ConeLcp& p, double tol);
SolveOutcome solve_on_cone(const ConeLcp& p, double tol);

inline constexpr std::size_t kEnumerationFallbackDim = 12;

}  // namespace conelcp
