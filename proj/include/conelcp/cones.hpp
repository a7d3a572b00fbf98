#pragma once

#include "conelcp/linalg.hpp"

namespace conelcp {

inline constexpr double kDefaultConeTolerance = 1e-9;

/// Simplicial cone K = A·R^m_+ held by its generator matrix A (columns are
/// the generators) together with a cached A⁻¹. The dual is A⁻ᵀ·R^m_+.
class SimplicialCone {
 public:
  /// Throws SingularMatrix when the generators are linearly dependent.
  explicit SimplicialCone(Matrix generators);

  static SimplicialCone orthant(std::size_t m);

  std::size_t dim() const noexcept { return generators_.dim(); }
  const Matrix& generators() const noexcept { return generators_; }
  const Matrix& inv_generators() const noexcept { return inv_generators_; }

  /// Coordinates t with x = A t.
  Vector coordinates(const Vector& x) const { return inv_generators_ * x; }

  SimplicialCone dual() const;
  bool contains(const Vector& x, double tol = kDefaultConeTolerance) const;
  bool dual_contains(const Vector& y, double tol = kDefaultConeTolerance) const;

  /// How far x lies outside K, measured on its coordinates (0 when inside).
  double violation(const Vector& x) const;
  double dual_violation(const Vector& y) const;

 private:
  SimplicialCone(Matrix generators, Matrix inv_generators);

  Matrix generators_;
  Matrix inv_generators_;
};

SimplicialCone cone_from_generators(const Matrix& a);
SimplicialCone dual(const SimplicialCone& k);
bool contains(const SimplicialCone& k, const Vector& x, double tol = kDefaultConeTolerance);
bool dual_contains(const SimplicialCone& k, const Vector& y, double tol = kDefaultConeTolerance);
/// L·K, generated by L·A.
SimplicialCone image_cone(const Matrix& l, const SimplicialCone& k);

}  // namespace conelcp
