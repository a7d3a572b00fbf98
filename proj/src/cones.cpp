#include "conelcp/cones.hpp"

#include <algorithm>

namespace conelcp {

SimplicialCone::SimplicialCone(Matrix generators)
    : generators_(std::move(generators)), inv_generators_(inverse(generators_)) {}

SimplicialCone::SimplicialCone(Matrix generators, Matrix inv_generators)
    : generators_(std::move(generators)), inv_generators_(std::move(inv_generators)) {}

SimplicialCone SimplicialCone::orthant(std::size_t m) {
  return SimplicialCone(Matrix::identity(m), Matrix::identity(m));
}

SimplicialCone SimplicialCone::dual() const {
  // (A⁻ᵀ)⁻¹ = Aᵀ exactly, so dual().dual() reproduces A bit for bit.
  return SimplicialCone(inv_generators_.transpose(), generators_.transpose());
}

double SimplicialCone::violation(const Vector& x) const {
  return std::max(0.0, -min_entry(coordinates(x)));
}

double SimplicialCone::dual_violation(const Vector& y) const {
  return std::max(0.0, -min_entry(generators_.transpose() * y));
}

bool SimplicialCone::contains(const Vector& x, double tol) const { return violation(x) <= tol; }

bool SimplicialCone::dual_contains(const Vector& y, double tol) const {
  return dual_violation(y) <= tol;
}

SimplicialCone cone_from_generators(const Matrix& a) { return SimplicialCone(a); }

SimplicialCone dual(const SimplicialCone& k) { return k.dual(); }

bool contains(const SimplicialCone& k, const Vector& x, double tol) { return k.contains(x, tol); }

bool dual_contains(const SimplicialCone& k, const Vector& y, double tol) {
  return k.dual_contains(y, tol);
}

SimplicialCone image_cone(const Matrix& l, const SimplicialCone& k) {
  return SimplicialCone(l * k.generators());
}

}  // namespace conelcp
