#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include <cstdint>
#include <random>

#include "conelcp/classify.hpp"
#include "conelcp/linalg.hpp"

namespace conelcp::testing {

inline Matrix normal_matrix(std::size_t m, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix g(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) g(i, k) = normal(rng);
  return g;
}

inline Vector normal_vector(std::size_t m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(m);
  for (double& x : v) x = normal(rng);
  return v;
}

inline Vector uniform_vector(std::size_t m, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(m);
  for (double& x : v) x = u(rng);
  return v;
}

inline std::size_t uniform_dim(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Matrix random_symmetric(std::size_t m, std::mt19937_64& rng) {
  const Matrix g = normal_matrix(m, rng);
  return 0.5 * (g + g.transpose());
}

inline Matrix random_spd(std::size_t m, std::mt19937_64& rng) {
  const Matrix g = normal_matrix(m, rng);
  return g.transpose() * g + 0.1 * Matrix::identity(m);
}

// PD in the nonsymmetric sense: SPD plus a skew part.
inline Matrix random_pd(std::size_t m, std::mt19937_64& rng) {
  const Matrix k = normal_matrix(m, rng);
  return random_spd(m, rng) + 0.5 * (k - k.transpose());
}

inline Matrix random_invertible(std::size_t m, std::mt19937_64& rng) {
  while (true) {
    const Matrix g = normal_matrix(m, rng);
    const double det = std::abs(determinant(g));
    if (det > 1e-3 * std::pow(g.max_abs(), static_cast<double>(m))) return g;
  }
}

inline Matrix random_indefinite(std::size_t m, std::mt19937_64& rng) {
  while (true) {
    const Matrix g = normal_matrix(m, rng);
    const Trichotomy t = form_class(g);
    if (t.kind != TrichotomyClass::Indefinite) continue;
    if (std::min(-t.lambda_min, t.lambda_max) < 1e-3) continue;
    if (std::abs(determinant(g)) < 1e-6) continue;
    return g;
  }
}

inline Matrix random_p_matrix(std::size_t m, std::mt19937_64& rng) {
  while (true) {
    const Matrix a = random_spd(m, rng) + normal_matrix(m, rng, 0.7);
    if (is_p_matrix(a).certified_true()) return a;
  }
}

}  // namespace conelcp::testing
