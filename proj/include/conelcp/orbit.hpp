#pragma once

// Congruence orbits D(A) = { LᵀAL : L invertible } and explicit members that
// witness where the F, Q and P properties hold or fail across the orbit.

#include <cstdint>
#include <random>
#include <variant>

#include "conelcp/classify.hpp"
#include "conelcp/cones.hpp"
#include "conelcp/linalg.hpp"

namespace conelcp {

/// Invertible factor L acting as A ↦ LᵀAL.
class Congruence {
 public:
  /// Throws SingularMatrix when L is not invertible.
  explicit Congruence(Matrix factor);
  static Congruence identity(std::size_t m);

  const Matrix& factor() const noexcept { return factor_; }
  std::size_t dim() const noexcept { return factor_.dim(); }

 private:
  Matrix factor_;
};

Matrix apply(const Congruence& c, const Matrix& a);
/// Congruence with factor L₁L₂, so apply(second, apply(first, A)) equals
/// apply(compose(first, second), A).
Congruence compose(const Congruence& first, const Congruence& second);

enum class WitnessClaim { NonF, PositiveQ, IdentityOrbit };
const char* to_string(WitnessClaim c);

/// Row `row` of the member is entrywise ≤ 0 off the diagonal and its
/// diagonal entry is ≤ tol, so member·x + q has a negative entry for every
/// x ≥ 0 when q = -e_row.
struct NonFCertificate {
  Vector q;
  std::size_t row = 0;
};

struct PositiveQCertificate {
  double min_entry = 0.0;
  std::vector<double> shears;  // t of every shear step, in order
  std::size_t permutations = 0;
};

struct IdentityOrbitCertificate {
  double residual = 0.0;  // ‖LᵀAL − I‖_max
};

using WitnessCertificate =
    std::variant<NonFCertificate, PositiveQCertificate, IdentityOrbitCertificate>;

struct CongruenceWitness {
  Congruence congruence;
  Matrix member;
  WitnessClaim claim;
  WitnessCertificate certificate;
};

/// ‖member − LᵀAL‖_max.
double reconstruction_residual(const Matrix& a, const CongruenceWitness& w);

/// Re-checks the claim's certificate against the stored member and the
/// member against LᵀAL.
bool verify_witness(const Matrix& a, const CongruenceWitness& w, double tol = kDefaultTolerance);

/// Moves the smallest diagonal entry to position 0 by a transposition and
/// flips the sign of every index whose entry in that row is positive. The
/// resulting member has row 0 entrywise nonpositive off the diagonal.
/// Throws NoNonpositiveDiagonal when every diagonal entry exceeds tol.
CongruenceWitness sign_flip_non_f_witness(const Matrix& a, double tol = kDefaultTolerance);

/// Orthogonal eigenbasis O of S(A) and B = OᵀAO, whose diagonal equals the
/// spectrum of S(A) in descending order.
struct DiagonalExposure {
  Congruence congruence;
  Matrix member;
  Vector eigenvalues;
};

/// Throws NoPositiveForm when λ_max(S(A)) ≤ tol.
DiagonalExposure expose_positive_diagonal(const Matrix& a, double tol = kDefaultTolerance);

/// Grows an entrywise-positive leading block one index at a time: a cyclic
/// permutation brings the next index to the front, then the shear
/// L = I + t·e_p e_0ᵀ (p = 1) adds t times the row and column of a positive
/// index. t = 2·t_min + 1 where t_min is the least t ≥ 0 making every new
/// entry ≥ tol. Throws NoPositiveDiagonal when no diagonal entry exceeds tol.
CongruenceWitness positivize(const Matrix& a, double tol = kDefaultTolerance);

struct OrbitWitnesses {
  CongruenceWitness non_f;
  CongruenceWitness positive_q;
};

/// Both members for an indefinite A. Throws NotIndefinite otherwise.
OrbitWitnesses indefinite_witnesses(const Matrix& a, double tol = kDefaultTolerance);

/// Cone-level reading of the orbit witnesses: A lacks the F-property on
/// non_f_cone = L₁·R^m_+ (infeasible_q = L₁⁻ᵀq is the transported
/// certificate) and has the Q-property on q_cone = L₂·R^m_+.
struct ConeWitnesses {
  OrbitWitnesses orbit;
  SimplicialCone non_f_cone;
  Vector infeasible_q;
  SimplicialCone q_cone;
  std::size_t samples = 0;
  std::size_t solved_samples = 0;
};

inline constexpr double kConeSolveTolerance = 1e-7;

ConeWitnesses cone_witnesses(const Matrix& a, double tol = kDefaultTolerance,
                             std::size_t samples = 100, std::uint64_t seed = 0);

/// True when (A·K + q) ∩ K* is empty, checked on the classical transport
/// KᵀAK, Kᵀq through a nonpositive row.
bool check_cone_non_f(const Matrix& a, const SimplicialCone& k, const Vector& q,
                      double tol = kDefaultTolerance);

/// L = R⁻¹ with R the SPD square root of A, so LᵀAL = I. Throws NotSymmetric
/// or NotPositiveDefinite.
Congruence congruence_to_identity(const Matrix& a, double tol = kDefaultTolerance);
CongruenceWitness identity_orbit_witness(const Matrix& a, double tol = kDefaultTolerance);

/// Random factor with unit-normal entries, resampled until comfortably
/// invertible.
Congruence random_congruence(std::size_t m, std::mt19937_64& rng);

}  // namespace conelcp
