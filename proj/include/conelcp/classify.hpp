#pragma once

// Matrix properties relevant to complementarity: positive definiteness, the
// P-property (principal minors), the F-property (general feasibility), a
// semi-decision for the Q-property, and the three-way split by the sign
// behaviour of the quadratic form ⟨Ax, x⟩.

#include <cstdint>
#include <string>
#include <variant>

#include "conelcp/linalg.hpp"

namespace conelcp {

inline constexpr double kDefaultTolerance = 1e-9;

/// (A + Aᵀ)/2, exactly symmetric.
Matrix symmetrizant(const Matrix& a);

enum class Verdict { CertifiedTrue, CertifiedFalse, ProbablyTrue };
const char* to_string(Verdict v);

/// Eigenpair of S(A). For a positive verdict this is the smallest eigenvalue
/// (> tol); for a negative one, v satisfies ⟨Av, v⟩ ≤ tol·‖v‖².
struct EigenCertificate {
  double eigenvalue = 0.0;
  Vector eigenvector;
  double form_value = 0.0;  // ⟨Av, v⟩
};

/// Principal minor on a 0-based index set. Positive verdicts carry the
/// smallest minor, negative ones the first failing set in mask order.
struct MinorCertificate {
  std::vector<std::size_t> index_set;
  double minor = 0.0;
  std::size_t minors_checked = 0;
};

/// Solution of max Σy s.t. Aᵀy ≤ 0, 0 ≤ y ≤ 1. When the optimum is positive,
/// q = -y admits no x ≥ 0 with Ax + q ≥ 0.
struct FeasibilityCertificate {
  double lp_optimum = 0.0;
  Vector y;
  Vector q;
};

enum class QRoute { PMatrix, Positive, OracleNoSolution, Sampled };
const char* to_string(QRoute r);

struct QCertificate {
  QRoute route = QRoute::Sampled;
  Vector q;  // set for OracleNoSolution
  std::size_t samples = 0;
};

using Certificate =
    std::variant<EigenCertificate, MinorCertificate, FeasibilityCertificate, QCertificate>;

struct PropertyVerdict {
  Verdict verdict = Verdict::CertifiedFalse;
  Certificate certificate;

  bool certified_true() const { return verdict == Verdict::CertifiedTrue; }
  bool certified_false() const { return verdict == Verdict::CertifiedFalse; }
};

PropertyVerdict is_positive_definite(const Matrix& a, double tol = kDefaultTolerance);

inline constexpr std::size_t kMaxMinorDim = 20;
/// All 2^m - 1 principal minors exceed tol.
PropertyVerdict is_p_matrix(const Matrix& a, double tol = kDefaultTolerance);

/// Exact F-test on the dual characterization: F holds iff y ≥ 0, Aᵀy ≤ 0
/// forces y = 0.
PropertyVerdict has_f_property(const Matrix& a, double tol = kDefaultTolerance);

/// Checks y ≥ 0, Σy > tol and Aᵀy ≤ tol, the conditions under which q = -y
/// witnesses the failure of the F-property.
bool check_non_f_certificate(const Matrix& a, const Vector& y, double tol = kDefaultTolerance);

/// Whether some x ≥ 0 has Mx + q ≥ 0, decided by a phase-one simplex.
bool has_feasible_point(const Matrix& m, const Vector& q);

inline constexpr std::size_t kMaxQCheckDim = 12;
inline constexpr std::size_t kDefaultSamples = 200;

/// Semi-decision: CertifiedTrue via the P or positivity routes, CertifiedFalse
/// when the enumeration oracle finds an unsolvable q among sign-pattern and
/// sampled vectors, ProbablyTrue otherwise.
PropertyVerdict q_property_check(const Matrix& a, std::size_t samples, std::uint64_t seed,
                                 double tol = kDefaultTolerance);

enum class TrichotomyClass { PositiveDefinite, NonpositiveForm, Indefinite };
const char* to_string(TrichotomyClass c);

struct Trichotomy {
  TrichotomyClass kind;
  double lambda_min;
  double lambda_max;
};

/// Eigenvalues within tol of zero fall to the weaker class. Throws
/// SingularMatrix for non-invertible input.
Trichotomy trichotomy(const Matrix& a, double tol = kDefaultTolerance);

/// Classification by the spectrum of S(A) alone, for callers that do not need
/// the invertibility check.
Trichotomy form_class(const Matrix& a, double tol = kDefaultTolerance);

}  // namespace conelcp
