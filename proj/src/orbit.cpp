#include "conelcp/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "conelcp/lcp.hpp"

namespace conelcp {

Congruence::Congruence(Matrix factor) : factor_(std::move(factor)) { (void)inverse(factor_); }

Congruence Congruence::identity(std::size_t m) { return Congruence(Matrix::identity(m)); }

Matrix apply(const Congruence& c, const Matrix& a) {
  const Matrix& l = c.factor();
  return l.transpose() * a * l;
}

Congruence compose(const Congruence& first, const Congruence& second) {
  return Congruence(first.factor() * second.factor());
}

const char* to_string(WitnessClaim c) {
  switch (c) {
    case WitnessClaim::NonF: return "NonF";
    case WitnessClaim::PositiveQ: return "PositiveQ";
    case WitnessClaim::IdentityOrbit: return "IdentityOrbit";
  }
  return "?";
}

double reconstruction_residual(const Matrix& a, const CongruenceWitness& w) {
  return max_abs_diff(w.member, apply(w.congruence, a));
}

namespace {

double reconstruction_bound(const Matrix& a, const Matrix& l) {
  const double lmax = l.max_abs();
  return 1e-8 * (1.0 + a.max_abs() * lmax * lmax);
}

bool row_certifies_non_f(const Matrix& c, std::size_t row, double tol) {
  for (std::size_t j = 0; j < c.dim(); ++j) {
    const double v = c(row, j);
    if (j == row ? v > tol : v > 0.0) return false;
  }
  return true;
}

bool all_entries_exceed(const Matrix& a, double tol) {
  return std::all_of(a.data().begin(), a.data().end(), [tol](double v) { return v > tol; });
}

// Permutation factor P with (PᵀAP)(i, j) = A(source[i], source[j]).
Matrix permutation_factor(const std::vector<std::size_t>& source) {
  Matrix p(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) p(source[i], i) = 1.0;
  return p;
}

Matrix permute(const Matrix& a, const std::vector<std::size_t>& source) {
  Matrix b(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) b(i, j) = a(source[i], source[j]);
  return b;
}

bool is_identity_permutation(const std::vector<std::size_t>& source) {
  for (std::size_t i = 0; i < source.size(); ++i)
    if (source[i] != i) return false;
  return true;
}

}  // namespace

bool verify_witness(const Matrix& a, const CongruenceWitness& w, double tol) {
  if (reconstruction_residual(a, w) > reconstruction_bound(a, w.congruence.factor())) return false;
  switch (w.claim) {
    case WitnessClaim::NonF: {
      const auto& cert = std::get<NonFCertificate>(w.certificate);
      return row_certifies_non_f(w.member, cert.row, tol) && cert.q[cert.row] < 0.0 &&
             has_f_property(w.member, tol).certified_false();
    }
    case WitnessClaim::PositiveQ:
      return all_entries_exceed(w.member, tol);
    case WitnessClaim::IdentityOrbit:
      return max_abs_diff(w.member, Matrix::identity(a.dim())) <= 1e-7;
  }
  return false;
}

CongruenceWitness sign_flip_non_f_witness(const Matrix& a, double tol) {
  const std::size_t m = a.dim();
  const Vector d = a.diag();
  const std::size_t k =
      static_cast<std::size_t>(std::min_element(d.begin(), d.end()) - d.begin());
  if (d[k] > tol)
    throw Error(ErrorCode::NoNonpositiveDiagonal, "every diagonal entry exceeds tol");

  std::vector<std::size_t> source(m);
  std::iota(source.begin(), source.end(), std::size_t{0});
  std::swap(source[0], source[k]);
  Matrix c = permute(a, source);

  Vector signs(m, 1.0);
  for (std::size_t j = 1; j < m; ++j)
    if (c(0, j) > 0.0) signs[j] = -1.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) c(i, j) *= signs[i] * signs[j];

  Matrix factor = permutation_factor(source) * Matrix::diagonal(signs);
  Vector q(m, 0.0);
  q[0] = -1.0;
  return CongruenceWitness{Congruence(std::move(factor)), std::move(c), WitnessClaim::NonF,
                           NonFCertificate{std::move(q), 0}};
}

DiagonalExposure expose_positive_diagonal(const Matrix& a, double tol) {
  const SymEigen eig = sym_eigen(symmetrizant(a));
  if (eig.eigenvalues.front() <= tol)
    throw Error(ErrorCode::NoPositiveForm, "quadratic form is nonpositive");
  Congruence o(eig.basis);
  Matrix b = apply(o, a);
  const double bound = 1e-8 * (1.0 + a.max_abs());
  if (max_abs_diff(b.diag(), eig.eigenvalues) > bound)
    throw Error(ErrorCode::IterationInvariantBroken,
                "diagonal of OᵀAO departs from the spectrum of S(A)");
  return DiagonalExposure{std::move(o), std::move(b), eig.eigenvalues};
}

namespace {

// Least t ≥ 0 such that, for the shear mixing index p into index 0 over the
// leading block of order n, every entry of row 0 and column 0 is ≥ tol.
double minimal_shear(const Matrix& c, std::size_t n, std::size_t p, double tol) {
  double t_min = 0.0;
  // b00 = c00 + t (c0p + cp0) + t² cpp with cpp > 0.
  const double qa = c(p, p), qb = c(0, p) + c(p, 0), qc = c(0, 0) - tol;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc >= 0.0) t_min = std::max(t_min, (-qb + std::sqrt(disc)) / (2.0 * qa));
  for (std::size_t j = 1; j < n; ++j) {
    // b0j = c0j + t cpj and bj0 = cj0 + t cjp with cpj, cjp > 0.
    t_min = std::max(t_min, (tol - c(0, j)) / c(p, j));
    t_min = std::max(t_min, (tol - c(j, 0)) / c(j, p));
  }
  return t_min;
}

bool leading_block_positive(const Matrix& c, std::size_t n, double tol) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(c(i, j) > tol)) return false;
  return true;
}

}  // namespace

CongruenceWitness positivize(const Matrix& a, double tol) {
  const std::size_t m = a.dim();
  const Vector d = a.diag();
  const std::size_t seed =
      static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
  if (!(d[seed] > tol))
    throw Error(ErrorCode::NoPositiveDiagonal, "no diagonal entry exceeds tol");

  PositiveQCertificate cert;
  if (all_entries_exceed(a, tol)) {
    cert.min_entry = min_entry(a.data());
    return CongruenceWitness{Congruence::identity(m), a, WitnessClaim::PositiveQ, cert};
  }

  Matrix current = a;
  Matrix factor = Matrix::identity(m);
  auto apply_permutation = [&](const std::vector<std::size_t>& source) {
    if (is_identity_permutation(source)) return;
    current = permute(current, source);
    factor = factor * permutation_factor(source);
    ++cert.permutations;
  };

  std::vector<std::size_t> source(m);
  std::iota(source.begin(), source.end(), std::size_t{0});
  std::swap(source[0], source[seed]);
  apply_permutation(source);

  constexpr std::size_t p = 1;
  for (std::size_t n = 2; n <= m; ++n) {
    // Rotate positions 0..n-1 so that the next index sits in front of the
    // positive block, which then occupies 1..n-1.
    std::iota(source.begin(), source.end(), std::size_t{0});
    std::rotate(source.begin(), source.begin() + static_cast<std::ptrdiff_t>(n - 1),
                source.begin() + static_cast<std::ptrdiff_t>(n));
    apply_permutation(source);

    if (!leading_block_positive(current, n, tol)) {
      const double t = 2.0 * minimal_shear(current, n, p, tol) + 1.0;
      Matrix shear = Matrix::identity(m);
      shear(p, 0) = t;
      current = shear.transpose() * current * shear;
      factor = factor * shear;
      cert.shears.push_back(t);
    }
    if (!leading_block_positive(current, n, tol))
      throw Error(ErrorCode::IterationInvariantBroken,
                  "shear step failed to positivize block of order " + std::to_string(n));
  }

  cert.min_entry = min_entry(current.data());
  CongruenceWitness w{Congruence(std::move(factor)), std::move(current), WitnessClaim::PositiveQ,
                      std::move(cert)};
  if (reconstruction_residual(a, w) > reconstruction_bound(a, w.congruence.factor()))
    throw Error(ErrorCode::IterationInvariantBroken, "positive member does not reconstruct");
  return w;
}

OrbitWitnesses indefinite_witnesses(const Matrix& a, double tol) {
  const Trichotomy cls = trichotomy(a, tol);
  if (cls.kind != TrichotomyClass::Indefinite)
    throw Error(ErrorCode::NotIndefinite, std::string("matrix is ") + to_string(cls.kind));

  // The eigenbasis congruence puts the whole spectrum of S(A) on the
  // diagonal: λ_max > tol in front, λ_min ≤ tol at the back.
  const DiagonalExposure exposed = expose_positive_diagonal(a, tol);

  CongruenceWitness flip = sign_flip_non_f_witness(exposed.member, tol);
  CongruenceWitness non_f{compose(exposed.congruence, flip.congruence), std::move(flip.member),
                          WitnessClaim::NonF, std::move(flip.certificate)};

  CongruenceWitness pos = positivize(exposed.member, tol);
  CongruenceWitness positive_q{compose(exposed.congruence, pos.congruence),
                               std::move(pos.member), WitnessClaim::PositiveQ,
                               std::move(pos.certificate)};

  if (!verify_witness(a, non_f, tol))
    throw Error(ErrorCode::IterationInvariantBroken, "non-F witness failed verification");
  if (!verify_witness(a, positive_q, tol))
    throw Error(ErrorCode::IterationInvariantBroken, "positive witness failed verification");
  return OrbitWitnesses{std::move(non_f), std::move(positive_q)};
}

bool check_cone_non_f(const Matrix& a, const SimplicialCone& k, const Vector& q, double) {
  const Matrix& l = k.generators();
  const Matrix lt = l.transpose();
  return !has_feasible_point(lt * a * l, lt * q);
}

ConeWitnesses cone_witnesses(const Matrix& a, double tol, std::size_t samples,
                             std::uint64_t seed) {
  OrbitWitnesses orbit = indefinite_witnesses(a, tol);
  SimplicialCone non_f_cone(orbit.non_f.congruence.factor());
  const Vector& q = std::get<NonFCertificate>(orbit.non_f.certificate).q;
  Vector infeasible_q = lu_solve(non_f_cone.generators().transpose(), q);
  SimplicialCone q_cone(orbit.positive_q.congruence.factor());

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::size_t solved = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    Vector rq(a.dim());
    for (double& v : rq) v = normal(rng);
    try {
      if (has_solution(solve_on_cone(ConeLcp{q_cone, a, rq}, kConeSolveTolerance))) ++solved;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NumericalBreakdown && e.code() != ErrorCode::IterationLimit)
        throw;
    }
  }
  return ConeWitnesses{std::move(orbit), std::move(non_f_cone), std::move(infeasible_q),
                       std::move(q_cone), samples, solved};
}

Congruence congruence_to_identity(const Matrix& a, double tol) {
  const double asym = asymmetry(a);
  if (asym > 1e-9 * std::max(1.0, a.max_abs()))
    throw Error(ErrorCode::NotSymmetric, "asymmetry " + std::to_string(asym));
  const SymEigen eig = sym_eigen(a);
  if (eig.eigenvalues.back() <= tol)
    throw Error(ErrorCode::NotPositiveDefinite,
                "smallest eigenvalue " + std::to_string(eig.eigenvalues.back()));
  return Congruence(inverse(sqrt_spd(a)));
}

CongruenceWitness identity_orbit_witness(const Matrix& a, double tol) {
  Congruence l = congruence_to_identity(a, tol);
  Matrix member = apply(l, a);
  const double residual = max_abs_diff(member, Matrix::identity(a.dim()));
  return CongruenceWitness{std::move(l), std::move(member), WitnessClaim::IdentityOrbit,
                           IdentityOrbitCertificate{residual}};
}

Congruence random_congruence(std::size_t m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  while (true) {
    Matrix l(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) l(i, j) = normal(rng);
    try {
      const Matrix inv = inverse(l);
      if (l.max_abs() * inv.max_abs() < 1e4) return Congruence(std::move(l));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularMatrix) throw;
    }
  }
}

}  // namespace conelcp
