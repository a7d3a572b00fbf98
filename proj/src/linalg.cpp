#include "conelcp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace conelcp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::BadIndexSet: return "BadIndexSet";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::NoNonpositiveDiagonal: return "NoNonpositiveDiagonal";
    case ErrorCode::NoPositiveForm: return "NoPositiveForm";
    case ErrorCode::NoPositiveDiagonal: return "NoPositiveDiagonal";
    case ErrorCode::NotIndefinite: return "NotIndefinite";
    case ErrorCode::IterationInvariantBroken: return "IterationInvariantBroken";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Matrix::Matrix(std::size_t m) : m_(m), a_(m * m, 0.0) {
  if (m == 0) throw Error(ErrorCode::InvalidInput, "matrix dimension must be positive");
}

Matrix Matrix::identity(std::size_t m) {
  Matrix r(m);
  for (std::size_t i = 0; i < m; ++i) r(i, i) = 1.0;
  return r;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix r(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) r(i, i) = d[i];
  return r;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t m = rows.size();
  if (m == 0) throw Error(ErrorCode::InvalidInput, "matrix has no rows");
  Matrix r(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != m)
      throw Error(ErrorCode::InvalidInput, "row " + std::to_string(i) + " has length " +
                                               std::to_string(rows[i].size()) + ", expected " +
                                               std::to_string(m));
    for (std::size_t j = 0; j < m; ++j) {
      if (!std::isfinite(rows[i][j]))
        throw Error(ErrorCode::InvalidInput, "non-finite matrix entry");
      r(i, j) = rows[i][j];
    }
  }
  return r;
}

std::vector<std::vector<double>> Matrix::rows() const {
  std::vector<std::vector<double>> out(m_);
  for (std::size_t i = 0; i < m_; ++i) out[i] = row(i);
  return out;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(a_.begin() + static_cast<std::ptrdiff_t>(i * m_),
                a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * m_));
}

Vector Matrix::column(std::size_t j) const {
  Vector c(m_);
  for (std::size_t i = 0; i < m_; ++i) c[i] = (*this)(i, j);
  return c;
}

Vector Matrix::diag() const {
  Vector d(m_);
  for (std::size_t i = 0; i < m_; ++i) d[i] = (*this)(i, i);
  return d;
}

Matrix Matrix::transpose() const {
  Matrix t(m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const {
  double r = 0.0;
  for (double v : a_) r = std::max(r, std::abs(v));
  return r;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

bool Matrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

void require_conformal(std::size_t m, std::size_t n) {
  if (m != n)
    throw Error(ErrorCode::DimensionMismatch, std::to_string(m) + " vs " + std::to_string(n));
}

}  // namespace

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  const std::size_t m = a.dim();
  Matrix c(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  require_conformal(a.dim(), x.size());
  Vector y(a.dim(), 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  Matrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  Matrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = s * a(i, j);
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  return max_abs_diff(a.data(), b.data());
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_conformal(x.size(), y.size());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double norm_inf(std::span<const double> x) {
  double r = 0.0;
  for (double v : x) r = std::max(r, std::abs(v));
  return r;
}

double min_entry(std::span<const double> x) {
  return x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
}

Vector add(std::span<const double> x, std::span<const double> y) {
  require_conformal(x.size(), y.size());
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

Vector sub(std::span<const double> x, std::span<const double> y) {
  require_conformal(x.size(), y.size());
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

Vector scaled(double s, std::span<const double> x) {
  Vector r(x.begin(), x.end());
  for (double& v : r) v *= s;
  return r;
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  require_conformal(x.size(), y.size());
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(x[i] - y[i]));
  return r;
}

namespace {

struct LuFactors {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  double min_pivot = 0.0;  // smallest |pivot| encountered
};

LuFactors lu_factor(const Matrix& a) {
  const std::size_t m = a.dim();
  LuFactors f{a, std::vector<std::size_t>(m), 1, std::numeric_limits<double>::infinity()};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  Matrix& lu = f.lu;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < m; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < m; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    const double pivot = lu(k, k);
    f.min_pivot = std::min(f.min_pivot, std::abs(pivot));
    if (pivot == 0.0) continue;
    for (std::size_t i = k + 1; i < m; ++i) {
      const double l = lu(i, k) / pivot;
      lu(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < m; ++j) lu(i, j) -= l * lu(k, j);
    }
  }
  return f;
}

const LuFactors& require_nonsingular(const LuFactors& f, const Matrix& a) {
  const double scale = a.max_abs();
  if (scale == 0.0 || f.min_pivot < kSingularityRatio * scale)
    throw Error(ErrorCode::SingularMatrix, "matrix is numerically singular");
  return f;
}

Vector lu_back_substitute(const LuFactors& f, std::span<const double> b) {
  const std::size_t m = f.lu.dim();
  Vector x(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = m; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < m; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}

}  // namespace

Vector lu_solve(const Matrix& a, std::span<const double> b) {
  require_conformal(a.dim(), b.size());
  const LuFactors f = lu_factor(a);
  require_nonsingular(f, a);
  return lu_back_substitute(f, b);
}

Matrix inverse(const Matrix& a) {
  const std::size_t m = a.dim();
  const LuFactors f = lu_factor(a);
  require_nonsingular(f, a);
  Matrix inv(m);
  Vector e(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    e[j] = 1.0;
    const Vector col = lu_back_substitute(f, e);
    for (std::size_t i = 0; i < m; ++i) inv(i, j) = col[i];
    e[j] = 0.0;
  }
  return inv;
}

double determinant(const Matrix& a) {
  const LuFactors f = lu_factor(a);
  double det = f.sign;
  for (std::size_t i = 0; i < a.dim(); ++i) det *= f.lu(i, i);
  return det;
}

double asymmetry(const Matrix& s) {
  double r = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j) r = std::max(r, std::abs(s(i, j) - s(j, i)));
  return r;
}

namespace {

constexpr double kSymmetryTolerance = 1e-9;
constexpr double kJacobiRatio = 1e-12;
constexpr int kMaxSweeps = 100;

void require_symmetric(const Matrix& s) {
  const double asym = asymmetry(s);
  if (asym > kSymmetryTolerance * std::max(1.0, s.max_abs()))
    throw Error(ErrorCode::NotSymmetric, "asymmetry " + std::to_string(asym));
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymEigen sym_eigen(const Matrix& s) {
  require_symmetric(s);
  const std::size_t m = s.dim();
  Matrix a(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));
  Matrix v = Matrix::identity(m);

  const double threshold = kJacobiRatio * a.frobenius();
  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (++sweep > kMaxSweeps)
      throw Error(ErrorCode::IterationLimit, "Jacobi did not converge in 100 sweeps");
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymEigen out{Vector(m), Matrix(m)};
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t src = order[c];
    out.eigenvalues[c] = a(src, src);
    double biggest = 0.0;
    for (std::size_t k = 0; k < m; ++k) biggest = std::max(biggest, std::abs(v(k, src)));
    double sign = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (std::abs(v(k, src)) >= biggest - 1e-12) {
        sign = v(k, src) < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t k = 0; k < m; ++k) out.basis(k, c) = sign * v(k, src);
  }
  return out;
}

Matrix sqrt_spd(const Matrix& a) {
  const SymEigen eig = sym_eigen(a);
  const double lambda_min = eig.eigenvalues.back();
  if (lambda_min <= 1e-10)
    throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue " + std::to_string(lambda_min));
  const std::size_t m = a.dim();
  Matrix r(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < m; ++k)
        s += eig.basis(i, k) * std::sqrt(eig.eigenvalues[k]) * eig.basis(j, k);
      r(i, j) = s;
      r(j, i) = s;
    }
  return r;
}

Matrix principal_submatrix(const Matrix& a, std::span<const std::size_t> idx) {
  Matrix sub(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = a(idx[i], idx[j]);
  return sub;
}

double principal_minor(const Matrix& a, std::span<const std::size_t> idx) {
  if (idx.empty()) throw Error(ErrorCode::BadIndexSet, "empty index set");
  std::vector<bool> seen(a.dim(), false);
  for (std::size_t i : idx) {
    if (i >= a.dim()) throw Error(ErrorCode::BadIndexSet, "index " + std::to_string(i) + " out of range");
    if (seen[i]) throw Error(ErrorCode::BadIndexSet, "duplicate index " + std::to_string(i));
    seen[i] = true;
  }
  return determinant(principal_submatrix(a, idx));
}

}  // namespace conelcp
