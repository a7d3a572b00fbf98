#pragma once

// Dense small-scale real linear algebra. Matrices are square and stored
// row-major; vectors are plain std::vector<double> in column convention.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conelcp {

enum class ErrorCode {
  SingularMatrix,
  NotSymmetric,
  NotPositiveDefinite,
  IterationLimit,
  BadIndexSet,
  DimensionTooLarge,
  DimensionMismatch,
  InvalidInput,
  NumericalBreakdown,
  NoNonpositiveDiagonal,
  NoPositiveForm,
  NoPositiveDiagonal,
  NotIndefinite,
  IterationInvariantBroken,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  /// Zero matrix of dimension m (m >= 1).
  explicit Matrix(std::size_t m);

  static Matrix identity(std::size_t m);
  static Matrix diagonal(std::span<const double> d);
  /// Throws InvalidInput unless rows form a non-empty square array of finite values.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const noexcept { return m_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * m_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * m_ + j]; }

  std::vector<std::vector<double>> rows() const;
  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  Vector diag() const;

  Matrix transpose() const;
  double max_abs() const;
  double frobenius() const;
  bool all_finite() const;

  std::span<const double> data() const noexcept { return a_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// Entrywise max |a - b|.
double max_abs_diff(const Matrix& a, const Matrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
double min_entry(std::span<const double> x);
Vector add(std::span<const double> x, std::span<const double> y);
Vector sub(std::span<const double> x, std::span<const double> y);
Vector scaled(double s, std::span<const double> x);
double max_abs_diff(std::span<const double> x, std::span<const double> y);

/// Pivots below this fraction of ‖A‖_max count as zero.
inline constexpr double kSingularityRatio = 1e-12;

/// x with Ax = b by Gaussian elimination with partial pivoting.
Vector lu_solve(const Matrix& a, std::span<const double> b);
Matrix inverse(const Matrix& a);
/// Determinant via partial-pivoting LU; never throws on singular input.
double determinant(const Matrix& a);

/// Spectral decomposition S = O diag(λ) Oᵀ. Eigenvalues are sorted in
/// descending order (stable with respect to the original diagonal index) and
/// each column of O has its largest-magnitude component positive.
struct SymEigen {
  Vector eigenvalues;
  Matrix basis;
};

SymEigen sym_eigen(const Matrix& s);

/// Symmetric R with R·R = A, for symmetric A with λ_min > 1e-10.
Matrix sqrt_spd(const Matrix& a);

/// Determinant of the submatrix on rows and columns idx (0-based).
double principal_minor(const Matrix& a, std::span<const std::size_t> idx);

/// Submatrix on rows and columns idx, no validation.
Matrix principal_submatrix(const Matrix& a, std::span<const std::size_t> idx);

/// Max |S - Sᵀ| entry.
double asymmetry(const Matrix& s);

}  // namespace conelcp
