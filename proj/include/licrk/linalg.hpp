#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace licrk {

using Vector = std::vector<double>;

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> data() const { return data_; }

  DenseMatrix transpose() const;
  Vector apply(std::span<const double> x) const;
  /// Max absolute row sum.
  double norm_inf() const;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator*(double s, const DenseMatrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Small vector helpers used throughout the integrators.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
Vector sub(std::span<const double> a, std::span<const double> b);

/// LU factorisation with partial pivoting. Throws Errc::singular_matrix when
/// a pivot falls below 1e-14 * ||M||_inf.
class LuFactor {
 public:
  explicit LuFactor(DenseMatrix m);
  Vector solve(std::span<const double> rhs) const;
  std::size_t size() const { return lu_.rows(); }

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

Vector lu_solve(const DenseMatrix& m, std::span<const double> rhs);

class QuadraticODE;

/// Block system of the linearly implicit stage equations
///   Y_i - h sum_j a_ij Shat_j Q Y_j = y0,
/// materialised densely with (i,j) block delta_ij I - h a_ij Shat_j Q.
std::pair<DenseMatrix, Vector> assemble_stage_system(const QuadraticODE& problem,
                                                     std::span<const double> y0, double h,
                                                     const DenseMatrix& a,
                                                     std::span<const DenseMatrix> shat);

/// Splits a stacked sd-vector into s stage vectors of length d.
std::vector<Vector> unstack(std::span<const double> stacked, std::size_t s, std::size_t d);

/// Solves the same stage equations through the full block system.
std::vector<Vector> solve_stages_block(const QuadraticODE& problem, std::span<const double> y0,
                                       double h, const DenseMatrix& a,
                                       std::span<const DenseMatrix> shat);

/// Sequential path for lower-triangular A: s solves of size d.
std::vector<Vector> solve_stages_dirk(const QuadraticODE& problem, std::span<const double> y0,
                                      double h, const DenseMatrix& a,
                                      std::span<const DenseMatrix> shat);

bool is_lower_triangular(const DenseMatrix& a);

}  // namespace licrk
