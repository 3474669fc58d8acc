#include "licrk/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "licrk/errors.hpp"
#include "licrk/problem.hpp"

namespace licrk {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(Errc::invalid_argument, "DenseMatrix: entry count does not match shape");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  DenseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(Errc::invalid_argument, "DenseMatrix: ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * c);
  }
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector DenseMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw Error(Errc::invalid_argument, "DenseMatrix::apply: size mismatch");
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* r = data_.data() + i * cols_;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

double DenseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (double v : row(i)) acc += std::abs(v);
    best = std::max(best, acc);
  }
  return best;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::invalid_argument, "matrix product: shape mismatch");
  DenseMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(Errc::invalid_argument, "matrix sum: shape mismatch");
  DenseMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) { return a + (-1.0) * b; }

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (double& v : c.data_) v *= s;
  return c;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vector sub(std::span<const double> a, std::span<const double> b) {
  Vector r(a.begin(), a.end());
  axpy(-1.0, b, r);
  return r;
}

LuFactor::LuFactor(DenseMatrix m) : lu_(std::move(m)), perm_(lu_.rows()) {
  if (!lu_.square()) throw Error(Errc::invalid_argument, "lu: matrix is not square");
  const std::size_t n = lu_.rows();
  const double threshold = 1e-14 * lu_.norm_inf();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(p, k))) p = i;
    if (!(std::abs(lu_(p, k)) > threshold)) {
      throw Error(Errc::singular_matrix,
                  "lu: pivot below 1e-14*||M|| in column " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
    }
    const double pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu_(i, k) / pivot;
      lu_(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

Vector LuFactor::solve(std::span<const double> rhs) const {
  const std::size_t n = lu_.rows();
  if (rhs.size() != n) throw Error(Errc::invalid_argument, "lu_solve: rhs size mismatch");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

Vector lu_solve(const DenseMatrix& m, std::span<const double> rhs) {
  if (!m.square() || rhs.size() != m.rows())
    throw Error(Errc::invalid_argument, "lu_solve: shape mismatch");
  return LuFactor(m).solve(rhs);
}

namespace {

void check_stage_inputs(const QuadraticODE& problem, std::span<const double> y0,
                        const DenseMatrix& a, std::span<const DenseMatrix> shat) {
  const std::size_t d = problem.dim();
  if (y0.size() != d) throw Error(Errc::invalid_argument, "stage system: y0 has wrong size");
  if (!a.square() || shat.size() != a.rows())
    throw Error(Errc::invalid_argument, "stage system: need one frozen S per stage");
  for (const auto& sj : shat)
    if (sj.rows() != d || sj.cols() != d)
      throw Error(Errc::invalid_argument, "stage system: frozen S has wrong shape");
}

}  // namespace

std::pair<DenseMatrix, Vector> assemble_stage_system(const QuadraticODE& problem,
                                                     std::span<const double> y0, double h,
                                                     const DenseMatrix& a,
                                                     std::span<const DenseMatrix> shat) {
  check_stage_inputs(problem, y0, a, shat);
  const std::size_t s = a.rows();
  const std::size_t d = problem.dim();
  const DenseMatrix& q = problem.q_matrix();

  std::vector<DenseMatrix> sq;
  sq.reserve(s);
  for (const auto& sj : shat) sq.push_back(sj * q);

  DenseMatrix m(s * d, s * d);
  Vector rhs(s * d);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t r = 0; r < d; ++r) {
      rhs[i * d + r] = y0[r];
      m(i * d + r, i * d + r) = 1.0;
    }
    for (std::size_t j = 0; j < s; ++j) {
      const double w = h * a(i, j);
      if (w == 0.0) continue;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(i * d + r, j * d + c) -= w * sq[j](r, c);
    }
  }
  return {std::move(m), std::move(rhs)};
}

std::vector<Vector> unstack(std::span<const double> stacked, std::size_t s, std::size_t d) {
  std::vector<Vector> out(s);
  for (std::size_t i = 0; i < s; ++i)
    out[i].assign(stacked.begin() + i * d, stacked.begin() + (i + 1) * d);
  return out;
}

std::vector<Vector> solve_stages_block(const QuadraticODE& problem, std::span<const double> y0,
                                       double h, const DenseMatrix& a,
                                       std::span<const DenseMatrix> shat) {
  auto [m, rhs] = assemble_stage_system(problem, y0, h, a, shat);
  return unstack(lu_solve(m, rhs), a.rows(), problem.dim());
}

bool is_lower_triangular(const DenseMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != 0.0) return false;
  return true;
}

std::vector<Vector> solve_stages_dirk(const QuadraticODE& problem, std::span<const double> y0,
                                      double h, const DenseMatrix& a,
                                      std::span<const DenseMatrix> shat) {
  check_stage_inputs(problem, y0, a, shat);
  if (!is_lower_triangular(a))
    throw Error(Errc::invalid_argument, "solve_stages_dirk: A is not lower triangular");
  const std::size_t s = a.rows();
  const std::size_t d = problem.dim();
  const DenseMatrix& q = problem.q_matrix();

  std::vector<Vector> stages(s);
  std::vector<Vector> slopes(s);  // Shat_j Q Y_j
  for (std::size_t i = 0; i < s; ++i) {
    Vector rhs(y0.begin(), y0.end());
    for (std::size_t j = 0; j < i; ++j)
      if (a(i, j) != 0.0) axpy(h * a(i, j), slopes[j], rhs);
    const DenseMatrix sq = shat[i] * q;
    if (a(i, i) == 0.0) {
      stages[i] = std::move(rhs);
    } else {
      DenseMatrix m = DenseMatrix::identity(d) - (h * a(i, i)) * sq;
      stages[i] = lu_solve(m, rhs);
    }
    slopes[i] = sq.apply(stages[i]);
  }
  return stages;
}

}  // namespace licrk
