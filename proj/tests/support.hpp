#pragma once

#include <functional>
#include <random>

#include "licrk/errors.hpp"
#include "licrk/linalg.hpp"
#include "licrk/problem.hpp"

namespace licrk::testing {

inline DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

inline DenseMatrix random_skew(std::mt19937_64& rng, std::size_t d) {
  const DenseMatrix m = random_matrix(rng, d, d);
  return m - m.transpose();
}

/// Symmetric positive definite: M^T M + I.
inline DenseMatrix random_spd(std::mt19937_64& rng, std::size_t d) {
  const DenseMatrix m = random_matrix(rng, d, d);
  return m.transpose() * m + DenseMatrix::identity(d);
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(d);
  for (double& x : v) x = u(rng);
  return v;
}

/// y' = S Q y with constant skew S.
class LinearSkewProblem final : public QuadraticODE {
 public:
  LinearSkewProblem(DenseMatrix s, DenseMatrix q, Vector y0)
      : s_(std::move(s)), q_(std::move(q)), y0_(std::move(y0)) {}
  std::string name() const override { return "linear-skew"; }
  std::size_t dim() const override { return y0_.size(); }
  DenseMatrix s_matrix(std::span<const double>) const override { return s_; }
  const DenseMatrix& q_matrix() const override { return q_; }
  Vector initial_state() const override { return y0_; }
  double period() const override { return 1.0; }

 private:
  DenseMatrix s_;
  DenseMatrix q_;
  Vector y0_;
};

/// y' = S(y) Q y with S(y) = S0 + sum_k y_k S_k, all skew.
class RandomQuadraticProblem final : public QuadraticODE {
 public:
  RandomQuadraticProblem(std::mt19937_64& rng, std::size_t d)
      : s0_(random_skew(rng, d)), q_(random_spd(rng, d)), y0_(random_vector(rng, d)) {
    for (std::size_t k = 0; k < d; ++k) sk_.push_back(random_skew(rng, d));
  }
  std::string name() const override { return "random-quadratic"; }
  std::size_t dim() const override { return y0_.size(); }
  DenseMatrix s_matrix(std::span<const double> y) const override {
    DenseMatrix s = s0_;
    for (std::size_t k = 0; k < y.size(); ++k) s = s + y[k] * sk_[k];
    return s;
  }
  const DenseMatrix& q_matrix() const override { return q_; }
  Vector initial_state() const override { return y0_; }
  double period() const override { return 1.0; }

 private:
  DenseMatrix s0_;
  std::vector<DenseMatrix> sk_;
  DenseMatrix q_;
  Vector y0_;
};

inline Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("no licrk::Error thrown");
}

}  // namespace licrk::testing
