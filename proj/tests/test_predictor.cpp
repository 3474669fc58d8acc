#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "licrk/predictor.hpp"
#include "licrk/problems.hpp"
#include "support.hpp"

using namespace licrk;
using namespace licrk::testing;

namespace {

double stage_error(const QuadraticODE& p, const Stages& got, double t0, double h,
                   std::span<const double> c) {
  double e = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    e = std::max(e, norm_inf(sub(got[i], p.exact_solution(t0 + c[i] * h))));
  return e;
}

// History of the exact step t0 - h -> t0.
PredictorState exact_history(const QuadraticODE& p, double t0, double h, std::span<const double> c) {
  PredictorState s;
  Stages stages;
  for (double ci : c) stages.push_back(p.exact_solution(t0 - h + ci * h));
  s.record(p, p.exact_solution(t0 - h), p.exact_solution(t0), h, c, stages);
  return s;
}

// Observed order from errors at h and h/2.
double observed_order(const std::function<double(double)>& err, double h) {
  return std::log2(err(h) / err(h / 2));
}

}  // namespace

TEST_CASE("declared accuracies and identifiers") {
  CHECK(declared_q(PredictorKind::euler, 3) == 2);
  CHECK(declared_q(PredictorKind::extrapolation, 3) == 4);
  CHECK(declared_q(PredictorKind::hermite, 3) == 4);
  CHECK(declared_q(PredictorKind::cerk, 3) == 6);
  CHECK(declared_q(PredictorKind::exact, 3) > 1000);
  for (auto k : {PredictorKind::euler, PredictorKind::extrapolation, PredictorKind::hermite,
                 PredictorKind::cerk, PredictorKind::exact})
    CHECK(predictor_by_id(to_string(k)) == k);
  CHECK(code_of([] { predictor_by_id("taylor"); }) == Errc::config);
}

TEST_CASE("euler predictor is y0 + c h f(y0)") {
  const auto rb = reference_rigid_body();
  const auto y0 = rb.initial_state();
  const Vector c{0.25, 0.75};
  const auto out = euler_predictor(rb, y0, 0.1, c);
  const auto f = rb.rhs(y0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(out[i][j] - (y0[j] + c[i] * 0.1 * f[j])) < 1e-16);
}

TEST_CASE("exact predictor") {
  const auto kp = reference_kepler(0.3);
  const Vector c{0.0, 0.5, 1.0};
  const auto out = exact_predictor(kp, 2.0, 0.2, c);
  CHECK(norm_inf(sub(out[1], kp.exact_solution(2.1))) == 0.0);
  const RigidBodyProblem other(2.0, 0.5, Vector{1, 0, 0});
  CHECK(code_of([&] { exact_predictor(other, 0.0, 0.1, c); }) == Errc::unsupported);
}

TEST_CASE("history predictors need a previous step") {
  const PredictorState empty;
  const Vector c{0.5};
  CHECK(code_of([&] { extrapolation_predictor(empty, 0.1, c); }) == Errc::first_step);
  CHECK(code_of([&] { hermite_predictor(empty, 0.1, c); }) == Errc::first_step);
}

TEST_CASE("extrapolation reproduces polynomials of degree s") {
  // y(t) = (t^3, 1 - t^2) with three abscissae: degree 3 = s, so exact.
  const Vector c{0.1, 0.5, 0.8};
  const auto poly = [](double t) { return Vector{t * t * t, 1.0 - t * t}; };
  const double h = 0.4, t0 = 1.3;
  PredictorState s;
  Stages prev;
  for (double ci : c) prev.push_back(poly(t0 - h + ci * h));
  s.empty = false;
  s.h = h;
  s.prev_start = poly(t0 - h);
  s.prev_end = poly(t0);
  s.stages = prev;
  s.c = c;
  const auto out = extrapolation_predictor(s, h, c);
  for (std::size_t i = 0; i < 3; ++i) CHECK(norm_inf(sub(out[i], poly(t0 + c[i] * h))) < 1e-12);
}

TEST_CASE("hermite reproduces cubics") {
  const Vector c{0.2, 0.9};
  const auto y = [](double t) { return Vector{2.0 * t * t * t - t, 0.5}; };
  const auto dy = [](double t) { return Vector{6.0 * t * t - 1.0, 0.0}; };
  const double h = 0.3, t0 = -0.4;
  PredictorState s;
  s.empty = false;
  s.h = h;
  s.prev_start = y(t0 - h);
  s.prev_end = y(t0);
  s.f_prev_start = dy(t0 - h);
  s.f_prev_end = dy(t0);
  const auto out = hermite_predictor(s, h, c);
  for (std::size_t i = 0; i < 2; ++i) CHECK(norm_inf(sub(out[i], y(t0 + c[i] * h))) < 1e-13);
}

TEST_CASE("history predictors reach their local order") {
  const auto rb = reference_rigid_body();
  const auto c = gauss(3).c;
  const double t0 = 0.7;
  const auto extrap = [&](double h) {
    return stage_error(rb, extrapolation_predictor(exact_history(rb, t0, h, c), h, c), t0, h, c);
  };
  const auto herm = [&](double h) {
    return stage_error(rb, hermite_predictor(exact_history(rb, t0, h, c), h, c), t0, h, c);
  };
  const double q_ex = observed_order(extrap, 0.05);
  const double q_he = observed_order(herm, 0.05);
  CHECK(q_ex == doctest::Approx(4.0).epsilon(0.08));
  CHECK(q_he == doctest::Approx(4.0).epsilon(0.08));
}

TEST_CASE("euler predictor is second order locally") {
  const auto kp = reference_kepler(0.3);
  const auto c = gauss(2).c;
  const auto err = [&](double h) {
    return stage_error(kp, euler_predictor(kp, kp.exact_solution(1.0), h, c), 1.0, h, c);
  };
  CHECK(observed_order(err, 0.02) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("continuous step has uniform sixth-order local error") {
  // y' = -t y^2 with y = 2 / (2 + t^2)
  const TimeRhs f = [](double t, std::span<const double> y) { return Vector{-t * y[0] * y[0]}; };
  const auto exact = [](double t) { return 2.0 / (2.0 + t * t); };
  const double t0 = 0.3;
  const auto err = [&](double h) {
    const ContinuousStep step(f, t0, Vector{exact(t0)}, h);
    double e = std::abs(step.y1()[0] - exact(t0 + h));
    for (int i = 0; i <= 20; ++i) {
      const double th = i / 20.0;
      e = std::max(e, std::abs(step(th)[0] - exact(t0 + th * h)));
    }
    return e;
  };
  const double q = observed_order(err, 0.1);
  CHECK(q >= 5.6);
  CHECK(q <= 6.6);
  const ContinuousStep step(f, t0, Vector{exact(t0)}, 0.1);
  CHECK(step(0.0)[0] == doctest::Approx(exact(t0)).epsilon(1e-15));
  CHECK(std::abs(step(1.0)[0] - step.y1()[0]) < 1e-14);
}

TEST_CASE("cerk predictor on a nonstiff problem") {
  const auto rb = reference_rigid_body();
  const auto c = gauss(3).c;
  const double t0 = 1.1;
  const auto err = [&](double h) {
    return stage_error(rb, cerk_predictor(rb, rb.exact_solution(t0), h, c), t0, h, c);
  };
  const double q = observed_order(err, 0.1);
  CHECK(q >= 5.5);
  CHECK(q <= 7.0);
}

TEST_CASE("cerk predictor handles the stiff linear part") {
  const auto kdv = reference_kdv(32);
  const auto c = gauss(3).c;
  const double t0 = 0.2;
  const auto err = [&](double h) {
    return stage_error(kdv, cerk_predictor(kdv, kdv.exact_solution(t0), h, c), t0, h, c);
  };
  const double h = kdv.period() / 64.0;
  const double q = observed_order(err, h);
  CHECK(q >= 5.0);
  CHECK(err(h) < 1e-4);
}

TEST_CASE("dopri5 weights satisfy the order-five quadrature conditions") {
  const auto& t = dopri5_tableau();
  for (int k = 1; k <= 5; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.stages(); ++i) s += t.b[i] * std::pow(t.c[i], k - 1);
    CHECK(std::abs(s - 1.0 / k) < 1e-14);
  }
  for (std::size_t i = 0; i < t.stages(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < t.stages(); ++j) row += t.a(i, j);
    CHECK(std::abs(row - t.c[i]) < 1e-14);
  }
}

TEST_CASE("dispatch falls back to cerk on the first step") {
  const auto rb = reference_rigid_body();
  const auto t = gauss(2);
  const auto y0 = rb.initial_state();
  const PredictorState empty;
  const PredictorContext ctx{rb, t, y0, 0.0, 0.1, empty};
  const auto want = cerk_predictor(rb, y0, 0.1, t.c);
  for (auto k : {PredictorKind::extrapolation, PredictorKind::hermite}) {
    const auto got = predict(k, ctx);
    for (std::size_t i = 0; i < 2; ++i) CHECK(norm_inf(sub(got[i], want[i])) == 0.0);
  }
  const auto ex = predict(PredictorKind::exact, ctx);
  CHECK(norm_inf(sub(ex[0], rb.exact_solution(0.1 * t.c[0]))) == 0.0);
}
