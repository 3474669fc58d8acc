#include "licrk/predictor.hpp"

#include <algorithm>
#include <cmath>

#include "licrk/errors.hpp"

namespace licrk {

PredictorKind predictor_by_id(const std::string& id) {
  if (id == "euler") return PredictorKind::euler;
  if (id == "extrapolation") return PredictorKind::extrapolation;
  if (id == "hermite") return PredictorKind::hermite;
  if (id == "cerk") return PredictorKind::cerk;
  if (id == "exact") return PredictorKind::exact;
  throw Error(Errc::config, "unknown predictor id '" + id + "'");
}

std::string to_string(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::euler: return "euler";
    case PredictorKind::extrapolation: return "extrapolation";
    case PredictorKind::hermite: return "hermite";
    case PredictorKind::cerk: return "cerk";
    case PredictorKind::exact: return "exact";
  }
  return "?";
}

int declared_q(PredictorKind kind, std::size_t stages) {
  switch (kind) {
    case PredictorKind::euler: return 2;
    case PredictorKind::extrapolation: return static_cast<int>(stages) + 1;
    case PredictorKind::hermite: return 4;
    case PredictorKind::cerk: return 6;
    case PredictorKind::exact: return std::numeric_limits<int>::max();
  }
  return 0;
}

void PredictorState::record(const QuadraticODE& problem, std::span<const double> y0,
                            std::span<const double> y1, double step, std::span<const double> cs,
                            const Stages& stage_values) {
  empty = false;
  h = step;
  prev_start.assign(y0.begin(), y0.end());
  prev_end.assign(y1.begin(), y1.end());
  f_prev_start = problem.rhs(y0);
  f_prev_end = problem.rhs(y1);
  stages = stage_values;
  c.assign(cs.begin(), cs.end());
}

Stages euler_predictor(const QuadraticODE& problem, std::span<const double> y0, double h,
                       std::span<const double> c) {
  const Vector f = problem.rhs(y0);
  Stages out;
  out.reserve(c.size());
  for (double ci : c) {
    Vector y(y0.begin(), y0.end());
    axpy(ci * h, f, y);
    out.push_back(std::move(y));
  }
  return out;
}

namespace {

void require_history(const PredictorState& state, double h, const char* who) {
  if (state.empty) throw Error(Errc::first_step, std::string(who) + ": no previous step");
  if (std::abs(state.h - h) > 1e-14 * std::abs(h))
    throw Error(Errc::invalid_argument, std::string(who) + ": step size changed between steps");
}

}  // namespace

Stages extrapolation_predictor(const PredictorState& state, double h, std::span<const double> c) {
  require_history(state, h, "extrapolation_predictor");
  // nodes in units of h relative to the current step start; repeated
  // abscissae (padded tableaux) collapse onto one node
  std::vector<double> nodes{0.0};
  std::vector<const Vector*> values{&state.prev_end};
  for (std::size_t j = 0; j < state.c.size(); ++j) {
    const double x = state.c[j] - 1.0;
    const bool dup = std::any_of(nodes.begin(), nodes.end(),
                                 [&](double n) { return std::abs(n - x) <= 1e-12; });
    if (dup) continue;
    nodes.push_back(x);
    values.push_back(&state.stages[j]);
  }
  const std::size_t d = state.prev_end.size();
  Stages out;
  out.reserve(c.size());
  for (double theta : c) {
    Vector y(d, 0.0);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      double w = 1.0;
      for (std::size_t m = 0; m < nodes.size(); ++m)
        if (m != k) w *= (theta - nodes[m]) / (nodes[k] - nodes[m]);
      axpy(w, *values[k], y);
    }
    out.push_back(std::move(y));
  }
  return out;
}

Stages hermite_predictor(const PredictorState& state, double h, std::span<const double> c) {
  require_history(state, h, "hermite_predictor");
  Stages out;
  out.reserve(c.size());
  for (double theta : c) {
    const double s = 1.0 + theta;
    const double s2 = s * s;
    const double s3 = s2 * s;
    Vector y(state.prev_start.size(), 0.0);
    axpy(2.0 * s3 - 3.0 * s2 + 1.0, state.prev_start, y);
    axpy(-2.0 * s3 + 3.0 * s2, state.prev_end, y);
    axpy(h * (s3 - 2.0 * s2 + s), state.f_prev_start, y);
    axpy(h * (s3 - s2), state.f_prev_end, y);
    out.push_back(std::move(y));
  }
  return out;
}

const ButcherTableau& dopri5_tableau() {
  static const ButcherTableau t = [] {
    ButcherTableau d;
    d.name = "dopri5";
    d.a = DenseMatrix::from_rows({
        {0, 0, 0, 0, 0, 0},
        {1.0 / 5, 0, 0, 0, 0, 0},
        {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
        {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    });
    d.b = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84};
    d.c = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0};
    d.declared_order = 5;
    return d;
  }();
  return t;
}

namespace {

struct Condition {
  bool derivative;
  double theta;
};

// Polynomial of degree conds.size()-1 in theta matching values and theta-
// derivatives at the given points; returns vector-valued coefficients.
std::vector<Vector> birkhoff_fit(const std::vector<Condition>& conds, const std::vector<Vector>& data) {
  const std::size_t n = conds.size();
  DenseMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const double t = conds[r].theta;
      if (conds[r].derivative)
        m(r, k) = k == 0 ? 0.0 : static_cast<double>(k) * std::pow(t, static_cast<double>(k - 1));
      else
        m(r, k) = std::pow(t, static_cast<double>(k));
    }
  }
  const LuFactor lu(m);
  const std::size_t d = data.front().size();
  std::vector<Vector> coeffs(n, Vector(d));
  Vector rhs(n);
  for (std::size_t comp = 0; comp < d; ++comp) {
    for (std::size_t r = 0; r < n; ++r) rhs[r] = data[r][comp];
    const Vector x = lu.solve(rhs);
    for (std::size_t k = 0; k < n; ++k) coeffs[k][comp] = x[k];
  }
  return coeffs;
}

Vector eval_poly(const std::vector<Vector>& coeffs, double theta) {
  Vector y = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    for (double& v : y) v *= theta;
    axpy(1.0, coeffs[k], y);
  }
  return y;
}

Vector scaled(double s, const Vector& v) {
  Vector r = v;
  for (double& x : r) x *= s;
  return r;
}

}  // namespace

ContinuousStep::ContinuousStep(const TimeRhs& f, double t0, std::span<const double> y0, double h)
    : h_(h) {
  const ButcherTableau& rk = dopri5_tableau();
  const std::size_t s = rk.stages();
  std::vector<Vector> k(s);
  for (std::size_t i = 0; i < s; ++i) {
    Vector yi(y0.begin(), y0.end());
    for (std::size_t j = 0; j < i; ++j)
      if (rk.a(i, j) != 0.0) axpy(h * rk.a(i, j), k[j], yi);
    k[i] = f(t0 + rk.c[i] * h, yi);
  }
  y1_.assign(y0.begin(), y0.end());
  for (std::size_t i = 0; i < s; ++i)
    if (rk.b[i] != 0.0) axpy(h * rk.b[i], k[i], y1_);
  const Vector y0v(y0.begin(), y0.end());
  const Vector hf0 = scaled(h, k[0]);
  const Vector hf1 = scaled(h, f(t0 + h, y1_));

  // boot-strapping: each pass samples f on the previous interpolant and
  // gains one order of uniform accuracy
  const std::vector<Condition> cubic{{false, 0.0}, {false, 1.0}, {true, 0.0}, {true, 1.0}};
  const auto p3 = birkhoff_fit(cubic, {y0v, y1_, hf0, hf1});

  constexpr double third = 1.0 / 3.0;
  const Vector ga = scaled(h, f(t0 + third * h, eval_poly(p3, third)));
  std::vector<Condition> quartic = cubic;
  quartic.push_back({true, third});
  const auto p4 = birkhoff_fit(quartic, {y0v, y1_, hf0, hf1, ga});

  const Vector gb = scaled(h, f(t0 + third * h, eval_poly(p4, third)));
  const Vector gc = scaled(h, f(t0 + 2.0 * third * h, eval_poly(p4, 2.0 * third)));
  std::vector<Condition> quintic = cubic;
  quintic.push_back({true, third});
  quintic.push_back({true, 2.0 * third});
  coeffs_ = birkhoff_fit(quintic, {y0v, y1_, hf0, hf1, gb, gc});
}

Vector ContinuousStep::operator()(double theta) const { return eval_poly(coeffs_, theta); }

Stages cerk_predictor(const QuadraticODE& problem, std::span<const double> y0, double h,
                      std::span<const double> c) {
  Stages out;
  out.reserve(c.size());
  if (problem.stiffness_hint() == Stiffness::stiff) {
    // v(t) = exp(-tL) y(t) obeys v' = exp(-tL) g(exp(tL) v) with g = f - L
    const TimeRhs f = [&problem](double t, std::span<const double> v) {
      const Vector y = problem.exp_linear_apply(t, v);
      Vector g = problem.rhs(y);
      axpy(-1.0, problem.linear_apply(y), g);
      return problem.exp_linear_apply(-t, g);
    };
    const ContinuousStep step(f, 0.0, y0, h);
    for (double ci : c) out.push_back(problem.exp_linear_apply(ci * h, step(ci)));
  } else {
    const TimeRhs f = [&problem](double, std::span<const double> y) { return problem.rhs(y); };
    const ContinuousStep step(f, 0.0, y0, h);
    for (double ci : c) out.push_back(step(ci));
  }
  return out;
}

Stages exact_predictor(const QuadraticODE& problem, double t_offset, double h,
                       std::span<const double> c) {
  if (!problem.has_exact_solution())
    throw Error(Errc::unsupported, "exact_predictor: " + problem.name() + " has no exact solution");
  Stages out;
  out.reserve(c.size());
  for (double ci : c) out.push_back(problem.exact_solution(t_offset + ci * h));
  return out;
}

Stages predict(PredictorKind kind, const PredictorContext& ctx) {
  const auto& c = ctx.tableau.c;
  switch (kind) {
    case PredictorKind::euler:
      return euler_predictor(ctx.problem, ctx.y0, ctx.h, c);
    case PredictorKind::extrapolation:
      if (ctx.state.empty) return cerk_predictor(ctx.problem, ctx.y0, ctx.h, c);
      return extrapolation_predictor(ctx.state, ctx.h, c);
    case PredictorKind::hermite:
      if (ctx.state.empty) return cerk_predictor(ctx.problem, ctx.y0, ctx.h, c);
      return hermite_predictor(ctx.state, ctx.h, c);
    case PredictorKind::cerk:
      return cerk_predictor(ctx.problem, ctx.y0, ctx.h, c);
    case PredictorKind::exact:
      return exact_predictor(ctx.problem, ctx.t0, ctx.h, c);
  }
  throw Error(Errc::invalid_argument, "predict: unknown predictor");
}

}  // namespace licrk
