#include "licrk/integrator.hpp"

#include <cmath>

#include "licrk/errors.hpp"

namespace licrk {

IterationConfig IterationConfig::fixed(IterationMode mode, int k) {
  IterationConfig c;
  c.mode = mode;
  c.k = k;
  return c;
}

IterationConfig IterationConfig::until(IterationMode mode, double tol, int max_k) {
  IterationConfig c;
  c.mode = mode;
  c.residual_tol = tol;
  c.max_k = max_k;
  return c;
}

void IterationConfig::validate() const {
  if (k.has_value() == residual_tol.has_value())
    throw Error(Errc::invalid_argument, "iteration: exactly one stopping rule must be set");
  if (k && *k < 1) throw Error(Errc::invalid_argument, "iteration: k must be >= 1");
  if (residual_tol && !(*residual_tol > 0.0))
    throw Error(Errc::invalid_argument, "iteration: residual_tol must be positive");
  if (max_k < 1) throw Error(Errc::invalid_argument, "iteration: max_k must be >= 1");
}

namespace {

std::vector<DenseMatrix> freeze(const QuadraticODE& problem, const Stages& at) {
  std::vector<DenseMatrix> shat;
  shat.reserve(at.size());
  for (const auto& y : at) shat.push_back(problem.s_matrix(y));
  return shat;
}

double max_displacement(const Stages& a, const Stages& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t r = 0; r < a[i].size(); ++r) m = std::max(m, std::abs(a[i][r] - b[i][r]));
  return m;
}

void check_finite(const Stages& stages, std::span<const double> y0) {
  const double limit = 1e8 * (1.0 + norm2(y0));
  for (const auto& y : stages) {
    const double n = norm2(y);
    if (!(n <= limit)) throw Error(Errc::diverged, "stage norm exceeded 1e8 (1 + |y0|)");
  }
}

// y1 = y0 + h sum_i b_i Shat_i Q Y_i
Vector output_line(const QuadraticODE& problem, const ButcherTableau& t,
                   std::span<const double> y0, double h, std::span<const DenseMatrix> shat,
                   const Stages& stages) {
  Vector y1(y0.begin(), y0.end());
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (t.b[i] == 0.0) continue;
    axpy(h * t.b[i], shat[i].apply(problem.grad(stages[i])), y1);
  }
  return y1;
}

void check_stage_count(const ButcherTableau& t, const Stages& s) {
  if (s.size() != t.stages())
    throw Error(Errc::invalid_argument, "need one predicted value per stage");
}

StepRecord finish(const QuadraticODE& problem, const ButcherTableau& t, std::span<const double> y0,
                  double h, std::span<const DenseMatrix> shat, Stages stages, StepRecord rec) {
  rec.y1 = output_line(problem, t, y0, h, shat, stages);
  rec.stages = std::move(stages);
  rec.invariant_before = problem.invariant(y0);
  rec.invariant_after = problem.invariant(rec.y1);
  rec.canonical = is_canonical(t, 1e-13);
  return rec;
}

}  // namespace

Stages solve_frozen_stages(const QuadraticODE& problem, const ButcherTableau& t,
                           std::span<const double> y0, double h, std::span<const DenseMatrix> shat) {
  if (is_lower_triangular(t.a)) return solve_stages_dirk(problem, y0, h, t.a, shat);
  return solve_stages_block(problem, y0, h, t.a, shat);
}

StepRecord conservative_step(const QuadraticODE& problem, const ButcherTableau& t,
                             std::span<const double> y0, double h, const Stages& yhat) {
  check_stage_count(t, yhat);
  const auto shat = freeze(problem, yhat);
  Stages stages = solve_frozen_stages(problem, t, y0, h, shat);
  check_finite(stages, y0);
  StepRecord rec;
  rec.iterations = 1;
  return finish(problem, t, y0, h, shat, std::move(stages), std::move(rec));
}

StepRecord semi_implicit_iterate(const QuadraticODE& problem, const ButcherTableau& t,
                                 std::span<const double> y0, double h, const Stages& initial,
                                 const IterationConfig& cfg) {
  cfg.validate();
  if (cfg.mode != IterationMode::semi_implicit)
    throw Error(Errc::invalid_argument, "semi_implicit_iterate: wrong iteration mode");
  check_stage_count(t, initial);
  StepRecord rec;
  if (cfg.record_history) rec.iterate_history.push_back(initial);

  Stages prev = initial;
  std::vector<DenseMatrix> shat;
  Stages cur;
  for (int it = 1;; ++it) {
    shat = freeze(problem, prev);
    cur = solve_frozen_stages(problem, t, y0, h, shat);
    check_finite(cur, y0);
    if (cfg.record_history) rec.iterate_history.push_back(cur);
    rec.iterations = it;
    if (cfg.k) {
      if (it == *cfg.k) break;
    } else {
      if (max_displacement(cur, prev) <= *cfg.residual_tol) break;
      if (it >= cfg.max_k)
        throw Error(Errc::no_convergence, "semi-implicit iteration did not converge; step too large?");
    }
    prev = std::move(cur);
  }
  // output pairs S(Y^(k-1)) with Y^(k), exactly as in the last solve
  return finish(problem, t, y0, h, shat, std::move(cur), std::move(rec));
}

StepRecord explicit_iterate(const QuadraticODE& problem, const ButcherTableau& t,
                            std::span<const double> y0, double h, const Stages& initial,
                            const IterationConfig& cfg) {
  cfg.validate();
  if (cfg.mode != IterationMode::explicit_update)
    throw Error(Errc::invalid_argument, "explicit_iterate: wrong iteration mode");
  check_stage_count(t, initial);
  const std::size_t s = t.stages();
  StepRecord rec;
  if (cfg.record_history) rec.iterate_history.push_back(initial);

  Stages prev = initial;
  int it = 1;
  for (;; ++it) {
    if (cfg.k && it >= *cfg.k) break;
    std::vector<Vector> slopes(s);
    for (std::size_t j = 0; j < s; ++j) slopes[j] = problem.rhs(prev[j]);
    Stages cur(s, Vector(y0.begin(), y0.end()));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j)
        if (t.a(i, j) != 0.0) axpy(h * t.a(i, j), slopes[j], cur[i]);
    check_finite(cur, y0);
    if (cfg.record_history) rec.iterate_history.push_back(cur);
    const double disp = max_displacement(cur, prev);
    prev = std::move(cur);
    if (cfg.residual_tol) {
      if (disp <= *cfg.residual_tol) {
        ++it;
        break;
      }
      if (it >= cfg.max_k)
        throw Error(Errc::no_convergence, "explicit iteration did not converge; step too large?");
    }
  }
  // final semi-implicit solve restores conservation
  const auto shat = freeze(problem, prev);
  Stages fin = solve_frozen_stages(problem, t, y0, h, shat);
  check_finite(fin, y0);
  if (cfg.record_history) rec.iterate_history.push_back(fin);
  rec.iterations = it;
  return finish(problem, t, y0, h, shat, std::move(fin), std::move(rec));
}

StepRecord iterate(const QuadraticODE& problem, const ButcherTableau& t,
                   std::span<const double> y0, double h, const Stages& initial,
                   const IterationConfig& cfg) {
  return cfg.mode == IterationMode::semi_implicit
             ? semi_implicit_iterate(problem, t, y0, h, initial, cfg)
             : explicit_iterate(problem, t, y0, h, initial, cfg);
}

StepRecord prk_step(const QuadraticODE& problem, const PartitionedTableau& p,
                    std::span<const double> y0, double h) {
  const std::size_t s = p.stages();
  Stages z(s);
  std::vector<Vector> slopes(s);
  for (std::size_t i = 0; i < s; ++i) {
    z[i].assign(y0.begin(), y0.end());
    for (std::size_t j = 0; j < i; ++j)
      if (p.ahat(i, j) != 0.0) axpy(h * p.ahat(i, j), slopes[j], z[i]);
    slopes[i] = problem.rhs(z[i]);
  }
  return conservative_step(problem, p.main, y0, h, z);
}

StepRecord base_rk_reference(const QuadraticODE& problem, const ButcherTableau& t,
                             std::span<const double> y0, double h, double tol, int max_k) {
  const Stages guess = euler_predictor(problem, y0, h, t.c);
  return semi_implicit_iterate(problem, t, y0, h, guess,
                               IterationConfig::until(IterationMode::semi_implicit, tol, max_k));
}

Trajectory integrate(const QuadraticODE& problem, const Scheme& scheme, std::span<const double> y0,
                     double h, std::size_t n_steps, const Observer& observer, bool keep_states) {
  if (!(h > 0.0)) throw Error(Errc::invalid_argument, "integrate: h must be positive");
  if (n_steps < 1) throw Error(Errc::invalid_argument, "integrate: need at least one step");
  if (const auto* it = std::get_if<IterativeScheme>(&scheme)) it->cfg.validate();

  Trajectory traj;
  Vector y(y0.begin(), y0.end());
  traj.t.push_back(0.0);
  traj.y.push_back(y);
  if (observer) observer(0, 0.0, y);

  PredictorState state;
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double t0 = static_cast<double>(n) * h;
    StepRecord rec;
    try {
      if (const auto* it = std::get_if<IterativeScheme>(&scheme)) {
        const PredictorContext ctx{problem, it->tableau, y, t0, h, state};
        const Stages guess = std::holds_alternative<PredictorKind>(it->predictor)
                                 ? predict(std::get<PredictorKind>(it->predictor), ctx)
                                 : std::get<CustomPredictor>(it->predictor)(ctx);
        rec = iterate(problem, it->tableau, y, h, guess, it->cfg);
        state.record(problem, y, rec.y1, h, it->tableau.c, rec.stages);
      } else if (const auto* prk = std::get_if<PrkScheme>(&scheme)) {
        rec = prk_step(problem, prk->pair, y, h);
      } else {
        const auto& base = std::get<BaseRkScheme>(scheme);
        rec = base_rk_reference(problem, base.tableau, y, h, base.tol);
      }
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), n + 1);
    }
    y = std::move(rec.y1);
    const double t1 = static_cast<double>(n + 1) * h;
    if (keep_states) {
      traj.t.push_back(t1);
      traj.y.push_back(y);
    } else {
      traj.t.back() = t1;
      traj.y.back() = y;
    }
    if (observer) observer(n + 1, t1, y);
  }
  return traj;
}

}  // namespace licrk
