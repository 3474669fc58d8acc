#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "licrk/linalg.hpp"
#include "licrk/problem.hpp"
#include "licrk/tableau.hpp"

namespace licrk {

using Stages = std::vector<Vector>;

enum class PredictorKind { euler, extrapolation, hermite, cerk, exact };

PredictorKind predictor_by_id(const std::string& id);
std::string to_string(PredictorKind kind);

/// Local accuracy q of the predicted stages (|Yhat_i - y(c_i h)| = O(h^q)).
/// `exact` reports INT_MAX.
int declared_q(PredictorKind kind, std::size_t stages);

/// History carried from one step to the next. Empty before the first step.
struct PredictorState {
  bool empty = true;
  double h = 0.0;
  Vector prev_start;
  Vector prev_end;
  Vector f_prev_start;
  Vector f_prev_end;
  Stages stages;  // final stage values of the previous step
  Vector c;       // their abscissae, relative to that step

  /// Overwrites the history with the step (y0 -> y1) just taken.
  void record(const QuadraticODE& problem, std::span<const double> y0, std::span<const double> y1,
              double h, std::span<const double> c, const Stages& stage_values);
};

Stages euler_predictor(const QuadraticODE& problem, std::span<const double> y0, double h,
                       std::span<const double> c);

/// Lagrange polynomial through the previous stages (at c_j - 1) and the
/// current start value (at 0), evaluated at c_i. Throws Errc::first_step on
/// an empty state.
Stages extrapolation_predictor(const PredictorState& state, double h, std::span<const double> c);

/// Two-point cubic Hermite interpolant on [-1, 0] extrapolated to c_i.
Stages hermite_predictor(const PredictorState& state, double h, std::span<const double> c);

/// Continuous explicit RK with uniform fifth-order dense output. Stiff
/// problems are advanced in the variable exp(-tL) y and mapped back.
Stages cerk_predictor(const QuadraticODE& problem, std::span<const double> y0, double h,
                      std::span<const double> c);

Stages exact_predictor(const QuadraticODE& problem, double t_offset, double h,
                       std::span<const double> c);

using TimeRhs = std::function<Vector(double, std::span<const double>)>;

/// Dormand-Prince 5(4) coefficients (order-5 weights, FSAL row dropped).
const ButcherTableau& dopri5_tableau();

/// One step of the continuous method: Dormand-Prince 5 for y1, then two
/// boot-strapping passes (cubic Hermite -> quartic -> quintic) that raise the
/// dense output to uniform order 5 using three extra right-hand side calls.
class ContinuousStep {
 public:
  ContinuousStep(const TimeRhs& f, double t0, std::span<const double> y0, double h);

  const Vector& y1() const { return y1_; }
  /// Dense output at theta in [0, 1] (extrapolation outside is allowed).
  Vector operator()(double theta) const;

 private:
  double h_;
  std::vector<Vector> coeffs_;  // polynomial coefficients in theta
  Vector y1_;
};

struct PredictorContext {
  const QuadraticODE& problem;
  const ButcherTableau& tableau;
  std::span<const double> y0;
  double t0;
  double h;
  const PredictorState& state;
};

using CustomPredictor = std::function<Stages(const PredictorContext&)>;

/// Dispatches on kind. History-based predictors fall back to CERK when the
/// state is empty.
Stages predict(PredictorKind kind, const PredictorContext& ctx);

}  // namespace licrk
