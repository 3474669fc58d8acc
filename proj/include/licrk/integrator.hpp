#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "licrk/predictor.hpp"
#include "licrk/problem.hpp"
#include "licrk/tableau.hpp"

namespace licrk {

enum class IterationMode { semi_implicit, explicit_update };

/// Stopping rule for the stage iteration: a fixed count k, or iterate until
/// the largest stage displacement drops below residual_tol (at most max_k).
struct IterationConfig {
  IterationMode mode = IterationMode::semi_implicit;
  std::optional<int> k;
  std::optional<double> residual_tol;
  int max_k = 50;
  bool record_history = false;

  static IterationConfig fixed(IterationMode mode, int k);
  static IterationConfig until(IterationMode mode, double tol, int max_k = 50);
  void validate() const;
};

struct StepRecord {
  Vector y1;
  Stages stages;                        // final Y^(k)
  std::vector<Stages> iterate_history;  // Y^(0), Y^(1), ... when recorded
  int iterations = 0;
  double invariant_before = 0.0;
  double invariant_after = 0.0;
  bool canonical = true;  // conservation is only guaranteed for canonical tableaux
};

/// Stages Y_i = y0 + h sum_j a_ij Shat_j Q Y_j for frozen Shat; picks the
/// sequential solver when A is lower triangular.
Stages solve_frozen_stages(const QuadraticODE& problem, const ButcherTableau& t,
                           std::span<const double> y0, double h, std::span<const DenseMatrix> shat);

/// One linearly implicit step with S frozen at the predicted stages.
StepRecord conservative_step(const QuadraticODE& problem, const ButcherTableau& t,
                             std::span<const double> y0, double h, const Stages& yhat);

StepRecord semi_implicit_iterate(const QuadraticODE& problem, const ButcherTableau& t,
                                 std::span<const double> y0, double h, const Stages& initial,
                                 const IterationConfig& cfg);

/// k-1 explicit stage updates followed by one semi-implicit solve.
StepRecord explicit_iterate(const QuadraticODE& problem, const ButcherTableau& t,
                            std::span<const double> y0, double h, const Stages& initial,
                            const IterationConfig& cfg);

StepRecord iterate(const QuadraticODE& problem, const ButcherTableau& t,
                   std::span<const double> y0, double h, const Stages& initial,
                   const IterationConfig& cfg);

/// Partitioned step: explicit Z stages from Ahat, then one frozen-S solve.
StepRecord prk_step(const QuadraticODE& problem, const PartitionedTableau& p,
                    std::span<const double> y0, double h);

/// The base implicit RK method, realised as the semi-implicit iteration run
/// to a stage displacement of at most tol.
StepRecord base_rk_reference(const QuadraticODE& problem, const ButcherTableau& t,
                             std::span<const double> y0, double h, double tol = 1e-14,
                             int max_k = 200);

struct IterativeScheme {
  ButcherTableau tableau;
  std::variant<PredictorKind, CustomPredictor> predictor = PredictorKind::euler;
  IterationConfig cfg = IterationConfig::fixed(IterationMode::semi_implicit, 1);
};

struct PrkScheme {
  PartitionedTableau pair;
};

struct BaseRkScheme {
  ButcherTableau tableau;
  double tol = 1e-14;
};

using Scheme = std::variant<IterativeScheme, PrkScheme, BaseRkScheme>;

/// Called with the step index (0 for the initial state), time and state.
using Observer = std::function<void(std::size_t, double, std::span<const double>)>;

struct Trajectory {
  std::vector<double> t;
  std::vector<Vector> y;  // every state when keep_states, else only the last
  Vector final_state() const { return y.back(); }
};

/// Fixed-step integration; step failures are rethrown with the step index.
Trajectory integrate(const QuadraticODE& problem, const Scheme& scheme, std::span<const double> y0,
                     double h, std::size_t n_steps, const Observer& observer = {},
                     bool keep_states = false);

}  // namespace licrk
