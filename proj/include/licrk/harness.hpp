#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "licrk/integrator.hpp"
#include "licrk/ordercond.hpp"
#include "licrk/problem.hpp"

namespace licrk {

struct ExperimentConfig {
  std::string problem = "euler";
  std::string tableau = "gauss:3";
  std::optional<std::string> pair;  // PRK pair instead of tableau + predictor
  std::string predictor = "euler";
  IterationMode mode = IterationMode::semi_implicit;
  std::vector<int> ks{1};
  std::vector<double> hs;  // absolute step sizes, strictly decreasing
  double periods = 1.0;
  std::string out;
  std::size_t subsample = 64;
  std::uint64_t seed = 0;
  bool include_base = true;  // base-RK reference column in convergence tables
  int order = 4;             // certification order
  double tol = 1e-12;        // certification tolerance

  void validate() const;
  /// One line, key=value pairs; written as the `#` header of every output.
  std::string serialise() const;
};

/// Comma-separated list of numbers or `T/<n>` (fractions of `period`).
std::vector<double> parse_h_list(const std::string& text, double period);
/// Comma-separated integers and ranges such as `1-6`.
std::vector<int> parse_k_list(const std::string& text);

/// Predictor by id, including `random`: Euler prediction plus seeded uniform
/// noise of amplitude 0.1 (1 + |y0|), for adversarial conservation checks.
std::variant<PredictorKind, CustomPredictor> make_predictor(const std::string& id,
                                                            std::uint64_t seed);

/// Least-squares slope of log(err) against log(h) over the smallest `window`
/// step sizes whose error is finite and above `floor`. NaN with < 2 points.
double fitted_slope(const std::vector<double>& h, const std::vector<double>& err,
                    std::size_t window = 4, double floor = 1e-13);

struct ErrorTable {
  std::vector<double> h;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> errors;  // [row h][column]; inf when a run failed
  std::vector<double> slopes;               // per column

  void write(std::ostream& os, const std::string& header) const;
};

/// Relative Euclidean error against the exact solution after cfg.periods
/// periods, for every (h, k) cell plus the base method.
ErrorTable convergence_study(const ExperimentConfig& cfg);

struct DriftSeries {
  std::vector<std::string> columns;       // first column is t
  std::vector<std::vector<double>> rows;  // subsampled
  std::vector<double> max_drift;          // per non-time column, over every step

  void write(std::ostream& os, const std::string& header) const;
};

/// Relative drift of V and every secondary observable, one column group per k
/// (or a single group for a pair), at step size cfg.hs.front().
DriftSeries drift_study(const ExperimentConfig& cfg);

struct OrbitSeries {
  std::vector<double> t;
  std::vector<std::pair<double, double>> position;
  double max_norm = 0.0;  // over the whole run

  void write(std::ostream& os, const std::string& header) const;
};

/// Positions over the final period of a cfg.periods-long run (first k, first h).
OrbitSeries orbit_dump(const ExperimentConfig& cfg);

OrderReport certify(const ExperimentConfig& cfg);

}  // namespace licrk
