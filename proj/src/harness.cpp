#include "licrk/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "licrk/errors.hpp"
#include "licrk/problems.hpp"

namespace licrk {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  if (std::isinf(v)) return "inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

bool numerical_failure(Errc code) {
  return code == Errc::diverged || code == Errc::singular_matrix ||
         code == Errc::no_convergence || code == Errc::domain;
}

std::size_t steps_for(double span, double h) {
  const double n = std::round(span / h);
  if (n < 1.0) throw Error(Errc::config, "step size exceeds the integration span");
  return static_cast<std::size_t>(n);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (ks.empty()) throw Error(Errc::config, "k list is empty");
  for (int k : ks)
    if (k < 1 || k > 12) throw Error(Errc::config, "k values must lie in 1..12");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(hs[i] > 0.0)) throw Error(Errc::config, "step sizes must be positive");
    if (i > 0 && !(hs[i] < hs[i - 1])) throw Error(Errc::config, "h list must be strictly decreasing");
  }
  if (!(periods > 0.0)) throw Error(Errc::config, "periods must be positive");
  if (subsample < 1) throw Error(Errc::config, "subsample must be >= 1");
}

std::string ExperimentConfig::serialise() const {
  std::ostringstream os;
  os << "problem=" << problem;
  if (pair) {
    os << " pair=" << *pair;
  } else {
    os << " tableau=" << tableau << " predictor=" << predictor
       << " mode=" << (mode == IterationMode::semi_implicit ? "semi" : "explicit");
  }
  os << " k=";
  for (std::size_t i = 0; i < ks.size(); ++i) os << (i ? "," : "") << ks[i];
  os << " h=";
  for (std::size_t i = 0; i < hs.size(); ++i) os << (i ? "," : "") << fmt(hs[i]);
  os << " periods=" << fmt(periods) << " subsample=" << subsample << " seed=" << seed;
  return os.str();
}

std::vector<double> parse_h_list(const std::string& text, double period) {
  std::vector<double> hs;
  for (const auto& tok : split(text, ',')) {
    try {
      std::size_t used = 0;
      if (tok.rfind("T/", 0) == 0) {
        const double div = std::stod(tok.substr(2), &used);
        if (used != tok.size() - 2 || !(div > 0.0)) throw std::invalid_argument(tok);
        hs.push_back(period / div);
      } else {
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        hs.push_back(v);
      }
    } catch (const std::exception&) {
      throw Error(Errc::config, "malformed step size '" + tok + "'");
    }
  }
  if (hs.empty()) throw Error(Errc::config, "empty h list");
  return hs;
}

std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> ks;
  for (const auto& tok : split(text, ',')) {
    try {
      const auto dash = tok.find('-');
      if (dash != std::string::npos && dash > 0) {
        const int lo = std::stoi(tok.substr(0, dash));
        const int hi = std::stoi(tok.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument(tok);
        for (int k = lo; k <= hi; ++k) ks.push_back(k);
      } else {
        std::size_t used = 0;
        ks.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      }
    } catch (const std::exception&) {
      throw Error(Errc::config, "malformed k list '" + text + "'");
    }
  }
  return ks;
}

std::variant<PredictorKind, CustomPredictor> make_predictor(const std::string& id,
                                                            std::uint64_t seed) {
  if (id != "random") return predictor_by_id(id);
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return CustomPredictor([rng](const PredictorContext& ctx) {
    Stages guess = euler_predictor(ctx.problem, ctx.y0, ctx.h, ctx.tableau.c);
    const double amp = 0.1 * (1.0 + norm2(ctx.y0));
    std::uniform_real_distribution<double> u(-amp, amp);
    for (auto& y : guess)
      for (double& v : y) v += u(*rng);
    return guess;
  });
}

double fitted_slope(const std::vector<double>& h, const std::vector<double>& err, std::size_t window,
                    double floor) {
  std::vector<std::size_t> idx(h.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return h[a] < h[b]; });
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i : idx) {
    if (xs.size() == window) break;
    if (std::isfinite(err[i]) && err[i] > floor) {
      xs.push_back(std::log(h[i]));
      ys.push_back(std::log(err[i]));
    }
  }
  if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

namespace {

struct Column {
  std::string label;
  Scheme scheme;
};

std::vector<Column> build_columns(const ExperimentConfig& cfg, bool with_base) {
  std::vector<Column> cols;
  if (cfg.pair) {
    cols.push_back({*cfg.pair, PrkScheme{pair_by_id(*cfg.pair)}});
    return cols;
  }
  const ButcherTableau t = butcher_by_id(cfg.tableau);
  for (int k : cfg.ks) {
    IterativeScheme s{t, make_predictor(cfg.predictor, cfg.seed), IterationConfig::fixed(cfg.mode, k)};
    cols.push_back({"k=" + std::to_string(k), std::move(s)});
  }
  if (with_base) cols.push_back({"base", BaseRkScheme{t, 1e-14}});
  return cols;
}

}  // namespace

ErrorTable convergence_study(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.hs.empty()) throw Error(Errc::config, "convergence study needs an h list");
  const auto problem = problem_by_id(cfg.problem);
  if (!problem->has_exact_solution())
    throw Error(Errc::config, problem->name() + " has no exact solution to compare against");
  const auto cols = build_columns(cfg, cfg.include_base);
  const double span = cfg.periods * problem->period();
  const Vector y0 = problem->initial_state();

  ErrorTable table;
  for (const auto& c : cols) table.columns.push_back(c.label);
  for (double h : cfg.hs) {
    const std::size_t n = steps_for(span, h);
    const double h_used = span / static_cast<double>(n);
    const Vector ref = problem->exact_solution(span);
    std::vector<double> row;
    for (const auto& c : cols) {
      double err = std::numeric_limits<double>::infinity();
      try {
        const auto traj = integrate(*problem, c.scheme, y0, h_used, n);
        err = norm2(sub(traj.final_state(), ref)) / norm2(ref);
        if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
      } catch (const Error& e) {
        if (!numerical_failure(e.code())) throw;
      }
      row.push_back(err);
    }
    table.h.push_back(h_used);
    table.errors.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::vector<double> col;
    for (const auto& row : table.errors) col.push_back(row[c]);
    table.slopes.push_back(fitted_slope(table.h, col));
  }
  return table;
}

void ErrorTable::write(std::ostream& os, const std::string& header) const {
  os << "# " << header << '\n';
  os << "# h";
  for (const auto& c : columns) os << ' ' << c;
  os << '\n';
  for (std::size_t r = 0; r < h.size(); ++r) {
    os << fmt(h[r]);
    for (double e : errors[r]) os << ' ' << fmt(e);
    os << '\n';
  }
  os << "# slope";
  for (double s : slopes) os << ' ' << fmt_short(s);
  os << '\n';
}

DriftSeries drift_study(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.hs.empty()) throw Error(Errc::config, "drift study needs a step size");
  const auto problem = problem_by_id(cfg.problem);
  const auto cols = build_columns(cfg, false);
  const double h = cfg.hs.front();
  const std::size_t n = steps_for(cfg.periods * problem->period(), h);
  const Vector y0 = problem->initial_state();

  std::vector<Observable> obs{{"V", [&p = *problem](std::span<const double> y) { return p.invariant(y); }}};
  for (auto& o : problem->secondary_observables()) obs.push_back(std::move(o));
  std::vector<double> ref;
  for (const auto& o : obs) ref.push_back(o.eval(y0));

  DriftSeries series;
  series.columns.push_back("t");
  for (const auto& c : cols)
    for (const auto& o : obs) series.columns.push_back(o.name + "[" + c.label + "]");
  const std::size_t width = cols.size() * obs.size();
  series.max_drift.assign(width, 0.0);
  const std::size_t n_rows = n / cfg.subsample + 1;
  series.rows.assign(n_rows, std::vector<double>(width + 1, 0.0));

  for (std::size_t ci = 0; ci < cols.size(); ++ci) {
    const Observer observer = [&](std::size_t step, double t, std::span<const double> y) {
      for (std::size_t oi = 0; oi < obs.size(); ++oi) {
        const double rel = std::abs(obs[oi].eval(y) - ref[oi]) / std::max(std::abs(ref[oi]), 1e-300);
        const std::size_t col = ci * obs.size() + oi;
        series.max_drift[col] = std::max(series.max_drift[col], rel);
        if (step % cfg.subsample == 0) {
          series.rows[step / cfg.subsample][0] = t;
          series.rows[step / cfg.subsample][col + 1] = rel;
        }
      }
    };
    try {
      integrate(*problem, cols[ci].scheme, y0, h, n, observer);
    } catch (const Error& e) {
      if (!numerical_failure(e.code())) throw;
      for (std::size_t oi = 0; oi < obs.size(); ++oi)
        series.max_drift[ci * obs.size() + oi] = std::numeric_limits<double>::infinity();
    }
  }
  return series;
}

void DriftSeries::write(std::ostream& os, const std::string& header) const {
  os << "# " << header << '\n' << '#';
  for (const auto& c : columns) os << ' ' << c;
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << fmt(row[i]);
    os << '\n';
  }
  os << "# max";
  for (double m : max_drift) os << ' ' << fmt(m);
  os << '\n';
}

OrbitSeries orbit_dump(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.hs.empty()) throw Error(Errc::config, "orbit dump needs a step size");
  const auto problem = problem_by_id(cfg.problem);
  if (problem->name().rfind("kepler", 0) != 0) throw Error(Errc::config, "orbit dump needs a Kepler problem");
  ExperimentConfig one = cfg;
  one.ks = {cfg.ks.front()};
  const auto cols = build_columns(one, false);
  const double h = cfg.hs.front();
  const std::size_t per_period = steps_for(problem->period(), h);
  const std::size_t n = steps_for(cfg.periods * problem->period(), h);
  const std::size_t first = n >= per_period ? n - per_period : 0;

  OrbitSeries series;
  const Observer observer = [&](std::size_t step, double t, std::span<const double> y) {
    series.max_norm = std::max(series.max_norm, norm2(y));
    if (step >= first && step < first + per_period) {
      series.t.push_back(t);
      series.position.emplace_back(y[0], y[1]);
    }
  };
  integrate(*problem, cols.front().scheme, problem->initial_state(), h, n, observer);
  return series;
}

void OrbitSeries::write(std::ostream& os, const std::string& header) const {
  os << "# " << header << '\n' << "# t y1 y2\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    os << fmt(t[i]) << ' ' << fmt(position[i].first) << ' ' << fmt(position[i].second) << '\n';
}

OrderReport certify(const ExperimentConfig& cfg) {
  if (!cfg.pair) throw Error(Errc::config, "certification needs --pair");
  return verify_order(pair_by_id(*cfg.pair), cfg.order, cfg.tol);
}

}  // namespace licrk
