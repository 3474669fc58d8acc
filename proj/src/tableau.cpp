#include "licrk/tableau.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "licrk/errors.hpp"

namespace licrk {

void validate(const ButcherTableau& t, double row_sum_tol) {
  const std::size_t s = t.b.size();
  if (s == 0) throw Error(Errc::invalid_argument, "tableau: no stages");
  if (t.c.size() != s || t.a.rows() != s || t.a.cols() != s)
    throw Error(Errc::invalid_argument, "tableau: A, b, c sizes disagree");
  for (std::size_t i = 0; i < s; ++i) {
    double sum = 0.0;
    for (double v : t.a.row(i)) sum += v;
    if (std::abs(sum - t.c[i]) > row_sum_tol)
      throw Error(Errc::invalid_argument, "tableau: c is not the row sum of A");
  }
  if (t.declared_order < 1) throw Error(Errc::invalid_argument, "tableau: order must be >= 1");
}

void validate(const PartitionedTableau& p, double tol) {
  validate(p.main, tol);
  const std::size_t s = p.stages();
  if (p.ahat.rows() != s || p.ahat.cols() != s || p.chat.size() != s)
    throw Error(Errc::invalid_argument, "pair: predictor tableau size mismatch");
  for (std::size_t i = 0; i < s; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      // exact zero on and above the diagonal keeps the Z stages explicit
      if (j >= i && p.ahat(i, j) != 0.0)
        throw Error(Errc::invalid_argument, "pair: Ahat is not strictly lower triangular");
      sum += p.ahat(i, j);
    }
    if (std::abs(sum - p.chat[i]) > tol)
      throw Error(Errc::invalid_argument, "pair: chat is not the row sum of Ahat");
  }
  if (!is_canonical(p.main, tol))
    throw Error(Errc::invalid_argument, "pair: main tableau is not canonical");
}

Vector legendre_roots(int s) {
  if (s < 1) throw Error(Errc::invalid_argument, "legendre_roots: s must be >= 1");
  Vector roots(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (s + 0.5));
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int n = 1; n < s; ++n) {
        const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
        p0 = p1;
        p1 = p2;
      }
      const double pn = s == 1 ? x : p1;
      const double pnm1 = s == 1 ? 1.0 : p0;
      const double dp = s * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) {
        converged = true;
        break;
      }
    }
    // Newton from the cosine guess converges quadratically; a stall at the
    // roundoff floor is still accurate, so only a non-finite value is fatal.
    if (!converged && !std::isfinite(x))
      throw Error(Errc::no_convergence, "legendre_roots: Newton iteration failed");
    roots[static_cast<std::size_t>(i)] = x;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// Solves sum_j w_j c_j^{k-1} = rhs_k for k = 1..s.
Vector solve_vandermonde(const Vector& c, const Vector& rhs) {
  const std::size_t s = c.size();
  DenseMatrix v(s, s);
  for (std::size_t j = 0; j < s; ++j) {
    double p = 1.0;
    for (std::size_t k = 0; k < s; ++k) {
      v(k, j) = p;
      p *= c[j];
    }
  }
  return lu_solve(v, rhs);
}

}  // namespace

ButcherTableau gauss(int s) {
  const Vector x = legendre_roots(s);
  const auto n = static_cast<std::size_t>(s);
  ButcherTableau t;
  t.name = "gauss:" + std::to_string(s);
  t.c.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.c[i] = 0.5 * (1.0 + x[i]);
  // the middle root of odd s is zero up to roundoff
  if (s % 2 == 1) t.c[n / 2] = 0.5;

  Vector rhs(n);
  for (std::size_t k = 0; k < n; ++k) rhs[k] = 1.0 / static_cast<double>(k + 1);
  t.b = solve_vandermonde(t.c, rhs);

  t.a = DenseMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double p = t.c[i];
    for (std::size_t k = 0; k < n; ++k) {
      rhs[k] = p / static_cast<double>(k + 1);
      p *= t.c[i];
    }
    const Vector row = solve_vandermonde(t.c, rhs);
    for (std::size_t j = 0; j < n; ++j) t.a(i, j) = row[j];
  }
  t.declared_order = 2 * s;
  return t;
}

double canonical_residual(const ButcherTableau& t) {
  const std::size_t s = t.stages();
  double worst = 0.0;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      worst = std::max(worst,
                       std::abs(t.b[i] * t.a(i, j) + t.b[j] * t.a(j, i) - t.b[i] * t.b[j]));
  return worst;
}

bool is_canonical(const ButcherTableau& t, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "is_canonical: tol must be positive");
  return canonical_residual(t) <= tol;
}

double dirk3_alpha() {
  const double cbrt2 = std::cbrt(2.0);
  return (2.0 + 1.0 / cbrt2 + cbrt2) / 3.0;
}

std::span<const DirkPreset> dirk_presets() {
  static const std::array<DirkPreset, 4> presets = [] {
    const double alpha = dirk3_alpha();
    const double p = 1.0 / (4.0 - std::cbrt(4.0));
    return std::array<DirkPreset, 4>{{
        {"midpoint", {1.0}, 2},
        {"midpoint2", {0.5, 0.5}, 2},
        {"alpha3", {alpha, alpha, 1.0 - 2.0 * alpha}, 3},
        {"fractal5", {p, p, 1.0 - 4.0 * p, p, p}, 4},
    }};
  }();
  return presets;
}

ButcherTableau dirk_canonical(std::span<const double> b) {
  if (b.empty()) throw Error(Errc::invalid_argument, "dirk_canonical: empty weights");
  double sum = 0.0;
  for (double v : b) {
    if (!std::isfinite(v)) throw Error(Errc::invalid_argument, "dirk_canonical: non-finite weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-13)
    throw Error(Errc::invalid_argument, "dirk_canonical: weights must sum to 1");

  const std::size_t s = b.size();
  ButcherTableau t;
  t.name = "dirk";
  t.b.assign(b.begin(), b.end());
  t.a = DenseMatrix(s, s);
  t.c.resize(s);
  double partial = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < i; ++j) t.a(i, j) = b[j];
    t.a(i, i) = 0.5 * b[i];
    t.c[i] = partial + 0.5 * b[i];
    partial += b[i];
  }
  t.declared_order = 1;
  for (const auto& preset : dirk_presets()) {
    if (preset.b.size() != s) continue;
    bool same = true;
    for (std::size_t i = 0; i < s; ++i) same = same && std::abs(preset.b[i] - b[i]) <= 1e-13;
    if (same) {
      t.declared_order = preset.order;
      t.name = "dirk:" + preset.name;
      break;
    }
  }
  return t;
}

PartitionedTableau prk_gauss2() {
  const double r3 = std::sqrt(3.0);
  PartitionedTableau p;
  p.name = "prk-gauss2";
  p.main.name = "gauss:2 (padded)";
  p.main.a = DenseMatrix(5, 5);
  p.main.a(3, 3) = 0.25;
  p.main.a(3, 4) = 0.25 - r3 / 6.0;
  p.main.a(4, 3) = 0.25 + r3 / 6.0;
  p.main.a(4, 4) = 0.25;
  p.main.b = {0.0, 0.0, 0.0, 0.5, 0.5};
  p.main.c = {0.0, 0.0, 0.0, 0.5 - r3 / 6.0, 0.5 + r3 / 6.0};
  p.main.declared_order = 4;

  p.ahat = DenseMatrix(5, 5);
  p.ahat(1, 0) = 0.25;
  p.ahat(2, 1) = 0.5;
  p.ahat(3, 0) = 1.0 / 6.0;
  p.ahat(3, 2) = 1.0 / 3.0 - r3 / 6.0;
  p.ahat(4, 0) = 1.0 / 6.0;
  p.ahat(4, 2) = 1.0 / 3.0 + r3 / 6.0;
  p.chat = {0.0, 0.25, 0.5, 0.5 - r3 / 6.0, 0.5 + r3 / 6.0};
  p.declared_order = 4;
  validate(p);
  return p;
}

Dirk3Gammas prk_dirk3_default_gammas() {
  const double alpha = dirk3_alpha();
  return {1.0 / (3.0 * alpha * alpha), 0.0, 0.0};
}

double prk_dirk3_constraint_residual(const Dirk3Gammas& g) {
  const double a = dirk3_alpha();
  return a * a * g.g1 + a * (1.0 - 2.0 * a) * g.g2 + 3.0 * a * (1.0 - 2.0 * a) * g.g3 -
         1.0 / 3.0;
}

PartitionedTableau prk_dirk3(const Dirk3Gammas& g) {
  const double res = prk_dirk3_constraint_residual(g);
  if (!(std::abs(res) <= 1e-12)) {
    throw Error(Errc::invalid_argument,
                "prk_dirk3: gammas violate the order-3 constraint (residual " +
                    std::to_string(res) + ")");
  }
  const double a = dirk3_alpha();
  PartitionedTableau p;
  p.name = "prk-dirk3";
  p.main.name = "dirk:alpha3 (padded)";
  p.main.a = DenseMatrix::from_rows({{0.0, 0.0, 0.0, 0.0},
                                     {0.0, a / 2.0, 0.0, 0.0},
                                     {0.0, a, a / 2.0, 0.0},
                                     {0.0, a, a, 0.5 - a}});
  p.main.b = {0.0, a, a, 1.0 - 2.0 * a};
  p.main.c = {0.0, a / 2.0, 1.5 * a, 0.5 + a};
  p.main.declared_order = 3;

  p.ahat = DenseMatrix::from_rows({{0.0, 0.0, 0.0, 0.0},
                                   {a / 2.0, 0.0, 0.0, 0.0},
                                   {1.5 * a - g.g1, g.g1, 0.0, 0.0},
                                   {0.5 + a - g.g2 - g.g3, g.g2, g.g3, 0.0}});
  p.chat = p.main.c;
  p.declared_order = 3;
  validate(p);
  return p;
}

PartitionedTableau prk_dirk3() { return prk_dirk3(prk_dirk3_default_gammas()); }

AnyTableau tableau_by_id(const std::string& id) {
  if (id.rfind("gauss:", 0) == 0) {
    int s = 0;
    try {
      std::size_t used = 0;
      s = std::stoi(id.substr(6), &used);
      if (used != id.size() - 6) s = 0;
    } catch (const std::exception&) {
      s = 0;
    }
    if (s < 1) throw Error(Errc::config, "unknown tableau id '" + id + "'");
    return gauss(s);
  }
  if (id == "dirk3") {
    const double a = dirk3_alpha();
    const Vector b{a, a, 1.0 - 2.0 * a};
    return dirk_canonical(b);
  }
  if (id.rfind("dirk:", 0) == 0) {
    for (const auto& preset : dirk_presets())
      if (id.substr(5) == preset.name) return dirk_canonical(preset.b);
  }
  if (id == "prk-gauss2") return prk_gauss2();
  if (id == "prk-dirk3") return prk_dirk3();
  throw Error(Errc::config, "unknown tableau id '" + id + "'");
}

ButcherTableau butcher_by_id(const std::string& id) {
  auto t = tableau_by_id(id);
  if (auto* bt = std::get_if<ButcherTableau>(&t)) return *bt;
  throw Error(Errc::config, "'" + id + "' names a partitioned pair, not a tableau");
}

PartitionedTableau pair_by_id(const std::string& id) {
  auto t = tableau_by_id(id);
  if (auto* pt = std::get_if<PartitionedTableau>(&t)) return *pt;
  throw Error(Errc::config, "'" + id + "' does not name a partitioned pair");
}

}  // namespace licrk
