#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>

#include "licrk/linalg.hpp"

namespace licrk {

struct ButcherTableau {
  std::string name;
  DenseMatrix a;
  Vector b;
  Vector c;
  int declared_order = 1;

  std::size_t stages() const { return b.size(); }
};

/// Canonical main tableau plus a strictly lower triangular predictor tableau
/// (Ahat, chat) that computes the frozen-S stages explicitly.
struct PartitionedTableau {
  std::string name;
  ButcherTableau main;
  DenseMatrix ahat;
  Vector chat;
  int declared_order = 1;

  std::size_t stages() const { return main.stages(); }
};

/// Shape and row-sum checks; throws Errc::invalid_argument.
void validate(const ButcherTableau& t, double row_sum_tol = 1e-13);
void validate(const PartitionedTableau& p, double tol = 1e-13);

/// Roots of the degree-s Legendre polynomial on (-1, 1), ascending.
Vector legendre_roots(int s);

/// s-stage Gauss collocation method (order 2s). Abscissae from Newton on the
/// Legendre recurrence; A and b from the collocation Vandermonde systems.
ButcherTableau gauss(int s);

/// max_{i,j} |b_i a_ij + b_j a_ji - b_i b_j|.
double canonical_residual(const ButcherTableau& t);
bool is_canonical(const ButcherTableau& t, double tol);

/// Diagonally implicit canonical method: a_ij = b_j (j < i), a_ii = b_i / 2.
/// declared_order is the published order when b matches a preset, else 1.
ButcherTableau dirk_canonical(std::span<const double> b);

/// alpha = (2 + 2^{-1/3} + 2^{1/3}) / 3.
double dirk3_alpha();

/// Weight presets of the diagonally implicit canonical family that carry a
/// known order: midpoint (1 stage, order 2), two half midpoint steps (2, 2),
/// the alpha family (3, 3) and the symmetric five-stage fractal (5, 4).
struct DirkPreset {
  std::string name;
  Vector b;
  int order;
};
std::span<const DirkPreset> dirk_presets();

/// Five-stage pair built on the 2-stage Gauss method; order 4.
PartitionedTableau prk_gauss2();

/// Default gammas: (1 / (3 alpha^2), 0, 0).
struct Dirk3Gammas {
  double g1;
  double g2;
  double g3;
};
Dirk3Gammas prk_dirk3_default_gammas();
/// alpha^2 g1 + alpha (1 - 2 alpha) g2 + 3 alpha (1 - 2 alpha) g3 - 1/3.
double prk_dirk3_constraint_residual(const Dirk3Gammas& g);
/// Four-stage order-3 pair on the alpha family; rejects gammas whose
/// constraint residual exceeds 1e-12.
PartitionedTableau prk_dirk3(const Dirk3Gammas& g);
PartitionedTableau prk_dirk3();

/// Resolves `gauss:<s>`, `dirk3`, `dirk:<preset>`, `prk-gauss2`, `prk-dirk3`.
using AnyTableau = std::variant<ButcherTableau, PartitionedTableau>;
AnyTableau tableau_by_id(const std::string& id);
ButcherTableau butcher_by_id(const std::string& id);
PartitionedTableau pair_by_id(const std::string& id);

}  // namespace licrk
