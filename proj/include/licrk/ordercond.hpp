#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "licrk/linalg.hpp"
#include "licrk/tableau.hpp"

namespace licrk {

enum class Colour : std::uint8_t { black, white };

/// Bi-coloured rooted tree with children kept in canonical order.
class BiColouredTree {
 public:
  explicit BiColouredTree(Colour colour, std::vector<BiColouredTree> children = {});

  Colour colour() const { return colour_; }
  const std::vector<BiColouredTree>& children() const { return children_; }
  int order() const { return order_; }

  /// e.g. "b[b,w[w]]": colour letter, children in brackets.
  const std::string& serialised() const { return key_; }

  /// Root black and every black vertex has a black parent.
  bool in_tpy_prime() const;

  friend bool operator==(const BiColouredTree& a, const BiColouredTree& b) { return a.key_ == b.key_; }
  /// Total order: by vertex count, then serialisation.
  friend bool operator<(const BiColouredTree& a, const BiColouredTree& b);

 private:
  Colour colour_;
  std::vector<BiColouredTree> children_;
  int order_;
  std::string key_;
};

/// All trees of the restricted family with at most max_order vertices.
std::vector<BiColouredTree> enumerate_tpy(int max_order);

/// Tree density: order(t) times the product of the children's densities.
std::uint64_t density(const BiColouredTree& t);

/// Coefficients entering the elementary weight: b for the root, A on edges
/// into black vertices, Ahat on edges into white vertices.
struct WeightCoefficients {
  Vector b;
  DenseMatrix a;
  DenseMatrix ahat;
};

double elementary_weight(const WeightCoefficients& w, const BiColouredTree& t);
double elementary_weight(const PartitionedTableau& p, const BiColouredTree& t);

struct OrderConditionRow {
  BiColouredTree tree;
  double weight;
  double expected;  // 1 / density
  double residual;
};

struct OrderReport {
  std::string pair;
  int order;
  double tol;
  bool passed;
  std::vector<OrderConditionRow> rows;

  /// Aligned text columns, one line per tree.
  std::string format() const;
};

OrderReport verify_order(const PartitionedTableau& p, int order, double tol);

}  // namespace licrk
