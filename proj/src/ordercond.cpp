#include "licrk/ordercond.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "licrk/errors.hpp"

namespace licrk {

BiColouredTree::BiColouredTree(Colour colour, std::vector<BiColouredTree> children)
    : colour_(colour), children_(std::move(children)), order_(1) {
  std::sort(children_.begin(), children_.end());
  key_ = colour_ == Colour::black ? "b" : "w";
  if (!children_.empty()) {
    key_ += '[';
    for (std::size_t i = 0; i < children_.size(); ++i) {
      if (i > 0) key_ += ',';
      key_ += children_[i].key_;
      order_ += children_[i].order_;
    }
    key_ += ']';
  }
}

bool operator<(const BiColouredTree& a, const BiColouredTree& b) {
  if (a.order_ != b.order_) return a.order_ < b.order_;
  return a.key_ < b.key_;
}

bool BiColouredTree::in_tpy_prime() const {
  if (colour_ != Colour::black) return false;
  std::function<bool(const BiColouredTree&)> ok = [&](const BiColouredTree& t) {
    for (const auto& c : t.children_) {
      if (t.colour_ == Colour::white && c.colour_ == Colour::black) return false;
      if (!ok(c)) return false;
    }
    return true;
  };
  return ok(*this);
}

namespace {

// Every child multiset drawn from `pool` (sorted) with total order `budget`,
// using non-decreasing pool indices so each multiset appears once.
void child_multisets(const std::vector<const BiColouredTree*>& pool, std::size_t start,
                     int budget, std::vector<BiColouredTree>& current,
                     std::vector<std::vector<BiColouredTree>>& out) {
  if (budget == 0) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = start; i < pool.size(); ++i) {
    if (pool[i]->order() > budget) continue;
    current.push_back(*pool[i]);
    child_multisets(pool, i, budget - pool[i]->order(), current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<BiColouredTree> enumerate_tpy(int max_order) {
  if (max_order < 1) throw Error(Errc::invalid_argument, "enumerate_tpy: max_order must be >= 1");
  // White vertices may only have white children, so white subtrees are
  // all-white; black vertices accept either colour.
  std::vector<BiColouredTree> black;
  std::vector<BiColouredTree> white;
  for (int n = 1; n <= max_order; ++n) {
    std::vector<const BiColouredTree*> white_pool;
    for (const auto& t : white) white_pool.push_back(&t);
    std::vector<const BiColouredTree*> any_pool = white_pool;
    for (const auto& t : black) any_pool.push_back(&t);
    std::sort(any_pool.begin(), any_pool.end(),
              [](const BiColouredTree* a, const BiColouredTree* b) { return *a < *b; });

    std::vector<BiColouredTree> current;
    std::vector<std::vector<BiColouredTree>> sets;
    child_multisets(white_pool, 0, n - 1, current, sets);
    std::vector<BiColouredTree> new_white;
    for (auto& s : sets) new_white.emplace_back(Colour::white, std::move(s));

    sets.clear();
    child_multisets(any_pool, 0, n - 1, current, sets);
    std::vector<BiColouredTree> new_black;
    for (auto& s : sets) new_black.emplace_back(Colour::black, std::move(s));

    white.insert(white.end(), new_white.begin(), new_white.end());
    black.insert(black.end(), new_black.begin(), new_black.end());
  }
  std::sort(black.begin(), black.end());
  return black;
}

std::uint64_t density(const BiColouredTree& t) {
  std::uint64_t d = static_cast<std::uint64_t>(t.order());
  for (const auto& c : t.children()) d *= density(c);
  return d;
}

namespace {

// Stage vector of a non-root vertex: Phi_i = sum_j M_ij prod_children Phi_j(child),
// with M = A for black vertices and Ahat for white ones.
Vector stage_vector(const WeightCoefficients& w, const BiColouredTree& t) {
  const std::size_t s = w.b.size();
  Vector inner(s, 1.0);
  for (const auto& c : t.children()) {
    const Vector phi = stage_vector(w, c);
    for (std::size_t j = 0; j < s; ++j) inner[j] *= phi[j];
  }
  const DenseMatrix& m = t.colour() == Colour::black ? w.a : w.ahat;
  return m.apply(inner);
}

}  // namespace

double elementary_weight(const WeightCoefficients& w, const BiColouredTree& t) {
  const std::size_t s = w.b.size();
  Vector prod(s, 1.0);
  for (const auto& c : t.children()) {
    const Vector phi = stage_vector(w, c);
    for (std::size_t i = 0; i < s; ++i) prod[i] *= phi[i];
  }
  return dot(w.b, prod);
}

double elementary_weight(const PartitionedTableau& p, const BiColouredTree& t) {
  return elementary_weight(WeightCoefficients{p.main.b, p.main.a, p.ahat}, t);
}

OrderReport verify_order(const PartitionedTableau& p, int order, double tol) {
  if (order < 1) throw Error(Errc::invalid_argument, "verify_order: order must be >= 1");
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "verify_order: tol must be positive");
  OrderReport report{p.name, order, tol, true, {}};
  const WeightCoefficients w{p.main.b, p.main.a, p.ahat};
  for (auto& t : enumerate_tpy(order)) {
    const double phi = elementary_weight(w, t);
    const double expected = 1.0 / static_cast<double>(density(t));
    const double residual = std::abs(phi - expected);
    if (!(residual <= tol)) report.passed = false;
    report.rows.push_back({std::move(t), phi, expected, residual});
  }
  return report;
}

std::string OrderReport::format() const {
  std::size_t width = 4;
  for (const auto& r : rows) width = std::max(width, r.tree.serialised().size());
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "# pair %s  order %d  tol %.3e\n", pair.c_str(), order, tol);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-*s %5s %24s %24s %12s\n", static_cast<int>(width), "tree",
                "|t|", "phi", "1/t!", "residual");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-*s %5d %24.17e %24.17e %12.3e%s\n", static_cast<int>(width),
                  r.tree.serialised().c_str(), r.tree.order(), r.weight, r.expected, r.residual,
                  r.residual <= tol ? "" : "  FAIL");
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "# %zu conditions: %s\n", rows.size(),
                passed ? "order certified" : "order not certified");
  out += buf;
  return out;
}

}  // namespace licrk
