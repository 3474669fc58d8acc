#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "licrk/ordercond.hpp"
#include "licrk/predictor.hpp"
#include "licrk/tableau.hpp"

using namespace licrk;

namespace {

// A tree given by parent indices (parent[0] = -1, parent[i] < i) and colours.
struct FlatTree {
  std::vector<int> parent;
  std::vector<Colour> colour;
};

BiColouredTree build(const FlatTree& f, int v) {
  std::vector<BiColouredTree> kids;
  for (int u = 0; u < static_cast<int>(f.parent.size()); ++u)
    if (f.parent[u] == v) kids.push_back(build(f, u));
  return BiColouredTree(f.colour[v], std::move(kids));
}

bool flat_in_family(const FlatTree& f) {
  if (f.colour[0] != Colour::black) return false;
  for (std::size_t v = 1; v < f.parent.size(); ++v)
    if (f.colour[v] == Colour::black && f.colour[f.parent[v]] == Colour::white) return false;
  return true;
}

// Every labelled tree with n vertices and every colouring.
void for_each_flat(int n, const std::function<void(const FlatTree&)>& fn) {
  FlatTree f;
  f.parent.assign(n, -1);
  f.colour.assign(n, Colour::black);
  std::function<void(int)> parents = [&](int v) {
    if (v == n) {
      for (int mask = 0; mask < (1 << n); ++mask) {
        for (int i = 0; i < n; ++i) f.colour[i] = (mask >> i) & 1 ? Colour::white : Colour::black;
        fn(f);
      }
      return;
    }
    for (int p = 0; p < v; ++p) {
      f.parent[v] = p;
      parents(v + 1);
    }
  };
  parents(1);
}

std::uint64_t flat_density(const FlatTree& f) {
  const int n = static_cast<int>(f.parent.size());
  std::vector<std::uint64_t> size(n, 1);
  for (int v = n - 1; v > 0; --v) size[f.parent[v]] += size[v];
  std::uint64_t d = 1;
  for (auto s : size) d *= s;
  return d;
}

// Sum over all index assignments of b_root * prod(edge coefficient).
double flat_weight(const FlatTree& f, const WeightCoefficients& w) {
  const int n = static_cast<int>(f.parent.size());
  const int s = static_cast<int>(w.b.size());
  std::vector<int> idx(n, 0);
  double total = 0.0;
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      double term = w.b[idx[0]];
      for (int u = 1; u < n; ++u) {
        const auto& m = f.colour[u] == Colour::black ? w.a : w.ahat;
        term *= m(idx[f.parent[u]], idx[u]);
      }
      total += term;
      return;
    }
    for (int i = 0; i < s; ++i) {
      idx[v] = i;
      rec(v + 1);
    }
  };
  rec(0);
  return total;
}

}  // namespace

TEST_CASE("tree construction canonicalises child order") {
  const BiColouredTree w(Colour::white);
  const BiColouredTree b(Colour::black);
  const BiColouredTree t1(Colour::black, {w, BiColouredTree(Colour::black, {b})});
  const BiColouredTree t2(Colour::black, {BiColouredTree(Colour::black, {b}), w});
  CHECK(t1 == t2);
  CHECK(t1.order() == 4);
  CHECK(t1.serialised() == t2.serialised());
  CHECK(t1.in_tpy_prime());
  CHECK_FALSE(BiColouredTree(Colour::white).in_tpy_prime());
  CHECK_FALSE(BiColouredTree(Colour::black, {BiColouredTree(Colour::white, {b})}).in_tpy_prime());
}

TEST_CASE("enumeration counts per order") {
  const auto trees = enumerate_tpy(4);
  CHECK(trees.size() == 27);
  std::map<int, int> per_order;
  for (const auto& t : trees) {
    ++per_order[t.order()];
    CHECK(t.in_tpy_prime());
  }
  CHECK(per_order[1] == 1);
  CHECK(per_order[2] == 2);
  CHECK(per_order[3] == 6);
  CHECK(per_order[4] == 18);
  CHECK(enumerate_tpy(3).size() == 9);
  CHECK(std::is_sorted(trees.begin(), trees.end()));
}

TEST_CASE("enumeration agrees with brute force over labelled trees") {
  for (int max_order = 1; max_order <= 5; ++max_order) {
    CAPTURE(max_order);
    std::set<std::string> brute;
    for (int n = 1; n <= max_order; ++n)
      for_each_flat(n, [&](const FlatTree& f) {
        if (flat_in_family(f)) brute.insert(build(f, 0).serialised());
      });
    const auto trees = enumerate_tpy(max_order);
    std::set<std::string> listed;
    for (const auto& t : trees) CHECK(listed.insert(t.serialised()).second);
    CHECK(listed == brute);
  }
}

TEST_CASE("density and elementary weights agree with brute force") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t s = 3;
  WeightCoefficients w{Vector(s), DenseMatrix(s, s), DenseMatrix(s, s)};
  for (std::size_t i = 0; i < s; ++i) {
    w.b[i] = u(rng);
    for (std::size_t j = 0; j < s; ++j) {
      w.a(i, j) = u(rng);
      w.ahat(i, j) = u(rng);
    }
  }
  for (int n = 1; n <= 5; ++n)
    for_each_flat(n, [&](const FlatTree& f) {
      if (!flat_in_family(f)) return;
      const auto t = build(f, 0);
      CHECK(density(t) == flat_density(f));
      CHECK(std::abs(elementary_weight(w, t) - flat_weight(f, w)) < 1e-12);
    });
}

TEST_CASE("known densities") {
  const BiColouredTree b(Colour::black);
  CHECK(density(b) == 1);
  CHECK(density(BiColouredTree(Colour::black, {b})) == 2);
  CHECK(density(BiColouredTree(Colour::black, {b, b})) == 3);
  CHECK(density(BiColouredTree(Colour::black, {BiColouredTree(Colour::black, {b})})) == 6);
  CHECK(density(BiColouredTree(Colour::black, {b, b, b})) == 4);
}

TEST_CASE("partitioned pairs certify at their published orders") {
  const auto g2 = verify_order(prk_gauss2(), 4, 1e-12);
  CHECK(g2.passed);
  CHECK(g2.rows.size() == 27);
  const auto d3 = verify_order(prk_dirk3(), 3, 1e-12);
  CHECK(d3.passed);
  CHECK(d3.rows.size() == 9);
  CHECK_FALSE(verify_order(prk_gauss2(), 5, 1e-12).passed);
  CHECK_FALSE(verify_order(prk_dirk3(), 4, 1e-12).passed);
}

TEST_CASE("a perturbed predictor tableau is caught") {
  auto p = prk_dirk3();
  p.ahat(2, 1) += 0.01;
  p.ahat(2, 0) -= 0.01;
  const auto report = verify_order(p, 3, 1e-12);
  CHECK_FALSE(report.passed);
  int failing = 0;
  for (const auto& r : report.rows)
    if (r.residual > 1e-12) ++failing;
  CHECK(failing >= 1);
  CHECK(report.format().find("FAIL") != std::string::npos);
  CHECK(report.format().find("order not certified") != std::string::npos);
}

TEST_CASE("with ahat = a the conditions reduce to classical ones") {
  const auto& dp = dopri5_tableau();
  const WeightCoefficients w{dp.b, dp.a, dp.a};
  for (const auto& t : enumerate_tpy(5))
    CHECK(std::abs(elementary_weight(w, t) - 1.0 / static_cast<double>(density(t))) < 1e-13);
  const auto g3 = gauss(3);
  const WeightCoefficients wg{g3.b, g3.a, g3.a};
  for (const auto& t : enumerate_tpy(6))
    CHECK(std::abs(elementary_weight(wg, t) - 1.0 / static_cast<double>(density(t))) < 1e-12);
}

TEST_CASE("report formatting") {
  const auto text = verify_order(prk_gauss2(), 2, 1e-12).format();
  CHECK(text.find("b[w]") != std::string::npos);
  CHECK(text.find("order certified") != std::string::npos);
}
