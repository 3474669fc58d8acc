#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "licrk/harness.hpp"
#include "licrk/problems.hpp"
#include "support.hpp"

using namespace licrk;
using licrk::testing::code_of;

namespace {

std::string render_drift(const ExperimentConfig& cfg) {
  std::ostringstream os;
  drift_study(cfg).write(os, cfg.serialise());
  return os.str();
}

}  // namespace

TEST_CASE("h list parsing") {
  const auto hs = parse_h_list("T/4, 0.1,T/16", 2.0);
  REQUIRE(hs.size() == 3);
  CHECK(hs[0] == 0.5);
  CHECK(hs[1] == 0.1);
  CHECK(hs[2] == 0.125);
  CHECK(code_of([] { parse_h_list("T/0", 1.0); }) == Errc::config);
  CHECK(code_of([] { parse_h_list("abc", 1.0); }) == Errc::config);
  CHECK(code_of([] { parse_h_list("", 1.0); }) == Errc::config);
}

TEST_CASE("k list parsing") {
  CHECK(parse_k_list("1-3,6") == std::vector<int>{1, 2, 3, 6});
  CHECK(parse_k_list("4") == std::vector<int>{4});
  CHECK(code_of([] { parse_k_list("3-1"); }) == Errc::config);
  CHECK(code_of([] { parse_k_list("x"); }) == Errc::config);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.hs = {0.1, 0.05};
  CHECK_NOTHROW(cfg.validate());
  auto bad = cfg;
  bad.hs = {0.05, 0.1};
  CHECK(code_of([&] { bad.validate(); }) == Errc::config);
  bad = cfg;
  bad.ks = {0};
  CHECK(code_of([&] { bad.validate(); }) == Errc::config);
  bad = cfg;
  bad.ks = {13};
  CHECK(code_of([&] { bad.validate(); }) == Errc::config);
  bad = cfg;
  bad.periods = 0.0;
  CHECK(code_of([&] { bad.validate(); }) == Errc::config);
  bad = cfg;
  bad.hs = {-0.1};
  CHECK(code_of([&] { bad.validate(); }) == Errc::config);
  bad = cfg;
  bad.subsample = 0;
  CHECK(code_of([&] { bad.validate(); }) == Errc::config);
}

TEST_CASE("serialised header names the whole configuration") {
  ExperimentConfig cfg;
  cfg.hs = {0.1};
  cfg.ks = {2, 3};
  cfg.seed = 9;
  const auto line = cfg.serialise();
  for (const char* key : {"problem=euler", "tableau=gauss:3", "predictor=euler", "mode=semi", "seed=9"})
    CHECK(line.find(key) != std::string::npos);
  cfg.pair = "prk-dirk3";
  CHECK(cfg.serialise().find("pair=prk-dirk3") != std::string::npos);
  CHECK(cfg.serialise().find("tableau=") == std::string::npos);
}

TEST_CASE("fitted slope") {
  const std::vector<double> h{0.4, 0.2, 0.1, 0.05, 0.025};
  std::vector<double> err;
  for (double v : h) err.push_back(3.0 * std::pow(v, 4));
  CHECK(fitted_slope(h, err, 4, 0.0) == doctest::Approx(4.0).epsilon(1e-12));
  // points at or below the floor are skipped, as are failed runs
  err.back() = 1e-20;
  err[2] = std::numeric_limits<double>::infinity();
  CHECK(fitted_slope(h, err, 4, 1e-15) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::isnan(fitted_slope({0.1}, {1e-3}, 4, 0.0)));
}

TEST_CASE("random predictor is reproducible from its seed") {
  const auto rb = reference_rigid_body();
  const auto t = gauss(2);
  const auto y0 = rb.initial_state();
  const PredictorState state;
  const PredictorContext ctx{rb, t, y0, 0.0, 0.1, state};
  auto draw = [&](std::uint64_t seed) {
    return std::get<CustomPredictor>(make_predictor("random", seed))(ctx);
  };
  CHECK(draw(5) == draw(5));
  CHECK(draw(5) != draw(6));
  CHECK(std::holds_alternative<PredictorKind>(make_predictor("cerk", 0)));
}

TEST_CASE("convergence study output") {
  ExperimentConfig cfg;
  cfg.ks = {1, 2};
  cfg.hs = parse_h_list("T/64,T/128,T/256", reference_rigid_body().period());
  const auto table = convergence_study(cfg);
  CHECK(table.columns == std::vector<std::string>{"k=1", "k=2", "base"});
  REQUIRE(table.errors.size() == 3);
  for (const auto& row : table.errors)
    for (double e : row) CHECK(std::isfinite(e));
  // k = 1 with the euler predictor is second order, the base method sixth
  CHECK(table.slopes[0] == doctest::Approx(2.0).epsilon(0.1));
  CHECK(table.slopes[2] > 5.0);

  std::ostringstream os;
  table.write(os, cfg.serialise());
  const auto text = os.str();
  CHECK(text.rfind("# ", 0) == 0);
  CHECK(text.find("# h k=1 k=2 base\n") != std::string::npos);
  CHECK(text.find("# slope") != std::string::npos);
}

TEST_CASE("failed runs become inf cells") {
  ExperimentConfig cfg;
  cfg.problem = "kdv:d=16";
  cfg.predictor = "cerk";
  cfg.mode = IterationMode::explicit_update;
  cfg.ks = {6};
  cfg.hs = {reference_kdv(16).period() / 8.0};
  cfg.include_base = false;
  const auto table = convergence_study(cfg);
  CHECK(std::isinf(table.errors[0][0]));
  std::ostringstream os;
  table.write(os, "x");
  CHECK(os.str().find("inf") != std::string::npos);
}

TEST_CASE("drift study is deterministic for a fixed seed") {
  ExperimentConfig cfg;
  cfg.predictor = "random";
  cfg.ks = {1, 3};
  cfg.hs = {reference_rigid_body().period() / 32.0};
  cfg.periods = 4;
  cfg.subsample = 8;
  cfg.seed = 11;
  const auto a = render_drift(cfg);
  CHECK(a == render_drift(cfg));
  cfg.seed = 12;
  CHECK(a != render_drift(cfg));

  const auto series = drift_study(cfg);
  CHECK(series.columns ==
        std::vector<std::string>{"t", "V[k=1]", "I[k=1]", "V[k=3]", "I[k=3]"});
  CHECK(series.rows.size() == 128 / 8 + 1);
  CHECK(series.max_drift.size() == 4);
  CHECK(series.max_drift[0] <= 1e-13);
  CHECK(series.max_drift[2] <= 1e-13);
  CHECK(a.rfind("# ", 0) == 0);
}

TEST_CASE("orbit dump covers the final period") {
  ExperimentConfig cfg;
  cfg.problem = "kepler:e=0.6";
  cfg.ks = {2};
  cfg.hs = {2.0 * std::numbers::pi / 64.0};
  cfg.periods = 1024;
  const auto orbit = orbit_dump(cfg);
  REQUIRE(orbit.t.size() == 64);
  CHECK(orbit.t.front() == doctest::Approx(1023.0 * 2.0 * std::numbers::pi));
  CHECK(orbit.max_norm <= 10.0);
  cfg.problem = "euler";
  CHECK(code_of([&] { orbit_dump(cfg); }) == Errc::config);
}

TEST_CASE("certification through the harness") {
  ExperimentConfig cfg;
  CHECK(code_of([&] { certify(cfg); }) == Errc::config);
  cfg.pair = "prk-gauss2";
  cfg.order = 4;
  CHECK(certify(cfg).passed);
  cfg.order = 5;
  CHECK_FALSE(certify(cfg).passed);
}
