#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qtr/walk.hpp"
#include "support/oracles.hpp"

using namespace qtr;

namespace {

WalkConfig fig1_config() {
  WalkConfig config;
  config.theta = 0.1;
  config.delta_sq = 1.0;
  config.dt = 1.0;
  config.steps = 100;
  config.walkers = 1000;
  config.seed = 42;
  return config;
}

}  // namespace

TEST_CASE("config validation") {
  WalkConfig config = fig1_config();
  config.delta_sq = 0.0;
  CHECK_THROWS_AS(config.validate(), ParameterError);
  config = fig1_config();
  config.dt = -1.0;
  CHECK_THROWS_AS(config.validate(), ParameterError);
  config = fig1_config();
  config.steps = 0;
  CHECK_THROWS_AS(config.validate(), ParameterError);
  config = fig1_config();
  config.walkers = 0;
  CHECK_THROWS_AS(config.validate(), ParameterError);
}

TEST_CASE("trajectories start at zero and rerun bit-identically") {
  WalkConfig config = fig1_config();
  config.walkers = 32;
  const WalkEnsemble first = simulate_walks(config);
  const WalkEnsemble second = simulate_walks(config);
  for (int w = 0; w < config.walkers; ++w) {
    CHECK(first.at(w, 0) == 0.0);
    for (int k = 0; k <= config.steps; ++k) CHECK(first.at(w, k) == second.at(w, k));
  }
}

TEST_CASE("walker substreams do not depend on the ensemble size") {
  WalkConfig small = fig1_config();
  small.walkers = 8;
  WalkConfig large = fig1_config();
  large.walkers = 64;
  const WalkEnsemble few = simulate_walks(small);
  const WalkEnsemble many = simulate_walks(large);
  for (int w = 0; w < small.walkers; ++w) {
    for (int k = 0; k <= small.steps; ++k) CHECK(few.at(w, k) == many.at(w, k));
  }
}

TEST_CASE("different seeds decorrelate the ensemble") {
  WalkConfig config = fig1_config();
  config.walkers = 4;
  WalkConfig other = config;
  other.seed = 43;
  const WalkEnsemble a = simulate_walks(config);
  const WalkEnsemble b = simulate_walks(other);
  CHECK(a.at(0, config.steps) != b.at(0, config.steps));
}

TEST_CASE("unbiased walk has mean endpoint near zero") {
  WalkConfig config = fig1_config();
  config.theta = 0.0;
  config.seed = 7;
  const WalkEnsemble ensemble = simulate_walks(config);
  const auto mean = ensemble_mean(ensemble);
  CHECK(std::abs(mean.back()) <= 4.0 * oracles::endpoint_stderr(config));
}

TEST_CASE("ensemble mean endpoint matches the analytic drift") {
  const WalkConfig config = fig1_config();
  const WalkEnsemble ensemble = simulate_walks(config);
  const auto mean = ensemble_mean(ensemble);
  // E[Z(steps)] = steps * theta * sqrt(delta_sq dt) = 10
  CHECK(std::abs(mean.back() - 10.0) <= 4.0 * oracles::endpoint_stderr(config));
}

TEST_CASE("fitted ensemble-mean slope matches theta sqrt(delta_sq dt)") {
  const WalkConfig config = fig1_config();
  const WalkEnsemble ensemble = simulate_walks(config);
  const double slope = linear_slope(ensemble_mean(ensemble));
  CHECK(std::abs(slope - config.analytic_slope()) <= 4.0 * oracles::slope_stderr(config));
}

TEST_CASE("property: slope recovery across random drifts") {
  oracles::TestRng rng(3);
  for (int i = 0; i < 5; ++i) {
    WalkConfig config = fig1_config();
    config.theta = rng.uniform(0.05, 0.5);
    config.delta_sq = rng.uniform(0.5, 2.0);
    config.dt = rng.uniform(0.5, 2.0);
    config.seed = 100 + static_cast<std::uint64_t>(i);
    const WalkEnsemble ensemble = simulate_walks(config);
    const double slope = linear_slope(ensemble_mean(ensemble));
    CHECK(std::abs(slope - config.analytic_slope()) <= 4.0 * oracles::slope_stderr(config));
  }
}

TEST_CASE("ensemble std recomputes from the trajectories") {
  WalkConfig config = fig1_config();
  config.walkers = 7;
  config.steps = 9;
  const WalkEnsemble ensemble = simulate_walks(config);
  const auto mean = ensemble_mean(ensemble);
  const auto spread = ensemble_std(ensemble);
  for (int k = 0; k <= config.steps; ++k) {
    double acc = 0.0;
    for (int w = 0; w < config.walkers; ++w) {
      const double d = ensemble.at(w, k) - mean[static_cast<std::size_t>(k)];
      acc += d * d;
    }
    const double expected = std::sqrt(acc / config.walkers);
    CHECK(spread[static_cast<std::size_t>(k)] == doctest::Approx(expected).epsilon(1e-14));
  }

  WalkConfig lonely = fig1_config();
  lonely.walkers = 1;
  lonely.steps = 3;
  const auto solo_spread = ensemble_std(simulate_walks(lonely));
  for (const double s : solo_spread) CHECK(s == 0.0);
}

TEST_CASE("ensemble variance grows as n delta_sq dt / 2") {
  WalkConfig config = fig1_config();
  config.theta = 0.05;
  config.seed = 11;
  const WalkEnsemble ensemble = simulate_walks(config);
  const auto spread = ensemble_std(ensemble);
  for (const int n : {25, 50, 100}) {
    const double expected_var = n * config.delta_sq * config.dt * 0.5;
    const double measured_var = spread[static_cast<std::size_t>(n)] *
                                spread[static_cast<std::size_t>(n)];
    // variance estimator stderr ~ var * sqrt(2 / walkers)
    const double tol = 4.0 * expected_var * std::sqrt(2.0 / config.walkers);
    CHECK(std::abs(measured_var - expected_var) <= tol);
  }
}

TEST_CASE("ticks: unreachable threshold yields no crossings") {
  WalkConfig config = fig1_config();
  config.walkers = 16;
  const WalkEnsemble ensemble = simulate_walks(config);
  double top = 0.0;
  for (int w = 0; w < config.walkers; ++w) {
    for (int k = 0; k <= config.steps; ++k) top = std::max(top, ensemble.at(w, k));
  }
  const auto records = detect_ticks(ensemble, top + 1.0);
  for (const auto& record : records) CHECK(!record.first_crossing_step.has_value());
}

TEST_CASE("ticks: first crossing matches a manual scan") {
  WalkConfig config = fig1_config();
  config.theta = 5.0;  // strong upward bias: crossing is quick and certain
  config.walkers = 12;
  config.steps = 50;
  const WalkEnsemble ensemble = simulate_walks(config);
  const double threshold = 10.0;
  const auto records = detect_ticks(ensemble, threshold);
  for (const auto& record : records) {
    REQUIRE(record.first_crossing_step.has_value());
    const int k = *record.first_crossing_step;
    CHECK(ensemble.at(record.walker, k) >= threshold);
    for (int j = 0; j < k; ++j) CHECK(ensemble.at(record.walker, j) < threshold);
  }
}

TEST_CASE("ticks: mean first crossing follows Wald's identity for strong bias") {
  WalkConfig config;
  config.theta = 1.0;
  config.delta_sq = 1.0;
  config.dt = 1.0;
  config.steps = 200;
  config.walkers = 2000;
  config.seed = 17;
  const double threshold = 50.0;
  const WalkEnsemble ensemble = simulate_walks(config);
  const auto records = detect_ticks(ensemble, threshold);
  double total = 0.0;
  int crossed = 0;
  for (const auto& record : records) {
    REQUIRE(record.first_crossing_step.has_value());
    total += *record.first_crossing_step;
    ++crossed;
  }
  const double mean_crossing = total / crossed;
  const double wald = threshold / config.analytic_slope();
  CHECK(std::abs(mean_crossing - wald) <= 0.10 * wald);
}

TEST_CASE("property: raising the threshold never hastens a tick") {
  WalkConfig config = fig1_config();
  config.walkers = 64;
  config.seed = 23;
  const WalkEnsemble ensemble = simulate_walks(config);
  const auto low = detect_ticks(ensemble, 2.0);
  const auto high = detect_ticks(ensemble, 4.0);
  for (int w = 0; w < config.walkers; ++w) {
    if (high[static_cast<std::size_t>(w)].first_crossing_step.has_value()) {
      REQUIRE(low[static_cast<std::size_t>(w)].first_crossing_step.has_value());
      CHECK(*low[static_cast<std::size_t>(w)].first_crossing_step <=
            *high[static_cast<std::size_t>(w)].first_crossing_step);
    }
  }
}

TEST_CASE("Wald boundaries from the direct formula") {
  const auto bounds = sprt_boundaries(0.05, 0.05);
  CHECK(bounds.upper == doctest::Approx(std::log(19.0)).epsilon(1e-15));
  CHECK(bounds.lower == doctest::Approx(-std::log(19.0)).epsilon(1e-15));

  const auto symmetric = sprt_boundaries(0.01, 0.01);
  CHECK(symmetric.upper == doctest::Approx(-symmetric.lower).epsilon(1e-12));

  const auto loose = sprt_boundaries(0.1, 0.1);
  CHECK(symmetric.upper > bounds.upper);
  CHECK(bounds.upper > loose.upper);

  CHECK_THROWS_AS(sprt_boundaries(0.0, 0.1), ParameterError);
  CHECK_THROWS_AS(sprt_boundaries(0.1, 0.5), ParameterError);
  CHECK_THROWS_AS(sprt_boundaries(-0.1, 0.1), ParameterError);
}

TEST_CASE("SPRT with strong positive drift accepts the upper hypothesis") {
  WalkConfig config;
  config.theta = 0.5;
  config.delta_sq = 1.0;
  config.dt = 1.0;
  config.steps = 500;
  config.walkers = 1;
  config.seed = 29;
  const auto bounds = sprt_boundaries(0.05, 0.05);
  int upper_count = 0;
  for (int run = 0; run < 1000; ++run) {
    const SprtResult result = sprt_run(config, bounds.upper, bounds.lower, run);
    CHECK(result.stopping_step <= config.steps);
    if (result.decision == SprtDecision::kAcceptUpper) ++upper_count;
  }
  CHECK(upper_count >= 900);  // 1 - 2 alpha_err at alpha_err = 0.05
}

TEST_CASE("SPRT with zero drift splits evenly across symmetric boundaries") {
  WalkConfig config;
  config.theta = 0.0;
  config.delta_sq = 1.0;
  config.dt = 1.0;
  config.steps = 2000;
  config.walkers = 1;
  config.seed = 31;
  const auto bounds = sprt_boundaries(0.05, 0.05);
  int upper_count = 0;
  int decided = 0;
  for (int run = 0; run < 1000; ++run) {
    const SprtResult result = sprt_run(config, bounds.upper, bounds.lower, run);
    if (result.decision == SprtDecision::kAcceptUpper) ++upper_count;
    if (result.decision != SprtDecision::kUndecided) ++decided;
  }
  CHECK(decided >= 995);  // the unbiased walk exits almost surely
  const double fraction = static_cast<double>(upper_count) / decided;
  CHECK(std::abs(fraction - 0.5) <= 4.0 * std::sqrt(0.25 / decided));
}

TEST_CASE("SPRT with unreachable boundaries stays undecided") {
  WalkConfig config;
  config.theta = 0.0;
  config.delta_sq = 1.0;
  config.dt = 1.0;
  config.steps = 50;
  config.walkers = 1;
  config.seed = 37;
  const SprtResult result = sprt_run(config, 1e9, -1e9);
  CHECK(result.decision == SprtDecision::kUndecided);
  CHECK(result.stopping_step == config.steps);
}

TEST_CASE("SPRT rejects malformed boundaries") {
  WalkConfig config = fig1_config();
  CHECK_THROWS_AS(sprt_run(config, -1.0, -2.0), ParameterError);
  CHECK_THROWS_AS(sprt_run(config, 1.0, 2.0), ParameterError);
  CHECK_THROWS_AS(sprt_run(config, 1.0, -1.0, -1), ParameterError);
}
