// Copyright 2026 The liftbid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "liftbid/pacing.hpp"

using namespace liftbid;

namespace {

PIDConfig raw_gains(double kp, double ki, double kd) {
  PIDConfig c;
  c.k_p = kp;
  c.k_i = ki;
  c.k_d = kd;
  c.err_normalization = ErrNormalization::kRaw;
  c.alpha_ceiling_factor = 0.0;
  return c;
}

}  // namespace

TEST_CASE("init sets the default cost rate") {
  PIDConfig c;
  const PacingState s = init_pacing(c, 2400.0, 24);
  CHECK(s.alpha == c.default_alpha);
  CHECK(s.per_hour_budget == 100.0);
  CHECK(s.err_history.empty());
  c.default_alpha = 1.0;
  CHECK_THROWS(init_pacing(c, 1.0, 24));
}

TEST_CASE("zero error leaves alpha unchanged") {
  const PIDConfig c = raw_gains(0.7, 0.2, 0.3);
  PacingState s = init_pacing(c, 240.0, 24);
  for (int h = 0; h < 5; ++h) {
    s = pid_update(s, 200.0, 20, 10.0, c);
    CHECK(s.alpha == c.default_alpha);
  }
  CHECK(s.err_history.size() == 5);
  CHECK(s.hour == 5);
}

TEST_CASE("proportional closed form") {
  const PIDConfig c = raw_gains(1.0, 0.0, 0.0);
  const PacingState s0 = init_pacing(c, 1.0, 24);
  const PacingState s1 = pid_update(s0, 0.1, 1, 0.0, c);
  CHECK(s1.err_history.back() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(std::abs(s1.alpha / s0.alpha - std::exp(0.1)) < 1e-12);
  CHECK(std::abs(s1.alpha / s0.alpha - 1.10517) < 1e-5);
}

TEST_CASE("two-step PID closed form") {
  const PIDConfig c = raw_gains(0.5, 0.1, 0.2);
  const PacingState s0 = init_pacing(c, 1.0, 24);
  const PacingState s1 = pid_update(s0, 0.1, 1, 0.0, c);
  const PacingState s2 = pid_update(s1, 0.2, 1, 0.0, c);
  // first step: exp(0.1*0.5 + 0.1*0.1 + 0.1*0.2)
  CHECK(std::abs(s1.alpha / s0.alpha - std::exp(0.08)) < 1e-12);
  CHECK(std::abs(s2.alpha / s1.alpha - std::exp(0.15)) < 1e-12);
}

TEST_CASE("per-hour-budget normalization") {
  PIDConfig c = raw_gains(1.0, 0.0, 0.0);
  c.err_normalization = ErrNormalization::kPerHourBudget;
  const PacingState s0 = init_pacing(c, 2400.0, 24);
  const PacingState s1 = pid_update(s0, 2300.0, 23, 90.0, c);
  CHECK(std::abs(s1.err_history.back() - 0.1) < 1e-12);
}

TEST_CASE("positivity and monotone response") {
  const PIDConfig c = raw_gains(2.0, 0.0, 0.0);
  const PacingState s0 = init_pacing(c, 1.0, 24);
  double prev = 0.0;
  for (int i = -50; i <= 50; ++i) {
    const PacingState s1 = pid_update(s0, static_cast<double>(i), 1, 0.0, c);
    CHECK(s1.alpha > 0.0);
    CHECK(s1.alpha > prev);
    prev = s1.alpha;
  }
  // even an absurd overspend leaves a positive multiplier
  CHECK(pid_update(s0, 0.0, 1, 1e6, c).alpha > 0.0);
}

TEST_CASE("under-delivery raises alpha") {
  const PIDConfig c = raw_gains(0.3, 0.0, 0.0);
  PacingState s = init_pacing(c, 2400.0, 24);
  const PacingState next = pid_update(s, 2300.0, 23, 40.0, c);
  CHECK(next.alpha > s.alpha);
  const PacingState over = pid_update(s, 2300.0, 23, 400.0, c);
  CHECK(over.alpha < s.alpha);
}

TEST_CASE("alpha ceiling guard") {
  PIDConfig c = raw_gains(5.0, 0.0, 0.0);
  c.alpha_ceiling_factor = 10.0;
  PacingState s = init_pacing(c, 1.0, 24);
  s = pid_update(s, 100.0, 1, 0.0, c);
  CHECK(s.alpha == doctest::Approx(10.0 * c.default_alpha));
}

TEST_CASE("finished campaign rejects updates") {
  const PIDConfig c = raw_gains(1.0, 0.0, 0.0);
  CHECK_THROWS_AS(pid_update(init_pacing(c, 1.0, 1), 0.0, 0, 0.0, c),
                  std::invalid_argument);
}

TEST_CASE("tune_gains picks the lowest mean deviation") {
  PIDConfig base;
  const std::vector<PIDConfig> one = {base};
  const std::vector<std::uint64_t> seeds = {1, 2, 3};
  auto dev = [](const PIDConfig& c, std::uint64_t seed) {
    return std::abs(c.k_p - 0.4) + 0.001 * static_cast<double>(seed);
  };
  CHECK(tune_gains(one, seeds, dev).k_p == base.k_p);

  const std::vector<double> kp = {0.1, 0.4, 0.8};
  const std::vector<double> ki = {0.0, 0.1};
  const std::vector<double> kd = {0.0};
  const auto grid = make_gain_grid(base, kp, ki, kd);
  CHECK(grid.size() == 6);
  const PIDConfig best = tune_gains(grid, seeds, dev);
  CHECK(best.k_p == 0.4);
  CHECK(best.k_i == 0.0);  // first on ties
  CHECK(tune_gains(grid, seeds, dev).k_p == best.k_p);
  CHECK_THROWS(tune_gains(std::vector<PIDConfig>{}, seeds, dev));
}
