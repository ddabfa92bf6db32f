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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

#include "liftbid/lift.hpp"
#include "liftbid/synthworld.hpp"

using namespace liftbid;

namespace {

// Bank of constant predictors: f^k(x) = levels[k] for both training modes.
ModelBank constant_bank(const std::array<double, kNumStates>& levels) {
  ModelBank bank;
  for (int k = 0; k < kNumStates; ++k) {
    for (auto mode : {TrainingMode::kErm, TrainingMode::kIps}) {
      RidgeRegressor r;
      r.coef = {0.0, 0.0};
      r.intercept = levels[k];
      bank.outcome.emplace(ModelBank::Key{k, 0, mode},
                           OutcomePredictor{ExposureState(k), AdSize(0), mode, r});
    }
  }
  return bank;
}

}  // namespace

TEST_CASE("raw lift is a difference of adjacent predictors") {
  const ModelBank bank = constant_bank({0.02, 0.05, 0.04, 0.04, 0.1, 0.1, 0.1, 0.1});
  const std::vector<double> x = {0.3, -1.0};
  CHECK(std::abs(predict_raw_lift(bank, x, ExposureState(1), AdSize(0)) - 0.03) < 1e-12);
  CHECK(std::abs(predict_raw_lift(bank, x, ExposureState(2), AdSize(0)) + 0.01) < 1e-12);
  CHECK(predict_raw_lift(bank, x, ExposureState(3), AdSize(0)) == 0.0);
  CHECK_THROWS_AS(predict_raw_lift(bank, x, ExposureState(0), AdSize(0)),
                  std::domain_error);
}

TEST_CASE("flooring") {
  CHECK(floor_lift(std::vector<double>{0.0, 0.0}) == std::vector<double>{0.0, 0.0});
  const std::vector<double> pos = {0.1, 0.2, 0.3};
  CHECK(floor_lift(pos) == pos);
  CHECK(floor_lift(std::vector<double>{-0.2, 0.1}) == std::vector<double>{0.0, 0.1});
}

TEST_CASE("smoothing window") {
  const std::vector<double> v = {0.0, 0.3, 0.3, 0.0};
  const auto s = smooth_lift(v);
  const double expected[] = {0.2, 0.2, 0.15, 0.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(s[i] - expected[i]) < 1e-12);

  const std::vector<double> seven = {0.0, 0.3, 0.3, 0.0, 0.0, 0.0, 0.0};
  CHECK(std::abs(smooth_lift(seven)[0] - 0.2) < 1e-12);
  const std::vector<double> c(7, 0.04);
  for (double x : smooth_lift(c)) CHECK(std::abs(x - 0.04) < 1e-15);
  const std::vector<double> tail = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  CHECK(smooth_lift(tail)[6] == 0.7);
}

TEST_CASE("smoothed lift is nonnegative and bounded by its window") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0.0, 0.05);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> raw(kNumLiftStates);
    for (double& v : raw) v = n(rng);
    const auto fl = floor_lift(raw);
    const auto sm = smooth_lift(fl);
    for (std::size_t i = 0; i < sm.size(); ++i) {
      CHECK(fl[i] >= 0.0);
      CHECK(sm[i] >= 0.0);
      const std::size_t end = std::min(sm.size(), i + 3);
      const double lo = *std::min_element(fl.begin() + i, fl.begin() + end);
      const double hi = *std::max_element(fl.begin() + i, fl.begin() + end);
      CHECK(sm[i] >= lo - 1e-15);
      CHECK(sm[i] <= hi + 1e-15);
    }
  }
}

TEST_CASE("equal constant predictors give a zero table") {
  const ModelBank bank = constant_bank({0.07, 0.07, 0.07, 0.07, 0.07, 0.07, 0.07, 0.07});
  WorldConfig cfg;
  cfg.n_users = 50;
  cfg.feature_dim = 2;
  const Population users = generate_population(cfg, 1);
  const LiftTable table = build_lift_table(bank, users);
  CHECK(table.rows().size() == 50);
  for (const auto& row : table.rows()) {
    for (int k = 0; k < kNumLiftStates; ++k) CHECK(row.smoothed[k] == 0.0);
  }
}

TEST_CASE("table rows are smooth(floor(raw))") {
  const ModelBank bank = constant_bank({0.02, 0.05, 0.04, 0.08, 0.08, 0.07, 0.12, 0.12});
  WorldConfig cfg;
  cfg.n_users = 5;
  cfg.feature_dim = 2;
  const LiftTable table = build_lift_table(bank, generate_population(cfg, 3));
  for (const auto& row : table.rows()) {
    const auto fl = floor_lift(row.raw);
    const auto sm = smooth_lift(fl);
    for (int k = 0; k < kNumLiftStates; ++k) {
      CHECK(row.floored[k] == fl[k]);
      CHECK(row.smoothed[k] == sm[k]);
    }
    CHECK(table.tau(row.key, ExposureState(1)) == row.smoothed[0]);
  }
  CHECK_THROWS(table.tau(0, ExposureState(0)));
  CHECK_THROWS(table.at(99));
  CHECK_THROWS(LiftTable({LiftRow{}, LiftRow{}}));
}

TEST_CASE("true smoothed lift uses the same transform") {
  WorldConfig cfg;
  cfg.n_users = 20;
  for (const auto& u : generate_population(cfg, 5)) {
    std::vector<double> raw;
    for (int k = 1; k < kNumStates; ++k) raw.push_back(true_lift(u, ExposureState(k)));
    const auto want = smooth_lift(floor_lift(raw));
    const auto got = true_smoothed_lift(u);
    for (int k = 0; k < kNumLiftStates; ++k) CHECK(got[k] == want[k]);
  }
}
