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
#include <stdexcept>
#include <vector>

#include "liftbid/experiment.hpp"
#include "liftbid/stats.hpp"

using namespace liftbid;

namespace {

BidSignals constant_signals(Strategy strategy, std::size_t n, double value) {
  BidSignals s;
  s.strategy = strategy;
  std::array<double, kNumLiftStates> row;
  row.fill(value);
  s.per_user.assign(n, row);
  return s;
}

ExperimentConfig small_config(std::size_t n_users) {
  ExperimentConfig cfg;
  cfg.world.n_users = n_users;
  return cfg;
}

}  // namespace

TEST_CASE("zero budget buys nothing") {
  WorldConfig world;
  world.n_users = 500;
  const Population users = generate_population(world, 1);
  CampaignConfig c;
  c.budget = 0.0;
  const auto r = run_campaign(world, users, constant_signals(Strategy::kLift, 500, 0.05),
                              c, PIDConfig{}, 3);
  const MetricsReport m = compute_metrics(r);
  CHECK(m.impressions == 0);
  CHECK(m.spend == 0.0);
  CHECK_FALSE(m.cost_per_impression.has_value());
  CHECK_FALSE(m.cost_per_reach.has_value());
  c.budget = -1.0;
  CHECK_THROWS(run_campaign(world, users, constant_signals(Strategy::kLift, 500, 0.05),
                            c, PIDConfig{}, 3));
}

TEST_CASE("free market: every positive bid wins") {
  WorldConfig world;
  world.n_users = 300;
  world.competitor_intensity = 0.0;
  const Population users = generate_population(world, 2);
  CampaignConfig c;
  c.budget = 1e9;
  const auto r = run_campaign(world, users, constant_signals(Strategy::kLift, 300, 0.01),
                              c, PIDConfig{}, 4, true);
  std::int64_t bids = 0, wins = 0;
  for (const auto& h : r.hourly) {
    bids += h.bids;
    wins += h.wins;
  }
  CHECK(bids > 0);
  CHECK(wins == bids);
  CHECK(static_cast<std::int64_t>(r.trace.size()) == bids);
  // zero signal never wins
  const auto z = run_campaign(world, users, constant_signals(Strategy::kLift, 300, 0.0),
                              c, PIDConfig{}, 4);
  CHECK(compute_metrics(z).impressions == 0);
}

TEST_CASE("spend never exceeds budget") {
  WorldConfig world;
  world.n_users = 2000;
  const Population users = generate_population(world, 3);
  for (double budget : {10.0, 300.0, 5000.0}) {
    CampaignConfig c;
    c.budget = budget;
    PIDConfig pid;
    pid.k_p = 3.0;
    const auto r = run_campaign(world, users,
                                constant_signals(Strategy::kPerformance, 2000, 0.9),
                                c, pid, 8);
    CHECK(r.total_spend <= budget);
    double hourly = 0.0, per_user = 0.0;
    for (const auto& h : r.hourly) hourly += h.spend;
    for (const auto& u : r.users) per_user += u.cost;
    CHECK(std::abs(hourly - r.total_spend) < 1e-6);
    CHECK(std::abs(per_user - r.total_spend) < 1e-6);
  }
}

TEST_CASE("metrics arithmetic") {
  CampaignResult r;
  r.budget = 10.0;
  r.horizon_hours = 24;
  UserCampaignOutcome a;
  a.user_id = 0;
  a.impressions = 3;
  a.final_bucket = ExposureState(3);
  a.converted = true;
  a.cost = 1.5;
  a.incremental_conversions = 0.04;
  UserCampaignOutcome b;
  b.user_id = 1;
  r.users = {a, b};
  r.total_spend = 1.5;
  r.bid_sum = 2.0;
  r.bid_count = 8;
  const MetricsReport m = compute_metrics(r);
  CHECK(*m.impressions_per_user == 1.5);
  CHECK(*m.reach_rate == 0.5);
  CHECK(*m.share_of_visitors == 0.5);
  CHECK(*m.visits_per_user == 0.5);
  CHECK(*m.cost_per_impression == 0.5);
  CHECK(*m.cost_per_reach == 1.5);
  CHECK(*m.cost_per_visit == 1.5);
  CHECK(*m.mean_bid == 0.25);
  CHECK(std::abs(*m.incremental_conversions_per_spend - 0.04 / 1.5) < 1e-15);
  CHECK_FALSE(m.hourly_mean_bid_cv.has_value());

  CampaignResult empty;
  empty.users = {b};
  const MetricsReport e = compute_metrics(empty);
  CHECK_FALSE(e.cost_per_impression.has_value());
  CHECK_FALSE(e.mean_bid.has_value());
  CHECK_FALSE(e.incremental_conversions_per_spend.has_value());
  CHECK(*e.reach_rate == 0.0);
}

TEST_CASE("visit draws agree with the oracle curve") {
  WorldConfig world;
  world.n_users = 20000;
  const Population users = generate_population(world, 21);
  CampaignConfig c;
  c.budget = 4000.0;
  const auto r = run_campaign(world, users,
                              constant_signals(Strategy::kPerformance, 20000, 0.3),
                              c, PIDConfig{}, 5);
  double expected = 0.0, var = 0.0, visits = 0.0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    const double p = users[i].outcome_curve[r.users[i].final_bucket.index()];
    expected += p;
    var += p * (1 - p);
    visits += r.users[i].converted;
  }
  CHECK(std::abs(visits - expected) < 3.0 * std::sqrt(var));
}

TEST_CASE("A/A test is neutral") {
  const Pipeline p = prepare_pipeline(small_config(100000), 31);
  const ArmSpec a{"a", Strategy::kLift, p.cfg.campaign, p.cfg.pid};
  const ArmSpec b{"b", Strategy::kLift, p.cfg.campaign, p.cfg.pid};
  const AbTestResult r = run_ab_test(p, a, b, 0.5, 77);
  for (const auto& [name, ratio] : r.ratio) {
    INFO(name);
    REQUIRE(ratio.has_value());
    CHECK(*ratio >= 0.95);
    CHECK(*ratio <= 1.05);
  }
}

TEST_CASE("seeded pipeline is deterministic") {
  const Pipeline p1 = prepare_pipeline(small_config(20000), 5);
  const Pipeline p2 = prepare_pipeline(small_config(20000), 5);
  const auto r1 = run_default_ab_test(p1, 5);
  const auto r2 = run_default_ab_test(p2, 5);
  CHECK(r1.treatment_run.total_spend == r2.treatment_run.total_spend);
  CHECK(r1.control_run.bid_sum == r2.control_run.bid_sum);
  for (const auto& [name, v] : r1.ratio) CHECK(v == r2.ratio.at(name));
}

TEST_CASE("gain tuning") {
  ExperimentConfig cfg = small_config(20000);
  // default rate far too low: without feedback the campaign under-delivers
  cfg.pid.default_alpha = 0.02;
  cfg.pid.alpha_ceiling_factor = 0.0;
  const Pipeline p = prepare_pipeline(cfg, 8);
  const std::vector<std::uint64_t> seeds = {1, 2, 3};
  PIDConfig zero = cfg.pid;
  zero.k_p = zero.k_i = zero.k_d = 0.0;
  PIDConfig tuned = cfg.pid;
  tuned.k_p = 0.8;
  tuned.k_i = 0.05;
  const std::vector<PIDConfig> one = {tuned};
  CHECK(tune_pid_gains(p, Strategy::kPerformance, one, seeds).k_p == 0.8);
  const std::vector<PIDConfig> grid = {zero, tuned};
  const PIDConfig best = tune_pid_gains(p, Strategy::kPerformance, grid, seeds);
  CHECK(best.k_p == 0.8);
  CHECK(tune_pid_gains(p, Strategy::kPerformance, grid, seeds).k_i == best.k_i);
  CHECK(default_gain_grid(cfg.pid).size() == 48);
}

TEST_CASE("unbiasedness check: uniform logging") {
  WorldConfig world;
  world.n_users = 3000;
  world.competitor_feature_coupling = 0.0;
  world.activity_dispersion = 0.0;
  const Population pop = generate_population(world, 13);
  LoggingPolicy flat;
  flat.flat_bidding = true;
  flat.bid_scale = 1.0;
  std::vector<double> pred;
  for (const auto& u : pop) pred.push_back(0.1 + 0.2 * (u.quality > 0));
  const auto rep = check_unbiasedness(world, pop, flat, pred, ExposureState(1), 100, 3);
  CHECK(rep.ips_pass);
  CHECK_FALSE(rep.erm_biased);
  CHECK(rep.replicates.size() == 100);
  CHECK_THROWS(check_unbiasedness(world, pop, flat, pred, ExposureState(1), 50, 3));
}

TEST_CASE("unbiasedness check: standard error scaling") {
  WorldConfig world;
  world.n_users = 2000;
  const Population pop = generate_population(world, 14);
  const std::vector<double> pred(pop.size(), 0.5);
  const LoggingPolicy policy;
  const auto r100 = check_unbiasedness(world, pop, policy, pred, ExposureState(1), 100, 1);
  const auto r200 = check_unbiasedness(world, pop, policy, pred, ExposureState(1), 200, 2);
  const double ratio = r200.ips_se / r100.ips_se;
  CHECK(ratio > 0.55);
  CHECK(ratio < 0.9);
}

TEST_CASE("IPS is unbiased for a constant predictor") {
  WorldConfig world;
  world.n_users = 5000;
  const Population pop = generate_population(world, 15);
  const std::vector<double> half(pop.size(), 0.5);
  const auto rep =
      check_unbiasedness(world, pop, LoggingPolicy{}, half, ExposureState(1), 200, 4);
  CHECK(std::abs(rep.oracle - 0.25) < 1e-12);
  CHECK(rep.ips_pass);
}
