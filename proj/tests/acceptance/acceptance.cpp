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

// Acceptance run: one PASS/FAIL line per criterion, details indented below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "liftbid/auction.hpp"
#include "liftbid/bidder.hpp"
#include "liftbid/experiment.hpp"
#include "liftbid/io.hpp"
#include "liftbid/learners.hpp"
#include "liftbid/lift.hpp"
#include "liftbid/pacing.hpp"
#include "liftbid/stats.hpp"

using namespace liftbid;

namespace {

int g_failed = 0;

void verdict(int id, bool pass, const std::string& what, double seconds) {
  std::printf("[%s] criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id,
              what.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

template <class... Args>
void detail(const char* fmt, Args... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---------------------------------------------------------------------------
// 1. IPS unbiasedness for a fixed predictor, ERM bias.

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.world.n_users = 10000;
  const std::uint64_t seed = 1;
  const ExposureState s(1);
  const Population pop = generate_population(cfg.world, seed);
  const std::vector<double> f = reference_predictions(cfg, pop, s, seed);
  const UnbiasednessReport r =
      check_unbiasedness(cfg.world, pop, cfg.logging, f, s, 200, seed);
  const double z_ips = (r.ips_mean - r.oracle) / r.ips_se;
  const double z_erm = (r.erm_mean - r.oracle) / r.erm_se;
  const double secs = seconds_since(t0);
  detail("state %s: oracle=%.6g ips=%.6g (se %.3g, z=%+.2f) erm=%.6g (se %.3g, z=%+.2f)",
         std::string(s.label()).c_str(), r.oracle, r.ips_mean, r.ips_se, z_ips,
         r.erm_mean, r.erm_se, z_erm);
  verdict(1, r.ips_pass && r.erm_biased && secs < 120.0,
          "IPS within 3 SE of the oracle loss, ERM beyond 3 SE (R=200, 1e4 users)",
          secs);
}

// ---------------------------------------------------------------------------
// 2. IPS-trained outcome predictors beat ERM on population MSE.

void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.world.n_users = 200000;  // 1e5 logged users after the split
  const int n_seeds = 20;
  const double material_smd = 0.25;

  std::array<int, kNumStates> better{}, evaluable{}, ties{};
  std::array<double, kNumStates> smd{};
  for (int seed = 1; seed <= n_seeds; ++seed) {
    const Pipeline p = prepare_pipeline(cfg, static_cast<std::uint64_t>(seed));
    std::vector<double> q_all;
    for (const auto& u : p.population) q_all.push_back(u.quality);
    const double mq = stats::mean(q_all);
    const double sq = std::sqrt(stats::variance(q_all));
    for (int k = 0; k < kNumStates; ++k) {
      const ExposureState s(k);
      std::vector<double> q_s;
      const auto& recs = p.log.records();
      for (std::size_t i = 0; i < recs.size(); ++i) {
        if (recs[i].s_obs == s) q_s.push_back(p.train_users[i].quality);
      }
      if (!q_s.empty()) smd[k] += (stats::mean(q_s) - mq) / sq / n_seeds;
      if (!p.bank.contains(s, AdSize(0), TrainingMode::kIps)) continue;
      const auto& fi = p.bank.at(s, AdSize(0), TrainingMode::kIps);
      const auto& fe = p.bank.at(s, AdSize(0), TrainingMode::kErm);
      std::vector<double> pi, pe;
      for (const auto& u : p.population) {
        pi.push_back(fi.predict(u.x));
        pe.push_back(fe.predict(u.x));
      }
      const double li = ideal_loss_oracle(pi, s, p.population);
      const double le = ideal_loss_oracle(pe, s, p.population);
      ++evaluable[k];
      if (li == le) {
        ++ties[k];
      } else if (li < le) {
        ++better[k];
      }
    }
  }
  bool pass = true;
  int material = 0;
  for (int k = 0; k < kNumStates; ++k) {
    const ExposureState s(k);
    const int trials = evaluable[k] - ties[k];
    const double pval = trials > 0 ? stats::sign_test_p_value(better[k], trials) : 1.0;
    const bool is_evaluable = evaluable[k] == n_seeds;
    const bool is_material = std::abs(smd[k]) >= material_smd;
    std::string role = !is_evaluable ? "not evaluable (no predictor in some seeds)"
                       : is_material ? "material selection bias"
                                     : "mild selection bias";
    if (is_evaluable && is_material) {
      ++material;
      pass = pass && pval < 0.05;
    }
    detail("state %-5s smd=%+.3f IPS better %2d/%2d (ties %d) p=%.2g  %s",
           std::string(s.label()).c_str(), smd[k], better[k], trials, ties[k],
           pval, role.c_str());
  }
  pass = pass && material > 0;
  const double secs = seconds_since(t0);
  pass = pass && secs < 300.0;
  verdict(2, pass,
          "IPS population MSE below ERM on materially biased states, sign test p<0.05 over 20 seeds",
          secs);
}

// ---------------------------------------------------------------------------
// 3. Directional A/B reproduction.

void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.world.n_users = 100000;  // 5e4 evaluation users
  const int n_seeds = 10;
  int wins_ics = 0, wins_bid = 0, wins_cv = 0;
  for (int seed = 1; seed <= n_seeds; ++seed) {
    const auto s = static_cast<std::uint64_t>(seed);
    const Pipeline p = prepare_pipeline(cfg, s);
    const AbTestResult ab = run_default_ab_test(p, s);
    const MetricsReport& l = ab.treatment;
    const MetricsReport& c = ab.control;
    const bool a = l.incremental_conversions_per_spend.value_or(-1.0) >
                   c.incremental_conversions_per_spend.value_or(0.0);
    const bool b = l.mean_bid.value_or(1e300) < c.mean_bid.value_or(0.0);
    const bool cv = l.hourly_mean_bid_cv.value_or(1e300) <
                    c.hourly_mean_bid_cv.value_or(0.0);
    wins_ics += a;
    wins_bid += b;
    wins_cv += cv;
    detail("seed %2d: ic/spend %.4g vs %.4g | mean bid %.4g vs %.4g | hourly cv %.3g vs %.3g | spend share %.3f vs %.3f",
           seed, l.incremental_conversions_per_spend.value_or(NAN),
           c.incremental_conversions_per_spend.value_or(NAN),
           l.mean_bid.value_or(NAN), c.mean_bid.value_or(NAN),
           l.hourly_mean_bid_cv.value_or(NAN), c.hourly_mean_bid_cv.value_or(NAN),
           ab.treatment_run.total_spend / ab.treatment_run.budget,
           ab.control_run.total_spend / ab.control_run.budget);
  }
  const double pa = stats::sign_test_p_value(wins_ics, n_seeds);
  const double pb = stats::sign_test_p_value(wins_bid, n_seeds);
  const double pc = stats::sign_test_p_value(wins_cv, n_seeds);
  detail("(a) higher incremental conversions per spend: %d/%d p=%.3g", wins_ics, n_seeds, pa);
  detail("(b) lower mean bid: %d/%d p=%.3g", wins_bid, n_seeds, pb);
  detail("(c) lower hourly mean-bid CV: %d/%d p=%.3g", wins_cv, n_seeds, pc);
  const double secs = seconds_since(t0);
  verdict(3, pa < 0.05 && pb < 0.05 && pc < 0.05 && secs < 600.0,
          "lift arm vs performance arm over 10 seeded A/B runs", secs);
}

// ---------------------------------------------------------------------------
// 4. Pacing with grid-tuned gains.

void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentConfig cfg;
  const std::vector<std::uint64_t> tuning_seeds = {1001, 1002, 1003};
  const Pipeline tuning = prepare_pipeline(cfg, 1000);
  bool pass = true;
  for (auto strategy : {Strategy::kLift, Strategy::kPerformance}) {
    const PIDConfig tuned = tune_pid_gains(tuning, strategy,
                                           default_gain_grid(cfg.pid), tuning_seeds);
    detail("%s: tuned k_p=%g k_i=%g k_d=%g", std::string(to_string(strategy)).c_str(),
           tuned.k_p, tuned.k_i, tuned.k_d);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Pipeline p = prepare_pipeline(cfg, seed);
      const CampaignResult r = run_pipeline_campaign(p, strategy, tuned, seed);
      const double dev = std::abs(r.total_spend - r.budget) / r.budget;
      const bool ok = dev <= 0.05 && r.total_spend <= r.budget;
      pass = pass && ok;
      detail("  seed %llu: spend %.2f of %.2f, |dev| %.4f, final alpha %.3f %s",
             static_cast<unsigned long long>(seed), r.total_spend, r.budget, dev,
             r.hourly.back().alpha, ok ? "" : "<- out of tolerance");
    }
  }
  verdict(4, pass,
          "|spend - budget|/budget <= 0.05 and spend <= budget, 5 seeds, both strategies",
          seconds_since(t0));
}

// ---------------------------------------------------------------------------
// 5. Exact unit contracts.

void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string& name) {
    if (!ok) failures.push_back(name);
  };
  const int buckets[] = {0, 1, 2, 3, 4, 5, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 7, 7};
  for (int c = 0; c < 23; ++c) {
    expect(bucketize_impressions(c).index() == buckets[c], "bucketize " + std::to_string(c));
  }
  expect(bucketize_impressions(7).label() == "5-9", "bucketize 7");
  expect(bucketize_impressions(10).label() == "10-20", "bucketize 10");
  expect(previous_state(ExposureState(1)) == ExposureState(0), "previous 1");
  expect(previous_state(ExposureState(5)) == ExposureState(4), "previous 5-9");
  bool threw = false;
  try {
    previous_state(ExposureState(0));
  } catch (const std::domain_error&) {
    threw = true;
  }
  expect(threw, "previous 0 rejected");

  expect(std::abs(lift_bid(0.5, 10.0, 0.02) - 0.1) < 1e-12, "lift bid product");
  expect(std::abs(performance_bid(0.5, 10.0, 0.04) - 0.2) < 1e-12, "performance bid product");
  expect(next_state_for(0).label() == "1" && next_state_for(4).label() == "5-9" &&
             next_state_for(25).label() == "21+",
         "next state");

  std::vector<TrainingLogRecord> recs(4);
  for (int i = 0; i < 4; ++i) {
    recs[i].user_id = i;
    recs[i].x = {0.0};
    recs[i].s_obs = ExposureState(i < 2 ? 1 : 0);
  }
  recs[0].y_obs = 1;
  const TrainingLog log(recs);
  const std::vector<double> pred = {0.8, 0.4, 0.0, 0.0};
  const std::vector<double> e = {0.5, 0.5, 0.5, 0.5};
  expect(std::abs(ips_loss(pred, log, e, ExposureState(1)) - 0.1) < 1e-12, "ips arithmetic");

  PIDConfig pid;
  pid.err_normalization = ErrNormalization::kRaw;
  pid.alpha_ceiling_factor = 0.0;
  pid.k_p = 1.0;
  pid.k_i = pid.k_d = 0.0;
  PacingState s0 = init_pacing(pid, 1.0, 24);
  expect(std::abs(pid_update(s0, 0.1, 1, 0.0, pid).alpha / s0.alpha - std::exp(0.1)) < 1e-12,
         "PID e^0.1");
  pid.k_p = 0.5;
  pid.k_i = 0.1;
  pid.k_d = 0.2;
  const PacingState s1 = pid_update(s0, 0.1, 1, 0.0, pid);
  const PacingState s2 = pid_update(s1, 0.2, 1, 0.0, pid);
  expect(std::abs(s2.alpha / s1.alpha - std::exp(0.15)) < 1e-12, "PID e^0.15");

  const std::vector<double> v = {0.0, 0.3, 0.3, 0.0};
  const auto sm = smooth_lift(floor_lift(v));
  const double want[] = {0.2, 0.2, 0.15, 0.0};
  for (int i = 0; i < 4; ++i) expect(std::abs(sm[i] - want[i]) < 1e-12, "smoothing " + std::to_string(i));
  expect(floor_lift(std::vector<double>{-0.1, 0.2}) == std::vector<double>{0.0, 0.2}, "flooring");

  auto o = run_auction(2.0, 1.5, AuctionType::kSecondPrice);
  expect(o.won && o.price_paid == 1.5, "second price win");
  o = run_auction(1.0, 1.5, AuctionType::kSecondPrice);
  expect(!o.won && o.price_paid == 0.0, "loss pays nothing");
  o = run_auction(2.0, 1.5, AuctionType::kFirstPrice);
  expect(o.won && o.price_paid == 2.0, "first price win");
  expect(!run_auction(1.5, 1.5, AuctionType::kFirstPrice).won, "tie loses");

  for (const auto& f : failures) detail("mismatch: %s", f.c_str());
  verdict(5, failures.empty(),
          "bucketization, previous state, bid products, IPS arithmetic, PID closed forms, lift vectors, auctions",
          seconds_since(t0));
}

// ---------------------------------------------------------------------------
// 6. Property suites.

void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string& name) {
    if (!ok) failures.push_back(name);
  };

  ExperimentConfig cfg;
  cfg.world.n_users = 100000;
  const Pipeline p = prepare_pipeline(cfg, 42);

  // propensity simplex and clip floor on every logged record
  double worst_sum = 0.0, lowest = 1.0;
  for (const auto& r : p.log.records()) {
    const auto e = predict_propensity(p.bank.propensity[0], r.x, r.est_cvr,
                                      r.pre_campaign_impressions);
    worst_sum = std::max(worst_sum, std::abs(std::accumulate(e.begin(), e.end(), 0.0) - 1.0));
    lowest = std::min(lowest, *std::min_element(e.begin(), e.end()));
  }
  detail("propensity: max |sum-1| %.2g, min entry %.4g (floor %.4g)", worst_sum, lowest,
         p.bank.clip_floor);
  expect(worst_sum < 1e-9 && lowest >= p.bank.clip_floor - 1e-15, "propensity simplex");

  // smoothed lift nonnegative and within window bounds
  const LiftTable table = build_lift_table(p.bank, p.eval_users);
  bool lift_ok = true;
  for (const auto& row : table.rows()) {
    for (int k = 0; k < kNumLiftStates; ++k) {
      const int end = std::min(kNumLiftStates, k + 3);
      const double lo = *std::min_element(row.floored.begin() + k, row.floored.begin() + end);
      const double hi = *std::max_element(row.floored.begin() + k, row.floored.begin() + end);
      lift_ok = lift_ok && row.floored[k] >= 0.0 && row.smoothed[k] >= 0.0 &&
                row.smoothed[k] >= lo - 1e-15 && row.smoothed[k] <= hi + 1e-15;
    }
  }
  expect(lift_ok, "smoothed lift bounds");

  // weight-scaling invariance of the ridge argmin
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.05, 10.0);
  std::vector<FeatureVector> xs;
  std::vector<double> ys, ws, ws2;
  for (int i = 0; i < 2000; ++i) {
    FeatureVector x(6);
    for (double& v : x) v = n(rng);
    xs.push_back(x);
    ys.push_back(n(rng) > 1.0 ? 1.0 : 0.0);
    ws.push_back(u(rng));
    ws2.push_back(ws.back() * 123.25);
  }
  const RidgeRegressor ra = fit_weighted_ridge(xs, ys, ws, 1e-3);
  const RidgeRegressor rb = fit_weighted_ridge(xs, ys, ws2, 1e-3);
  double dist = std::abs(ra.intercept - rb.intercept);
  for (std::size_t j = 0; j < ra.coef.size(); ++j) {
    dist = std::max(dist, std::abs(ra.coef[j] - rb.coef[j]));
  }
  detail("ridge weight scaling: max parameter gap %.2g", dist);
  expect(dist < 1e-8, "ridge weight scaling");

  // A/A neutrality
  const ArmSpec a{"a", Strategy::kLift, p.cfg.campaign, p.cfg.pid};
  const ArmSpec b{"b", Strategy::kLift, p.cfg.campaign, p.cfg.pid};
  const AbTestResult aa = run_ab_test(p, a, b, 0.5, 42);
  double worst = 0.0;
  std::string worst_name;
  bool aa_ok = true;
  for (const auto& [name, ratio] : aa.ratio) {
    if (!ratio) {
      aa_ok = false;
      continue;
    }
    if (std::abs(*ratio - 1.0) > worst) {
      worst = std::abs(*ratio - 1.0);
      worst_name = name;
    }
    aa_ok = aa_ok && *ratio >= 0.95 && *ratio <= 1.05;
  }
  detail("A/A: largest deviation %.4f (%s)", worst, worst_name.c_str());
  expect(aa_ok, "A/A neutrality");

  // seeded end-to-end determinism of metrics.json
  ExperimentConfig small;
  small.world.n_users = 20000;
  auto render = [&] {
    const Pipeline q = prepare_pipeline(small, 9);
    return io::ab_test_to_json(run_default_ab_test(q, 9)).dump(2);
  };
  expect(render() == render(), "metrics.json determinism");

  for (const auto& f : failures) detail("violated: %s", f.c_str());
  verdict(6, failures.empty(),
          "propensity simplex, lift bounds, ridge weight invariance, A/A neutrality, determinism",
          seconds_since(t0));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {
      criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      verdict(static_cast<int>(i) + 1, false, std::string("threw: ") + e.what(), 0.0);
    }
  }
  std::printf("%d of %zu criteria failed\n", g_failed, criteria.size());
  return g_failed == 0 ? 0 : 1;
}
