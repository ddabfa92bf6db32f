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

#include "liftbid/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "liftbid/auction.hpp"
#include "liftbid/rng.hpp"
#include "liftbid/stats.hpp"

namespace liftbid {

BidSignals lift_signals(const LiftTable& table, const Population& users) {
  BidSignals out;
  out.strategy = Strategy::kLift;
  out.per_user.reserve(users.size());
  for (const auto& u : users) out.per_user.push_back(table.at(u.user_id).smoothed);
  return out;
}

BidSignals performance_signals(const ModelBank& bank, const Population& users) {
  BidSignals out;
  out.strategy = Strategy::kPerformance;
  out.per_user.reserve(users.size());
  for (const auto& u : users) {
    std::array<double, kNumLiftStates> row;
    row.fill(bank.impressed_cvr.at(u.ad_size.id()).predict(u.x));
    out.per_user.push_back(row);
  }
  return out;
}

CampaignResult run_campaign(const WorldConfig& world, const Population& users,
                            const BidSignals& signals,
                            const CampaignConfig& campaign,
                            const PIDConfig& pid, std::uint64_t seed,
                            bool trace_bids) {
  if (campaign.budget < 0.0) throw std::invalid_argument("budget must be >= 0");
  {
    CampaignConfig check = campaign;
    check.budget = 1.0;
    check.validate();
  }
  if (signals.per_user.size() != users.size()) {
    throw std::invalid_argument("one bid signal row per campaign user");
  }
  const int horizon = campaign.horizon_hours;
  const double budget = campaign.budget;
  const std::size_t n = users.size();
  const CompetitorModel market(world);

  CampaignResult result;
  result.strategy = signals.strategy;
  result.budget = budget;
  result.horizon_hours = horizon;

  PacingState pacing = init_pacing(pid, budget, horizon);
  std::vector<std::int64_t> counts(n, 0);
  std::vector<double> cost(n, 0.0);
  std::vector<double> base_rate(n);
  for (std::size_t i = 0; i < n; ++i) {
    base_rate[i] = campaign.requests_per_user /
                   static_cast<double>(horizon) * users[i].activity;
  }

  double spent = 0.0;
  bool exhausted = !(budget > 0.0);
  std::vector<std::uint32_t> queue;
  for (int h = 0; h < horizon; ++h) {
    const double alpha = pacing.alpha;
    Rng rng = make_rng(seed, "campaign-hour", static_cast<std::uint64_t>(h));
    const double volume = 1.0 + world.hourly_amplitude * hourly_cycle(h);
    queue.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const int k = std::poisson_distribution<int>(base_rate[i] * volume)(rng);
      queue.insert(queue.end(), static_cast<std::size_t>(k),
                   static_cast<std::uint32_t>(i));
    }
    std::shuffle(queue.begin(), queue.end(), rng);

    HourlyStats stats;
    stats.hour = h;
    stats.alpha = alpha;
    double bid_sum = 0.0;
    for (const std::uint32_t i : queue) {
      if (exhausted) break;
      const ExposureState next = next_state_for(counts[i]);
      const double signal = signals.per_user[i][next.index() - 1];
      const double remaining = budget - spent;
      const double bid = std::min(
          decide_bid(signals.strategy, alpha, campaign.conversion_value, signal,
                     next)
              .bid_price,
          remaining);
      const double competitor = market.sample(users[i], h, rng);
      const AuctionOutcome outcome =
          run_auction(bid, competitor, campaign.auction_type);
      ++stats.bids;
      bid_sum += bid;
      if (trace_bids) {
        result.trace.push_back(
            {h, users[i].user_id, signals.strategy, bid, signal, alpha});
      }
      if (!outcome.won) continue;
      if (spent + outcome.price_paid > budget) {
        exhausted = true;
        break;
      }
      spent += outcome.price_paid;
      stats.spend += outcome.price_paid;
      cost[i] += outcome.price_paid;
      ++counts[i];
      ++stats.wins;
      if (!(spent < budget)) exhausted = true;
    }
    stats.mean_bid = stats.bids > 0 ? bid_sum / static_cast<double>(stats.bids)
                                    : 0.0;
    stats.win_rate = stats.bids > 0 ? static_cast<double>(stats.wins) /
                                          static_cast<double>(stats.bids)
                                    : 0.0;
    result.bid_sum += bid_sum;
    result.bid_count += stats.bids;
    stats.err = std::numeric_limits<double>::quiet_NaN();
    if (h + 1 < horizon && budget > 0.0) {
      pacing = pid_update(pacing, budget - spent, horizon - h - 1, stats.spend,
                          pid);
      stats.err = pacing.err_history.back();
    }
    result.hourly.push_back(stats);
  }

  for (const auto& hs : result.hourly) result.total_spend += hs.spend;
  result.users.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const UserProfile& u = users[i];
    UserCampaignOutcome o;
    o.user_id = u.user_id;
    o.impressions = counts[i];
    o.final_bucket = bucketize_impressions(counts[i]);
    Rng rng = make_rng(seed, "conversion", u.user_id);
    o.converted = sample_outcome(u, o.final_bucket, rng);
    o.cost = cost[i];
    o.incremental_conversions =
        u.outcome_curve[o.final_bucket.index()] - u.outcome_curve[0];
    result.users.push_back(o);
  }
  return result;
}

std::optional<double> hourly_bid_cv(const CampaignResult& result) {
  std::vector<double> means;
  for (const auto& h : result.hourly) {
    if (h.bids > 0) means.push_back(h.mean_bid);
  }
  if (means.size() < 2) return std::nullopt;
  if (stats::mean(means) == 0.0) return std::nullopt;
  return stats::coefficient_of_variation(means);
}

MetricsReport compute_metrics(const CampaignResult& result) {
  MetricsReport m;
  m.users = result.users.size();
  m.spend = result.total_spend;
  for (const auto& u : result.users) {
    m.impressions += u.impressions;
    if (u.impressions > 0) ++m.reached_users;
    if (u.converted) ++m.visitors;
    m.incremental_conversions += u.incremental_conversions;
  }
  auto ratio = [](double num, double den) -> std::optional<double> {
    if (den == 0.0) return std::nullopt;
    return num / den;
  };
  const double users = static_cast<double>(m.users);
  m.impressions_per_user = ratio(static_cast<double>(m.impressions), users);
  m.reach_rate = ratio(static_cast<double>(m.reached_users), users);
  m.visits_per_user = ratio(static_cast<double>(m.visitors), users);
  m.share_of_visitors = ratio(static_cast<double>(m.visitors), users);
  m.cost_per_impression = ratio(m.spend, static_cast<double>(m.impressions));
  m.cost_per_reach = ratio(m.spend, static_cast<double>(m.reached_users));
  m.cost_per_visit = ratio(m.spend, static_cast<double>(m.visitors));
  m.incremental_conversions_per_spend =
      ratio(m.incremental_conversions, m.spend);
  m.mean_bid = ratio(result.bid_sum, static_cast<double>(result.bid_count));
  m.hourly_mean_bid_cv = hourly_bid_cv(result);
  return m;
}

Pipeline prepare_pipeline(const ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Pipeline p;
  p.cfg = cfg;
  p.seed = seed;
  p.population = generate_population(cfg.world, seed);
  if (cfg.disjoint_train_eval) {
    for (const auto& u : p.population) {
      if (hash_uniform(seed, "train-split", u.user_id) < 0.5) {
        p.train_users.push_back(u);
      } else {
        p.eval_users.push_back(u);
      }
    }
  } else {
    p.train_users = p.population;
    p.eval_users = p.population;
  }
  if (p.train_users.empty() || p.eval_users.empty()) {
    throw std::invalid_argument("population too small to split");
  }
  p.log = run_logging_campaign(p.train_users, cfg.logging, cfg.world,
                               derive_seed(seed, "logging-run"));
  p.bank = train_model_bank(p.log, cfg.learner, cfg.world.ad_size_groups,
                            cfg.clip_floor);
  return p;
}

namespace {

BidSignals signals_for(const Pipeline& pipeline, Strategy strategy,
                       const Population& users) {
  if (strategy == Strategy::kLift) {
    return lift_signals(build_lift_table(pipeline.bank, users,
                                         pipeline.cfg.lift_training_mode),
                        users);
  }
  return performance_signals(pipeline.bank, users);
}

void put_ratio(std::map<std::string, std::optional<double>>& out,
               const std::string& key, std::optional<double> a,
               std::optional<double> b) {
  if (a && b && *b != 0.0) {
    out[key] = *a / *b;
  } else {
    out[key] = std::nullopt;
  }
}

}  // namespace

AbTestResult run_ab_test(const Pipeline& pipeline, const ArmSpec& treatment,
                         const ArmSpec& control, double split_ratio,
                         std::uint64_t seed, bool trace_bids) {
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
    throw std::invalid_argument("split_ratio must lie in (0, 1)");
  }
  Population treat_users, control_users;
  for (const auto& u : pipeline.eval_users) {
    if (hash_uniform(seed, "ab-arm", u.user_id) < split_ratio) {
      treat_users.push_back(u);
    } else {
      control_users.push_back(u);
    }
  }
  const double n_eval = static_cast<double>(pipeline.eval_users.size());

  auto run_arm = [&](const ArmSpec& arm, const Population& users,
                     std::uint64_t arm_index) {
    CampaignConfig campaign = arm.campaign;
    campaign.budget *= static_cast<double>(users.size()) / n_eval;
    return run_campaign(pipeline.cfg.world, users,
                        signals_for(pipeline, arm.strategy, users), campaign,
                        arm.pid, derive_seed(seed, "ab-campaign", arm_index),
                        trace_bids);
  };

  AbTestResult out;
  out.treatment_name = treatment.name;
  out.control_name = control.name;
  out.treatment_run = run_arm(treatment, treat_users, 0);
  out.control_run = run_arm(control, control_users, 1);
  out.treatment = compute_metrics(out.treatment_run);
  out.control = compute_metrics(out.control_run);

  const MetricsReport& t = out.treatment;
  const MetricsReport& c = out.control;
  put_ratio(out.ratio, "impressions_per_user", t.impressions_per_user,
            c.impressions_per_user);
  put_ratio(out.ratio, "reach_rate", t.reach_rate, c.reach_rate);
  put_ratio(out.ratio, "visits_per_user", t.visits_per_user, c.visits_per_user);
  put_ratio(out.ratio, "share_of_visitors", t.share_of_visitors,
            c.share_of_visitors);
  put_ratio(out.ratio, "cost_per_impression", t.cost_per_impression,
            c.cost_per_impression);
  put_ratio(out.ratio, "cost_per_reach", t.cost_per_reach, c.cost_per_reach);
  put_ratio(out.ratio, "cost_per_visit", t.cost_per_visit, c.cost_per_visit);
  put_ratio(out.ratio, "incremental_conversions_per_spend",
            t.incremental_conversions_per_spend,
            c.incremental_conversions_per_spend);
  put_ratio(out.ratio, "mean_bid", t.mean_bid, c.mean_bid);
  put_ratio(out.ratio, "hourly_mean_bid_cv", t.hourly_mean_bid_cv,
            c.hourly_mean_bid_cv);
  return out;
}

AbTestResult run_default_ab_test(const Pipeline& pipeline, std::uint64_t seed,
                                 bool trace_bids) {
  const ArmSpec lift{"lift", Strategy::kLift, pipeline.cfg.campaign,
                     pipeline.cfg.pid};
  const ArmSpec performance{"performance", Strategy::kPerformance,
                            pipeline.cfg.campaign, pipeline.cfg.pid};
  return run_ab_test(pipeline, lift, performance, pipeline.cfg.split_ratio,
                     seed, trace_bids);
}

CampaignResult run_pipeline_campaign(const Pipeline& pipeline,
                                     Strategy strategy, const PIDConfig& pid,
                                     std::uint64_t seed, bool trace_bids) {
  return run_campaign(pipeline.cfg.world, pipeline.eval_users,
                      signals_for(pipeline, strategy, pipeline.eval_users),
                      pipeline.cfg.campaign, pid, seed, trace_bids);
}

PIDConfig tune_pid_gains(const Pipeline& pipeline, Strategy strategy,
                         std::span<const PIDConfig> grid,
                         std::span<const std::uint64_t> seeds) {
  if (seeds.size() < 3) {
    throw std::invalid_argument("gain tuning needs at least 3 seeds");
  }
  const BidSignals signals =
      signals_for(pipeline, strategy, pipeline.eval_users);
  const CampaignConfig& campaign = pipeline.cfg.campaign;
  return tune_gains(grid, seeds, [&](const PIDConfig& pid, std::uint64_t seed) {
    const CampaignResult r = run_campaign(pipeline.cfg.world,
                                          pipeline.eval_users, signals,
                                          campaign, pid, seed);
    return std::abs(r.total_spend - campaign.budget) / campaign.budget;
  });
}

std::vector<PIDConfig> default_gain_grid(const PIDConfig& base) {
  constexpr std::array<double, 4> kP = {0.2, 0.4, 0.8, 1.2};
  constexpr std::array<double, 4> kI = {0.0, 0.02, 0.05, 0.1};
  constexpr std::array<double, 3> kD = {0.0, 0.1, 0.3};
  return make_gain_grid(base, kP, kI, kD);
}

UnbiasednessReport check_unbiasedness(const WorldConfig& world,
                                      const Population& population,
                                      const LoggingPolicy& policy,
                                      std::span<const double> predictions,
                                      ExposureState s, int replications,
                                      std::uint64_t seed) {
  if (replications < 100) {
    throw std::invalid_argument("unbiasedness check needs >= 100 replications");
  }
  if (predictions.size() != population.size()) {
    throw std::invalid_argument("one prediction per population user");
  }
  UnbiasednessReport report;
  report.state = s;
  report.oracle = ideal_loss_oracle(predictions, s, population);

  std::vector<double> ips, erm;
  for (int r = 0; r < replications; ++r) {
    const auto logged = simulate_logging(
        population, policy, world,
        derive_seed(seed, "replication", static_cast<std::uint64_t>(r)));
    std::vector<UserTimeline> timelines;
    timelines.reserve(logged.size());
    for (const auto& l : logged) timelines.push_back(l.timeline);
    const TrainingLog log = build_user_level_table(timelines);

    std::vector<double> own_propensity(log.n());
    for (std::size_t i = 0; i < log.n(); ++i) {
      own_propensity[i] =
          logged[i].propensity[log.records()[i].s_obs.index()];
    }
    UnbiasednessReplicate rep;
    rep.n_state = log.n_state(s);
    rep.ips = ips_loss(predictions, log, own_propensity, s);
    rep.erm = rep.n_state > 0 ? erm_loss(predictions, log, s)
                              : std::numeric_limits<double>::quiet_NaN();
    ips.push_back(rep.ips);
    if (rep.n_state > 0) erm.push_back(rep.erm);
    report.replicates.push_back(rep);
  }
  report.ips_mean = stats::mean(ips);
  report.ips_se = stats::standard_error(ips);
  report.ips_pass =
      std::abs(report.ips_mean - report.oracle) < 3.0 * report.ips_se;
  if (!erm.empty()) {
    report.erm_mean = stats::mean(erm);
    report.erm_se = stats::standard_error(erm);
    report.erm_biased =
        std::abs(report.erm_mean - report.oracle) > 3.0 * report.erm_se;
  }
  return report;
}

std::vector<double> reference_predictions(const ExperimentConfig& cfg,
                                          const Population& population,
                                          ExposureState s, std::uint64_t seed) {
  WorldConfig world = cfg.world;
  world.n_users = population.size();
  const Population other =
      generate_population(world, derive_seed(seed, "reference-world"));
  const TrainingLog log = run_logging_campaign(
      other, cfg.logging, world, derive_seed(seed, "reference-log"));
  const OutcomePredictor f =
      fit_outcome(log, s, AdSize(0), TrainingMode::kErm, nullptr, cfg.learner);
  std::vector<double> out;
  out.reserve(population.size());
  for (const auto& u : population) out.push_back(f.predict(u.x));
  return out;
}

}  // namespace liftbid
