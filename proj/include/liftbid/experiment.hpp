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

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liftbid/bidder.hpp"
#include "liftbid/config.hpp"
#include "liftbid/learners.hpp"
#include "liftbid/lift.hpp"
#include "liftbid/logsim.hpp"
#include "liftbid/pacing.hpp"
#include "liftbid/synthworld.hpp"

namespace liftbid {

/// Per-user bid signal indexed by the next exposure bucket (1..7): the
/// served tau for the lift strategy, cvr_hat (state independent) for the
/// performance strategy. Aligned with the campaign's user slice.
struct BidSignals {
  Strategy strategy = Strategy::kLift;
  std::vector<std::array<double, kNumLiftStates>> per_user;
};

BidSignals lift_signals(const LiftTable& table, const Population& users);
BidSignals performance_signals(const ModelBank& bank, const Population& users);

struct UserCampaignOutcome {
  std::uint64_t user_id = 0;
  std::int64_t impressions = 0;
  ExposureState final_bucket;
  bool converted = false;
  double cost = 0.0;
  /// Oracle: curve[final bucket] - curve[0], the sum of true lift along the
  /// bucket path the campaign bought.
  double incremental_conversions = 0.0;
};

struct HourlyStats {
  int hour = 0;
  double spend = 0.0;
  double alpha = 0.0;
  /// Pacing error measured at the end of this hour; NaN when no update ran.
  double err = 0.0;
  double mean_bid = 0.0;
  double win_rate = 0.0;
  std::int64_t bids = 0;
  std::int64_t wins = 0;
};

struct BidTraceRecord {
  int hour = 0;
  std::uint64_t user_id = 0;
  Strategy strategy = Strategy::kLift;
  double bid = 0.0;
  double signal = 0.0;
  double alpha = 0.0;
};

struct CampaignResult {
  Strategy strategy = Strategy::kLift;
  double budget = 0.0;
  int horizon_hours = 0;
  double total_spend = 0.0;
  double bid_sum = 0.0;
  std::int64_t bid_count = 0;
  std::vector<UserCampaignOutcome> users;
  std::vector<HourlyStats> hourly;
  std::vector<BidTraceRecord> trace;
};

/// Hourly campaign loop. Requests arrive per user per hour as a Poisson
/// stream modulated by the daily cycle; each bid is capped at the remaining
/// budget so spend never exceeds it; alpha is updated at every interior hour
/// boundary. campaign.budget may be zero (nothing is bought); a negative
/// budget throws.
CampaignResult run_campaign(const WorldConfig& world, const Population& users,
                            const BidSignals& signals,
                            const CampaignConfig& campaign,
                            const PIDConfig& pid, std::uint64_t seed,
                            bool trace_bids = false);

/// Ratios and costs that divide by zero are std::nullopt.
struct MetricsReport {
  std::size_t users = 0;
  std::int64_t impressions = 0;
  std::size_t reached_users = 0;
  std::size_t visitors = 0;
  double spend = 0.0;
  std::optional<double> impressions_per_user;
  std::optional<double> reach_rate;
  std::optional<double> visits_per_user;
  std::optional<double> share_of_visitors;
  std::optional<double> cost_per_impression;
  std::optional<double> cost_per_reach;
  std::optional<double> cost_per_visit;
  double incremental_conversions = 0.0;
  std::optional<double> incremental_conversions_per_spend;
  /// Over every submitted bid, zero bids included.
  std::optional<double> mean_bid;
  std::optional<double> hourly_mean_bid_cv;
};

MetricsReport compute_metrics(const CampaignResult& result);

/// Coefficient of variation of hourly mean bids over hours with bids.
std::optional<double> hourly_bid_cv(const CampaignResult& result);

/// World, split and trained models shared by the campaign-level commands.
struct Pipeline {
  ExperimentConfig cfg;
  std::uint64_t seed = 0;
  Population population;
  Population train_users;
  Population eval_users;
  TrainingLog log;
  ModelBank bank;
};

Pipeline prepare_pipeline(const ExperimentConfig& cfg, std::uint64_t seed);

struct ArmSpec {
  std::string name;
  Strategy strategy = Strategy::kLift;
  CampaignConfig campaign;
  PIDConfig pid;
};

struct AbTestResult {
  std::string treatment_name;
  std::string control_name;
  MetricsReport treatment;
  MetricsReport control;
  /// treatment / control for every metric (nullopt where undefined).
  std::map<std::string, std::optional<double>> ratio;
  CampaignResult treatment_run;
  CampaignResult control_run;
};

/// Randomizes evaluation users by hash of (seed, user_id): a share of
/// split_ratio goes to the treatment arm. Each arm's budget is its
/// configured budget times its user share.
AbTestResult run_ab_test(const Pipeline& pipeline, const ArmSpec& treatment,
                         const ArmSpec& control, double split_ratio,
                         std::uint64_t seed, bool trace_bids = false);

/// Default lift-vs-performance arms built from the pipeline config.
AbTestResult run_default_ab_test(const Pipeline& pipeline, std::uint64_t seed,
                                 bool trace_bids = false);

/// Campaign on all evaluation users with the given strategy.
CampaignResult run_pipeline_campaign(const Pipeline& pipeline,
                                     Strategy strategy, const PIDConfig& pid,
                                     std::uint64_t seed, bool trace_bids = false);

/// Grid search of PID gains on the pipeline's evaluation users; needs >= 3 seeds.
PIDConfig tune_pid_gains(const Pipeline& pipeline, Strategy strategy,
                         std::span<const PIDConfig> grid,
                         std::span<const std::uint64_t> seeds);

std::vector<PIDConfig> default_gain_grid(const PIDConfig& base);

struct UnbiasednessReplicate {
  double ips = 0.0;
  double erm = 0.0;
  std::size_t n_state = 0;
};

struct UnbiasednessReport {
  ExposureState state;
  double oracle = 0.0;
  double ips_mean = 0.0;
  double ips_se = 0.0;
  double erm_mean = 0.0;
  double erm_se = 0.0;
  /// |ips_mean - oracle| < 3 ips_se.
  bool ips_pass = false;
  /// |erm_mean - oracle| > 3 erm_se: the naive estimate is detectably biased.
  bool erm_biased = false;
  std::vector<UnbiasednessReplicate> replicates;
};

/// Monte Carlo check of IPS unbiasedness for a fixed predictor, given as one
/// prediction per population user. Each replication re-runs the logging
/// policy with a fresh seed and uses the exact logging propensities.
/// Requires replications >= 100.
UnbiasednessReport check_unbiasedness(const WorldConfig& world,
                                      const Population& population,
                                      const LoggingPolicy& policy,
                                      std::span<const double> predictions,
                                      ExposureState s, int replications,
                                      std::uint64_t seed);

/// Fixed predictor for the unbiasedness check: an ERM fit for state s on a
/// logging run over an independent population, evaluated on `population`.
std::vector<double> reference_predictions(const ExperimentConfig& cfg,
                                          const Population& population,
                                          ExposureState s, std::uint64_t seed);

}  // namespace liftbid
