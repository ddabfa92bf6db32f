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

#include "liftbid/logsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "liftbid/auction.hpp"

namespace liftbid {

void LoggingPolicy::validate() const {
  if (!(cvr_model_noise >= 0.0)) {
    throw std::invalid_argument("cvr_model_noise must be >= 0");
  }
  if (!(bid_scale >= 0.0)) throw std::invalid_argument("bid_scale must be >= 0");
  if (!(requests_per_user_mean > 0.0)) {
    throw std::invalid_argument("requests_per_user_mean must be > 0");
  }
  if (horizon_hours < 1) {
    throw std::invalid_argument("logging horizon_hours must be >= 1");
  }
  if (!(pre_campaign_requests_mean >= 0.0)) {
    throw std::invalid_argument("pre_campaign_requests_mean must be >= 0");
  }
}

TrainingLog::TrainingLog(std::vector<TrainingLogRecord> records)
    : records_(std::move(records)) {
  for (const auto& r : records_) ++n_per_state_[r.s_obs.index()];
}

TrainingLog TrainingLog::for_ad_size(AdSize size) const {
  std::vector<TrainingLogRecord> subset;
  for (const auto& r : records_) {
    if (r.ad_size == size) subset.push_back(r);
  }
  return TrainingLog(std::move(subset));
}

TrainingLog build_user_level_table(std::span<const UserTimeline> timelines) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(timelines.size());
  std::vector<TrainingLogRecord> records;
  records.reserve(timelines.size());
  for (const auto& t : timelines) {
    if (!seen.insert(t.user_id).second) {
      throw std::invalid_argument("duplicate user row for user_id " +
                                  std::to_string(t.user_id));
    }
    std::int64_t impressions = 0;
    bool converted = false;
    for (const auto& e : t.events) {
      if (e.kind == LogEventKind::kImpression) ++impressions;
      if (e.kind == LogEventKind::kConversion) converted = true;
    }
    TrainingLogRecord r;
    r.user_id = t.user_id;
    r.x = t.x;
    r.s_obs = bucketize_impressions(impressions);
    r.y_obs = converted ? 1 : 0;
    r.est_cvr = t.est_cvr;
    r.pre_campaign_impressions = t.pre_campaign_impressions;
    r.ad_size = t.ad_size;
    records.push_back(std::move(r));
  }
  return TrainingLog(std::move(records));
}

namespace {

double logging_bid(const LoggingPolicy& policy, double est_cvr) {
  return policy.flat_bidding ? policy.bid_scale : policy.bid_scale * est_cvr;
}

double mean_win_probability(double bid, const UserProfile& user,
                            const LoggingPolicy& policy,
                            const CompetitorModel& market) {
  double total = 0.0;
  for (int h = 0; h < policy.horizon_hours; ++h) {
    total += market.win_probability(bid, user, h);
  }
  return total / static_cast<double>(policy.horizon_hours);
}

}  // namespace

std::array<double, kNumStates> logging_propensity(const UserProfile& user,
                                                  double est_cvr,
                                                  const LoggingPolicy& policy,
                                                  const CompetitorModel& market) {
  const double bid = logging_bid(policy, est_cvr);
  const double mu = policy.requests_per_user_mean * user.activity *
                    mean_win_probability(bid, user, policy, market);
  std::array<double, kNumStates> out{};
  double pmf = std::exp(-mu);
  double cumulative = 0.0;
  for (int k = 0; k <= 20; ++k) {
    if (k > 0) pmf *= mu / static_cast<double>(k);
    out[bucketize_impressions(k).index()] += pmf;
    cumulative += pmf;
  }
  out[kNumStates - 1] = std::max(0.0, 1.0 - cumulative);
  return out;
}

std::vector<LoggedUser> simulate_logging(const Population& population,
                                         const LoggingPolicy& policy,
                                         const WorldConfig& world,
                                         std::uint64_t seed) {
  if (population.empty()) throw std::invalid_argument("empty population");
  policy.validate();
  const CompetitorModel market(world);
  std::vector<LoggedUser> out;
  out.reserve(population.size());
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_int_distribution<int> hour_of(0, policy.horizon_hours - 1);

  for (const auto& user : population) {
    Rng rng = make_rng(seed, "logging", user.user_id);
    LoggedUser logged;
    UserTimeline& t = logged.timeline;
    t.user_id = user.user_id;
    t.x = user.x;
    t.ad_size = user.ad_size;
    t.est_cvr = std::clamp(
        user.outcome_curve[1] + policy.cvr_model_noise * noise(rng), 0.0, 1.0);
    const double bid = logging_bid(policy, t.est_cvr);

    const double pre_mean = policy.pre_campaign_requests_mean * user.activity;
    const int pre_requests =
        pre_mean > 0.0 ? std::poisson_distribution<int>(pre_mean)(rng) : 0;
    for (int i = 0; i < pre_requests; ++i) {
      const int hour = hour_of(rng);
      const double competitor = market.sample(user, hour, rng);
      if (run_auction(bid, competitor, AuctionType::kSecondPrice).won) {
        ++t.pre_campaign_impressions;
      }
    }

    const int requests = std::poisson_distribution<int>(
        policy.requests_per_user_mean * user.activity)(rng);
    std::int64_t wins = 0;
    for (int i = 0; i < requests; ++i) {
      const int hour = hour_of(rng);
      const double competitor = market.sample(user, hour, rng);
      if (run_auction(bid, competitor, AuctionType::kSecondPrice).won) {
        t.events.push_back({hour, LogEventKind::kImpression});
        ++wins;
      }
    }
    if (sample_outcome(user, bucketize_impressions(wins), rng)) {
      t.events.push_back({policy.horizon_hours - 1, LogEventKind::kConversion});
    }
    logged.propensity = logging_propensity(user, t.est_cvr, policy, market);
    out.push_back(std::move(logged));
  }
  return out;
}

TrainingLog run_logging_campaign(const Population& population,
                                 const LoggingPolicy& policy,
                                 const WorldConfig& world, std::uint64_t seed) {
  const auto logged = simulate_logging(population, policy, world, seed);
  std::vector<UserTimeline> timelines;
  timelines.reserve(logged.size());
  for (const auto& l : logged) timelines.push_back(l.timeline);
  return build_user_level_table(timelines);
}

}  // namespace liftbid
