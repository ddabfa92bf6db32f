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
#include <span>
#include <vector>

#include "liftbid/domain.hpp"
#include "liftbid/synthworld.hpp"

namespace liftbid {

/// The past, performance-based bidder whose auctions produced the training
/// log. It bids bid_scale * est_cvr on every request.
struct LoggingPolicy {
  double cvr_model_noise = 0.02;
  double bid_scale = 8.0;
  double requests_per_user_mean = 8.0;
  int horizon_hours = 24;
  /// Expected requests per user in the window before the logged campaign.
  double pre_campaign_requests_mean = 6.0;
  /// Bid a flat bid_scale regardless of est_cvr (feature-blind logging).
  bool flat_bidding = false;

  void validate() const;
};

struct TrainingLogRecord {
  std::uint64_t user_id = 0;
  FeatureVector x;
  ExposureState s_obs;
  int y_obs = 0;
  double est_cvr = 0.0;
  std::int64_t pre_campaign_impressions = 0;
  AdSize ad_size;
};

/// User-level training table: one record per user.
class TrainingLog {
 public:
  TrainingLog() = default;
  explicit TrainingLog(std::vector<TrainingLogRecord> records);

  const std::vector<TrainingLogRecord>& records() const { return records_; }
  std::size_t n() const { return records_.size(); }
  std::size_t n_state(ExposureState s) const {
    return n_per_state_[s.index()];
  }
  const std::array<std::size_t, kNumStates>& n_per_state() const {
    return n_per_state_;
  }

  /// Records of a single ad-size group, as a new log.
  TrainingLog for_ad_size(AdSize size) const;

 private:
  std::vector<TrainingLogRecord> records_;
  std::array<std::size_t, kNumStates> n_per_state_{};
};

enum class LogEventKind { kImpression, kConversion };

struct LogEvent {
  int hour = 0;
  LogEventKind kind = LogEventKind::kImpression;
};

/// Everything the log holds about one user: covariates plus the raw
/// impression/conversion timeline.
struct UserTimeline {
  std::uint64_t user_id = 0;
  FeatureVector x;
  double est_cvr = 0.0;
  std::int64_t pre_campaign_impressions = 0;
  AdSize ad_size;
  std::vector<LogEvent> events;
};

/// Collapses each timeline to one row (bucketized impression count, any
/// conversion). Throws std::invalid_argument on a repeated user_id.
TrainingLog build_user_level_table(std::span<const UserTimeline> timelines);

/// Logging policy output for one user: the timeline plus the exact
/// distribution of its exposure bucket given (x, est_cvr).
struct LoggedUser {
  UserTimeline timeline;
  std::array<double, kNumStates> propensity{};
};

/// Replays the logging policy for every user in the population.
std::vector<LoggedUser> simulate_logging(const Population& population,
                                         const LoggingPolicy& policy,
                                         const WorldConfig& world,
                                         std::uint64_t seed);

TrainingLog run_logging_campaign(const Population& population,
                                 const LoggingPolicy& policy,
                                 const WorldConfig& world, std::uint64_t seed);

/// Exact P(s_obs = s | x, est_cvr) under the logging policy: wins are a
/// Poisson-thinned request stream, so the count is Poisson.
std::array<double, kNumStates> logging_propensity(const UserProfile& user,
                                                  double est_cvr,
                                                  const LoggingPolicy& policy,
                                                  const CompetitorModel& market);

}  // namespace liftbid
