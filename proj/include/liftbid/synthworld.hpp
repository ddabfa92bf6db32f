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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "liftbid/domain.hpp"
#include "liftbid/rng.hpp"

namespace liftbid {

enum class LiftShape { kMonotone, kPeaked, kMixed };

std::string_view to_string(LiftShape shape);
LiftShape lift_shape_from_string(std::string_view name);

/// Parameters of the synthetic user universe and its bid landscape.
struct WorldConfig {
  std::size_t n_users = 100000;
  std::size_t feature_dim = 8;
  /// Scale of the highest competing bid; 0 removes competition.
  double competitor_intensity = 1.0;
  /// Log-location shift of competitor bids per unit of user quality.
  double competitor_feature_coupling = 0.8;
  std::uint64_t outcome_noise_seed = 7;
  LiftShape lift_shape = LiftShape::kMixed;

  double competitor_sigma = 1.0;
  /// Shared amplitude of the 24-hour cycle in request volume and competitor
  /// log-location.
  double hourly_amplitude = 0.3;
  /// Log-sd of the per-user request-rate multiplier.
  double activity_dispersion = 0.3;
  int ad_size_groups = 1;

  double baseline_logit = -2.2;
  double baseline_slope = 1.5;
  double baseline_noise = 0.25;
  /// Upper bound on the fraction of non-converters an ad can convert.
  double lift_scale = 0.3;
  double lift_responsiveness_slope = 1.5;
  double lift_quality_slope = 1.0;

  void validate() const;
};

struct UserProfile {
  std::uint64_t user_id = 0;
  FeatureVector x;
  /// Entry k is the true conversion probability after reaching bucket k.
  std::array<double, kNumStates> outcome_curve{};
  AdSize ad_size;
  // Derived from x; cached for the simulators.
  double quality = 0.0;
  double activity = 1.0;
};

using Population = std::vector<UserProfile>;

/// User quality index: drives the no-ad conversion rate and competitor bids.
double quality_of(const WorldConfig& cfg, std::span<const double> x);
/// Request-rate multiplier (mean one over the population).
double activity_of(const WorldConfig& cfg, std::span<const double> x);

/// Fills the derived fields of a profile whose x and user_id are set.
void attach_traits(const WorldConfig& cfg, UserProfile& user);

/// Seeded population. Identical (config, seed) gives identical output.
Population generate_population(const WorldConfig& cfg, std::uint64_t seed);

double true_lift(const UserProfile& user, ExposureState s);

bool sample_outcome(const UserProfile& user, ExposureState realized, Rng& rng);

/// sin(2*pi*h/24); shared by request volume and competitor bids.
double hourly_cycle(int hour);

/// Distribution of the highest competing bid for one request.
class CompetitorModel {
 public:
  explicit CompetitorModel(const WorldConfig& cfg);

  double log_location(const UserProfile& user, int hour) const;
  double sample(const UserProfile& user, int hour, Rng& rng) const;
  /// P(competitor < bid): the probability that a bid strictly wins.
  double win_probability(double bid, const UserProfile& user, int hour) const;

 private:
  double intensity_;
  double coupling_;
  double sigma_;
  double amplitude_;
};

/// sample_competitor_bid for callers that keep hour bounds explicit.
double sample_competitor_bid(const CompetitorModel& model,
                             const UserProfile& user, int hour, int horizon,
                             Rng& rng);

/// Exact expected squared loss of a predictor at state s over the whole
/// population: mean of p(1-p) + (p - f(x))^2 with p = curve[s].
double ideal_loss_oracle(std::span<const double> predictions, ExposureState s,
                         const Population& population);

double ideal_loss_oracle(
    const std::function<double(std::span<const double>)>& predictor,
    ExposureState s, const Population& population);

}  // namespace liftbid
