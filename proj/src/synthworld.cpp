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

#include "liftbid/synthworld.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace liftbid {

namespace {

// Cumulative fraction of the achievable lift reached at each bucket.
constexpr std::array<double, kNumStates> kMonotoneShape = {
    0.0, 0.30, 0.50, 0.64, 0.74, 0.88, 0.96, 1.00};
// Wear-out: response peaks around bucket 4 and declines afterwards.
constexpr std::array<double, kNumStates> kPeakedShape = {
    0.0, 0.35, 0.60, 0.75, 0.80, 0.70, 0.55, 0.40};
constexpr std::array<double, kMaxAdSizeGroups> kSizeLiftFactor = {1.0, 0.7,
                                                                  1.3, 0.5};

// Feature slots. 0 recency, 1 frequency, 2 visit count, 3 POI diversity,
// 4 location-log volume, 5 area age share, 6+ other area statistics.
constexpr std::size_t kActivitySlot = 1;
constexpr std::size_t kFatigueSlot = 5;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double responsiveness_of(std::span<const double> x) {
  if (x.size() >= 5) return (x[3] + x[4]) / std::numbers::sqrt2;
  if (x.size() == 4) return x[3];
  return 0.0;
}

double wear_out_weight(const WorldConfig& cfg, std::span<const double> x) {
  switch (cfg.lift_shape) {
    case LiftShape::kMonotone:
      return 0.0;
    case LiftShape::kPeaked:
      return 1.0;
    case LiftShape::kMixed:
      return x.size() > kFatigueSlot ? sigmoid(2.0 * x[kFatigueSlot]) : 0.5;
  }
  return 0.0;
}

}  // namespace

std::string_view to_string(LiftShape shape) {
  switch (shape) {
    case LiftShape::kMonotone:
      return "monotone";
    case LiftShape::kPeaked:
      return "peaked";
    case LiftShape::kMixed:
      return "mixed";
  }
  return "mixed";
}

LiftShape lift_shape_from_string(std::string_view name) {
  if (name == "monotone") return LiftShape::kMonotone;
  if (name == "peaked") return LiftShape::kPeaked;
  if (name == "mixed") return LiftShape::kMixed;
  throw std::invalid_argument("unknown lift_shape: " + std::string(name));
}

void WorldConfig::validate() const {
  if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");
  if (feature_dim < 1) throw std::invalid_argument("feature_dim must be >= 1");
  if (!(competitor_intensity >= 0.0)) {
    throw std::invalid_argument("competitor_intensity must be >= 0");
  }
  if (!(competitor_sigma > 0.0)) {
    throw std::invalid_argument("competitor_sigma must be > 0");
  }
  if (!(hourly_amplitude >= 0.0 && hourly_amplitude < 1.0)) {
    throw std::invalid_argument("hourly_amplitude must lie in [0, 1)");
  }
  if (!(activity_dispersion >= 0.0)) {
    throw std::invalid_argument("activity_dispersion must be >= 0");
  }
  if (ad_size_groups != 1 && ad_size_groups != kMaxAdSizeGroups) {
    throw std::invalid_argument("ad_size_groups must be 1 or 4");
  }
  // Largest size factor is 1.3; keep every curve entry inside [0, 1].
  if (!(lift_scale >= 0.0 && lift_scale <= 0.75)) {
    throw std::invalid_argument("lift_scale must lie in [0, 0.75]");
  }
}

double quality_of(const WorldConfig&, std::span<const double> x) {
  const std::size_t k = std::min<std::size_t>(3, x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += x[i];
  return sum / std::sqrt(static_cast<double>(k));
}

double activity_of(const WorldConfig& cfg, std::span<const double> x) {
  if (x.size() <= kActivitySlot) return 1.0;
  const double s = cfg.activity_dispersion;
  return std::exp(s * x[kActivitySlot] - 0.5 * s * s);
}

void attach_traits(const WorldConfig& cfg, UserProfile& user) {
  user.quality = quality_of(cfg, user.x);
  user.activity = activity_of(cfg, user.x);
  user.ad_size = AdSize(static_cast<int>(
      user.user_id % static_cast<std::uint64_t>(cfg.ad_size_groups)));
}

Population generate_population(const WorldConfig& cfg, std::uint64_t seed) {
  if (cfg.n_users == 0) throw std::invalid_argument("n_users must be >= 1");
  cfg.validate();
  Population population;
  population.reserve(cfg.n_users);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < cfg.n_users; ++i) {
    UserProfile user;
    user.user_id = i;
    Rng feature_rng = make_rng(seed, "features", i);
    user.x.resize(cfg.feature_dim);
    for (double& v : user.x) v = normal(feature_rng);
    attach_traits(cfg, user);

    Rng noise_rng = make_rng(seed ^ cfg.outcome_noise_seed, "outcome", i);
    const double eps = normal(noise_rng);
    const double p0 = sigmoid(cfg.baseline_logit +
                              cfg.baseline_slope * user.quality +
                              cfg.baseline_noise * eps);
    const double reachable =
        cfg.lift_scale * kSizeLiftFactor[user.ad_size.id()] *
        sigmoid(cfg.lift_responsiveness_slope * responsiveness_of(user.x) -
                cfg.lift_quality_slope * user.quality - 0.5);
    const double wear = wear_out_weight(cfg, user.x);
    for (int k = 0; k < kNumStates; ++k) {
      const double shape =
          (1.0 - wear) * kMonotoneShape[k] + wear * kPeakedShape[k];
      user.outcome_curve[k] = p0 + (1.0 - p0) * reachable * shape;
    }
    population.push_back(std::move(user));
  }
  return population;
}

double true_lift(const UserProfile& user, ExposureState s) {
  const ExposureState prev = previous_state(s);
  return user.outcome_curve[s.index()] - user.outcome_curve[prev.index()];
}

bool sample_outcome(const UserProfile& user, ExposureState realized, Rng& rng) {
  const double p = user.outcome_curve[realized.index()];
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::bernoulli_distribution(p)(rng);
}

double hourly_cycle(int hour) {
  return std::sin(2.0 * std::numbers::pi * static_cast<double>(hour % 24) /
                  24.0);
}

CompetitorModel::CompetitorModel(const WorldConfig& cfg)
    : intensity_(cfg.competitor_intensity),
      coupling_(cfg.competitor_feature_coupling),
      sigma_(cfg.competitor_sigma),
      amplitude_(cfg.hourly_amplitude) {}

double CompetitorModel::log_location(const UserProfile& user, int hour) const {
  return std::log(intensity_) + coupling_ * user.quality +
         amplitude_ * hourly_cycle(hour);
}

double CompetitorModel::sample(const UserProfile& user, int hour,
                               Rng& rng) const {
  constexpr double kFloor = std::numeric_limits<double>::min();
  const double z = std::normal_distribution<double>(0.0, 1.0)(rng);
  if (intensity_ == 0.0) return kFloor;
  return std::max(std::exp(log_location(user, hour) + sigma_ * z), kFloor);
}

double CompetitorModel::win_probability(double bid, const UserProfile& user,
                                        int hour) const {
  if (!(bid > 0.0)) return 0.0;
  if (intensity_ == 0.0) return 1.0;
  const double z = (std::log(bid) - log_location(user, hour)) / sigma_;
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double sample_competitor_bid(const CompetitorModel& model,
                             const UserProfile& user, int hour, int horizon,
                             Rng& rng) {
  if (hour < 0 || hour >= horizon) {
    throw std::out_of_range("hour outside the campaign horizon");
  }
  return model.sample(user, hour, rng);
}

double ideal_loss_oracle(std::span<const double> predictions, ExposureState s,
                         const Population& population) {
  if (population.empty()) throw std::invalid_argument("empty population");
  if (predictions.size() != population.size()) {
    throw std::invalid_argument("one prediction per user required");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    const double p = population[i].outcome_curve[s.index()];
    const double gap = p - predictions[i];
    total += p * (1.0 - p) + gap * gap;
  }
  return total / static_cast<double>(population.size());
}

double ideal_loss_oracle(
    const std::function<double(std::span<const double>)>& predictor,
    ExposureState s, const Population& population) {
  std::vector<double> predictions;
  predictions.reserve(population.size());
  for (const auto& user : population) predictions.push_back(predictor(user.x));
  return ideal_loss_oracle(predictions, s, population);
}

}  // namespace liftbid
