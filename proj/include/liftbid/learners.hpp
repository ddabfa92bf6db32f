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
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "liftbid/domain.hpp"
#include "liftbid/logsim.hpp"

namespace liftbid {

enum class LearnerKind { kWeightedRidge, kWeightedBoostedStumps };
enum class TrainingMode { kErm, kIps };

std::string_view to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(std::string_view name);
std::string_view to_string(TrainingMode mode);
TrainingMode training_mode_from_string(std::string_view name);

struct WeightedLearnerSpec {
  LearnerKind learner_kind = LearnerKind::kWeightedRidge;
  double regularization = 1e-3;
  int rounds = 100;
  double learning_rate = 0.1;
  /// L2 strength of the multinomial propensity model.
  double propensity_regularization = 1e-4;
  /// States with fewer records get no outcome predictor; their lift is zero.
  int min_outcome_records = 50;

  void validate() const;
};

/// Minimizes sum_i w_i (y_i - b.x_i - c)^2 / sum_i w_i + lambda |b|^2.
/// The objective is normalized by total weight, so rescaling every weight
/// by a positive constant leaves the solution unchanged.
struct RidgeRegressor {
  std::vector<double> coef;
  double intercept = 0.0;

  double predict(std::span<const double> x) const;
};

RidgeRegressor fit_weighted_ridge(std::span<const FeatureVector> xs,
                                  std::span<const double> ys,
                                  std::span<const double> weights,
                                  double lambda);

struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  double left = 0.0;   // x[feature] <= threshold
  double right = 0.0;
};

/// Squared-loss gradient boosting over depth-one trees. Leaf values are
/// sum(w r) / (sum(w) + lambda) on mean-one normalized weights.
struct BoostedStumps {
  double base = 0.0;
  std::vector<Stump> stumps;

  double predict(std::span<const double> x) const;
};

BoostedStumps fit_weighted_boosted_stumps(std::span<const FeatureVector> xs,
                                          std::span<const double> ys,
                                          std::span<const double> weights,
                                          const WeightedLearnerSpec& spec);

using Regressor = std::variant<RidgeRegressor, BoostedStumps>;

Regressor fit_regressor(std::span<const FeatureVector> xs,
                        std::span<const double> ys,
                        std::span<const double> weights,
                        const WeightedLearnerSpec& spec);
double predict_unclamped(const Regressor& model, std::span<const double> x);

/// f^s for one (state, ad size); predictions clamped to [0, 1].
struct OutcomePredictor {
  ExposureState state;
  AdSize ad_size;
  TrainingMode training_mode = TrainingMode::kErm;
  Regressor regressor;

  double predict(std::span<const double> x) const;
};

/// P(s | x, est_cvr, pre-campaign impressions) over the eight buckets.
///
/// Multinomial logistic regression on standardized features
/// x ++ log(est_cvr + 1e-3) ++ log1p(pre_campaign_impressions). Buckets with
/// fewer than two training records are inactive and get the clip floor.
/// After clipping, every entry is >= clip_floor and entries sum to one.
class PropensityModel {
 public:
  PropensityModel() = default;

  bool fitted() const { return fitted_; }
  double clip_floor() const { return clip_floor_; }
  bool active(ExposureState s) const { return active_[s.index()]; }
  const std::array<bool, kNumStates>& active_states() const { return active_; }

  /// Unclipped softmax over active buckets.
  std::array<double, kNumStates> predict_raw(std::span<const double> x,
                                             double est_cvr,
                                             std::int64_t pre_impressions) const;
  std::array<double, kNumStates> predict(std::span<const double> x,
                                         double est_cvr,
                                         std::int64_t pre_impressions) const;

  // Parameters, exposed for serialization.
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;
  /// Row per bucket: intercept followed by one weight per feature. Rows of
  /// inactive buckets are unused. The reference (first active) row is zero.
  std::vector<std::vector<double>> weights;

  void set_state(std::array<bool, kNumStates> active, double clip_floor,
                 bool fitted);

 private:
  std::array<bool, kNumStates> active_{};
  double clip_floor_ = 0.01;
  bool fitted_ = false;
};

/// Raises entries below the floor to the floor and rescales the remaining
/// entries so the vector still sums to one; repeats until stable.
std::array<double, kNumStates> clip_to_simplex(
    const std::array<double, kNumStates>& probs, double floor);

PropensityModel fit_propensity(const TrainingLog& log,
                               const WeightedLearnerSpec& spec,
                               double clip_floor = 0.01);

/// Throws std::logic_error for an unfitted model.
std::array<double, kNumStates> predict_propensity(const PropensityModel& model,
                                                  std::span<const double> x,
                                                  double est_cvr,
                                                  std::int64_t pre_impressions);

/// e_{s_i}(x_i) for every record, from a fitted model.
std::vector<double> record_propensities(const PropensityModel& model,
                                        const TrainingLog& log);

/// (1/n) sum_{i in D_s} (y_i - f(x_i))^2 / e_i, with n the size of the whole
/// log and e_i the propensity of record i's own bucket.
double ips_loss(const OutcomePredictor& f, const TrainingLog& log,
                std::span<const double> propensity_of_record, ExposureState s);
double ips_loss(const OutcomePredictor& f, const TrainingLog& log,
                const PropensityModel& model, ExposureState s);
/// Same estimator over precomputed per-record predictions.
double ips_loss(std::span<const double> predictions, const TrainingLog& log,
                std::span<const double> propensity_of_record, ExposureState s);

/// Naive per-state empirical risk: (1/n_s) sum_{i in D_s} (y_i - f(x_i))^2.
double erm_loss(std::span<const double> predictions, const TrainingLog& log,
                ExposureState s);

/// Fits f^s on D_s (records with s_obs == s and the given ad size). IPS mode
/// weights each record by 1/e_{s_i}(x_i) and requires a propensity model.
OutcomePredictor fit_outcome(const TrainingLog& log, ExposureState s,
                             AdSize ad_size, TrainingMode mode,
                             const PropensityModel* propensity,
                             const WeightedLearnerSpec& spec);

/// Conventional CVR model of the performance bidder: ERM over impressed
/// users (s >= 1) pooled across states.
struct ImpressedCvrModel {
  AdSize ad_size;
  Regressor regressor;

  double predict(std::span<const double> x) const;
};

ImpressedCvrModel fit_impressed_cvr(const TrainingLog& log, AdSize ad_size,
                                    const WeightedLearnerSpec& spec);

/// All models trained from one log, keyed by (state, ad size, mode).
struct ModelBank {
  using Key = std::tuple<int, int, TrainingMode>;

  WeightedLearnerSpec spec;
  double clip_floor = 0.01;
  int ad_size_groups = 1;
  std::vector<PropensityModel> propensity;        // per ad size
  std::vector<ImpressedCvrModel> impressed_cvr;   // per ad size
  std::map<Key, OutcomePredictor> outcome;
  std::vector<std::string> warnings;

  bool contains(ExposureState s, AdSize size, TrainingMode mode) const;
  /// Throws std::out_of_range naming the missing state.
  const OutcomePredictor& at(ExposureState s, AdSize size,
                             TrainingMode mode) const;
};

ModelBank train_model_bank(const TrainingLog& log,
                           const WeightedLearnerSpec& spec, int ad_size_groups,
                           double clip_floor = 0.01);

}  // namespace liftbid
