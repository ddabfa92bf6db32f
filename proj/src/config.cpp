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

#include "liftbid/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

namespace liftbid {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw std::invalid_argument("unknown key '" + key + "' in " + where);
    }
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

const std::set<std::string> kWorldKeys = {
    "n_users",          "feature_dim",
    "competitor_intensity", "competitor_feature_coupling",
    "outcome_noise_seed",   "lift_shape",
    "competitor_sigma",     "hourly_amplitude",
    "activity_dispersion",  "ad_size_groups",
    "baseline_logit",       "baseline_slope",
    "baseline_noise",       "lift_scale",
    "lift_responsiveness_slope", "lift_quality_slope"};

const std::set<std::string> kCampaignKeys = {
    "budget",           "horizon_hours", "conversion_value",
    "default_cost_rate", "auction_type",  "seed",
    "requests_per_user"};

const std::set<std::string> kRunKeys = {"logging_policy", "pid", "learner",
                                        "clip_floor",     "split_ratio",
                                        "disjoint_train_eval",
                                        "lift_training_mode"};

void read_world(const json& j, WorldConfig& w) {
  read(j, "n_users", w.n_users);
  read(j, "feature_dim", w.feature_dim);
  read(j, "competitor_intensity", w.competitor_intensity);
  read(j, "competitor_feature_coupling", w.competitor_feature_coupling);
  read(j, "outcome_noise_seed", w.outcome_noise_seed);
  if (j.contains("lift_shape")) {
    w.lift_shape = lift_shape_from_string(j.at("lift_shape").get<std::string>());
  }
  read(j, "competitor_sigma", w.competitor_sigma);
  read(j, "hourly_amplitude", w.hourly_amplitude);
  read(j, "activity_dispersion", w.activity_dispersion);
  read(j, "ad_size_groups", w.ad_size_groups);
  read(j, "baseline_logit", w.baseline_logit);
  read(j, "baseline_slope", w.baseline_slope);
  read(j, "baseline_noise", w.baseline_noise);
  read(j, "lift_scale", w.lift_scale);
  read(j, "lift_responsiveness_slope", w.lift_responsiveness_slope);
  read(j, "lift_quality_slope", w.lift_quality_slope);
}

}  // namespace

void ExperimentConfig::validate() const {
  world.validate();
  campaign.validate();
  logging.validate();
  pid.validate();
  learner.validate();
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
    throw std::invalid_argument("split_ratio must lie in (0, 1)");
  }
  if (!(clip_floor > 0.0 && clip_floor * kNumStates < 1.0)) {
    throw std::invalid_argument("clip_floor must lie in (0, 1/8)");
  }
}

json world_config_to_json(const WorldConfig& w) {
  return json{{"n_users", w.n_users},
              {"feature_dim", w.feature_dim},
              {"competitor_intensity", w.competitor_intensity},
              {"competitor_feature_coupling", w.competitor_feature_coupling},
              {"outcome_noise_seed", w.outcome_noise_seed},
              {"lift_shape", std::string(to_string(w.lift_shape))},
              {"competitor_sigma", w.competitor_sigma},
              {"hourly_amplitude", w.hourly_amplitude},
              {"activity_dispersion", w.activity_dispersion},
              {"ad_size_groups", w.ad_size_groups},
              {"baseline_logit", w.baseline_logit},
              {"baseline_slope", w.baseline_slope},
              {"baseline_noise", w.baseline_noise},
              {"lift_scale", w.lift_scale},
              {"lift_responsiveness_slope", w.lift_responsiveness_slope},
              {"lift_quality_slope", w.lift_quality_slope}};
}

WorldConfig world_config_from_json(const json& j) {
  reject_unknown(j, kWorldKeys, "world config");
  WorldConfig w;
  read_world(j, w);
  w.validate();
  return w;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  std::set<std::string> known = kWorldKeys;
  known.insert(kCampaignKeys.begin(), kCampaignKeys.end());
  known.insert(kRunKeys.begin(), kRunKeys.end());
  reject_unknown(j, known, "config");

  ExperimentConfig cfg;
  read_world(j, cfg.world);

  CampaignConfig& c = cfg.campaign;
  read(j, "budget", c.budget);
  read(j, "horizon_hours", c.horizon_hours);
  read(j, "conversion_value", c.conversion_value);
  read(j, "default_cost_rate", c.default_cost_rate);
  if (j.contains("auction_type")) {
    c.auction_type =
        auction_type_from_string(j.at("auction_type").get<std::string>());
  }
  read(j, "seed", c.seed);
  read(j, "requests_per_user", c.requests_per_user);

  cfg.pid.default_alpha = c.default_cost_rate;
  if (j.contains("pid")) {
    const json& p = j.at("pid");
    reject_unknown(p,
                   {"k_p", "k_i", "k_d", "default_alpha", "err_normalization",
                    "alpha_ceiling_factor"},
                   "pid");
    read(p, "k_p", cfg.pid.k_p);
    read(p, "k_i", cfg.pid.k_i);
    read(p, "k_d", cfg.pid.k_d);
    read(p, "default_alpha", cfg.pid.default_alpha);
    if (p.contains("err_normalization")) {
      cfg.pid.err_normalization = err_normalization_from_string(
          p.at("err_normalization").get<std::string>());
    }
    read(p, "alpha_ceiling_factor", cfg.pid.alpha_ceiling_factor);
  }
  if (j.contains("logging_policy")) {
    const json& p = j.at("logging_policy");
    reject_unknown(p,
                   {"cvr_model_noise", "bid_scale", "requests_per_user_mean",
                    "horizon_hours", "pre_campaign_requests_mean",
                    "flat_bidding"},
                   "logging_policy");
    read(p, "cvr_model_noise", cfg.logging.cvr_model_noise);
    read(p, "bid_scale", cfg.logging.bid_scale);
    read(p, "requests_per_user_mean", cfg.logging.requests_per_user_mean);
    read(p, "horizon_hours", cfg.logging.horizon_hours);
    read(p, "pre_campaign_requests_mean",
         cfg.logging.pre_campaign_requests_mean);
    read(p, "flat_bidding", cfg.logging.flat_bidding);
  }
  if (j.contains("learner")) {
    const json& p = j.at("learner");
    reject_unknown(p,
                   {"learner_kind", "regularization", "rounds", "learning_rate",
                    "propensity_regularization", "min_outcome_records"},
                   "learner");
    if (p.contains("learner_kind")) {
      cfg.learner.learner_kind =
          learner_kind_from_string(p.at("learner_kind").get<std::string>());
    }
    read(p, "regularization", cfg.learner.regularization);
    read(p, "rounds", cfg.learner.rounds);
    read(p, "learning_rate", cfg.learner.learning_rate);
    read(p, "propensity_regularization", cfg.learner.propensity_regularization);
    read(p, "min_outcome_records", cfg.learner.min_outcome_records);
  }
  read(j, "clip_floor", cfg.clip_floor);
  read(j, "split_ratio", cfg.split_ratio);
  read(j, "disjoint_train_eval", cfg.disjoint_train_eval);
  if (j.contains("lift_training_mode")) {
    cfg.lift_training_mode =
        training_mode_from_string(j.at("lift_training_mode").get<std::string>());
  }
  cfg.validate();
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  json j = world_config_to_json(cfg.world);
  const CampaignConfig& c = cfg.campaign;
  j["budget"] = c.budget;
  j["horizon_hours"] = c.horizon_hours;
  j["conversion_value"] = c.conversion_value;
  j["default_cost_rate"] = c.default_cost_rate;
  j["auction_type"] = std::string(to_string(c.auction_type));
  j["seed"] = c.seed;
  j["requests_per_user"] = c.requests_per_user;
  j["pid"] = {{"k_p", cfg.pid.k_p},
              {"k_i", cfg.pid.k_i},
              {"k_d", cfg.pid.k_d},
              {"default_alpha", cfg.pid.default_alpha},
              {"err_normalization",
               std::string(to_string(cfg.pid.err_normalization))},
              {"alpha_ceiling_factor", cfg.pid.alpha_ceiling_factor}};
  j["logging_policy"] = {
      {"cvr_model_noise", cfg.logging.cvr_model_noise},
      {"bid_scale", cfg.logging.bid_scale},
      {"requests_per_user_mean", cfg.logging.requests_per_user_mean},
      {"horizon_hours", cfg.logging.horizon_hours},
      {"pre_campaign_requests_mean", cfg.logging.pre_campaign_requests_mean},
      {"flat_bidding", cfg.logging.flat_bidding}};
  j["learner"] = {
      {"learner_kind", std::string(to_string(cfg.learner.learner_kind))},
      {"regularization", cfg.learner.regularization},
      {"rounds", cfg.learner.rounds},
      {"learning_rate", cfg.learner.learning_rate},
      {"propensity_regularization", cfg.learner.propensity_regularization},
      {"min_outcome_records", cfg.learner.min_outcome_records}};
  j["clip_floor"] = cfg.clip_floor;
  j["split_ratio"] = cfg.split_ratio;
  j["disjoint_train_eval"] = cfg.disjoint_train_eval;
  j["lift_training_mode"] = std::string(to_string(cfg.lift_training_mode));
  return j;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return experiment_config_from_json(json::parse(in));
}

}  // namespace liftbid
