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

#include <filesystem>
#include <json.hpp>

#include "liftbid/domain.hpp"
#include "liftbid/learners.hpp"
#include "liftbid/logsim.hpp"
#include "liftbid/pacing.hpp"
#include "liftbid/synthworld.hpp"

namespace liftbid {

/// Everything one end-to-end run needs. The JSON form keeps the campaign and
/// world fields as top-level keys; the logging policy, PID controller and
/// learner live under "logging_policy", "pid" and "learner".
struct ExperimentConfig {
  WorldConfig world;
  CampaignConfig campaign;
  LoggingPolicy logging;
  PIDConfig pid;
  WeightedLearnerSpec learner;
  double clip_floor = 0.01;
  /// Share of evaluation users assigned to the lift arm.
  double split_ratio = 0.5;
  /// Logging users and campaign users are disjoint halves of the population.
  bool disjoint_train_eval = true;
  TrainingMode lift_training_mode = TrainingMode::kIps;

  void validate() const;
};

/// Missing keys keep their defaults; unknown keys throw std::invalid_argument.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);
nlohmann::json world_config_to_json(const WorldConfig& cfg);
WorldConfig world_config_from_json(const nlohmann::json& j);

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace liftbid
