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

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "liftbid/experiment.hpp"
#include "liftbid/learners.hpp"
#include "liftbid/lift.hpp"
#include "liftbid/logsim.hpp"
#include "liftbid/synthworld.hpp"

namespace liftbid::io {

/// 17 significant digits; "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double v);

/// Population CSV (user_id, x_0.., curve_0..curve_7) and a JSON sidecar at
/// the same path with a .json extension holding the WorldConfig and seed.
void write_world(const std::filesystem::path& csv_path,
                 const WorldConfig& cfg, std::uint64_t seed,
                 const Population& population);

struct WorldFile {
  WorldConfig config;
  std::uint64_t seed = 0;
  Population population;
};

/// Derived traits (quality, activity, ad size) are recomputed from x.
WorldFile read_world(const std::filesystem::path& csv_path);
std::filesystem::path world_sidecar_path(const std::filesystem::path& csv_path);

void write_training_log(const std::filesystem::path& path,
                        const TrainingLog& log);
TrainingLog read_training_log(const std::filesystem::path& path);

nlohmann::json regressor_to_json(const Regressor& r);
Regressor regressor_from_json(const nlohmann::json& j);
nlohmann::json model_bank_to_json(const ModelBank& bank);
ModelBank model_bank_from_json(const nlohmann::json& j);

void write_lift_table(const std::filesystem::path& path,
                      const LiftTable& table);

struct ArmRun {
  std::string arm;
  const CampaignResult* run = nullptr;
};

void write_hourly_csv(const std::filesystem::path& path,
                      std::span<const ArmRun> arms);
void write_bids_csv(const std::filesystem::path& path,
                    std::span<const ArmRun> arms);
void write_unbiasedness_csv(const std::filesystem::path& path,
                            std::span<const UnbiasednessReport> reports);

/// Undefined metrics serialize as null.
nlohmann::json metrics_to_json(const MetricsReport& m);
nlohmann::json ab_test_to_json(const AbTestResult& r);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace liftbid::io
