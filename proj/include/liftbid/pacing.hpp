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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace liftbid {

enum class ErrNormalization { kRaw, kPerHourBudget };

std::string_view to_string(ErrNormalization mode);
ErrNormalization err_normalization_from_string(std::string_view name);

struct PIDConfig {
  double k_p = 0.8;
  double k_i = 0.05;
  double k_d = 0.1;
  double default_alpha = 0.5;
  ErrNormalization err_normalization = ErrNormalization::kPerHourBudget;
  /// Guard on runaway bids: alpha never exceeds this multiple of
  /// default_alpha. Zero disables the guard.
  double alpha_ceiling_factor = 10.0;

  void validate() const;
};

/// Hourly cost-rate controller state. One writer: the campaign loop.
struct PacingState {
  double alpha = 0.0;
  std::vector<double> err_history;
  int hour = 0;
  std::vector<double> spend_history;
  /// budget / H, the unit of the normalized error.
  double per_hour_budget = 1.0;
};

PacingState init_pacing(const PIDConfig& cfg, double budget, int horizon_hours);

/// One step of the exponential-actuator PID:
///   err_h = remaining_budget / remaining_hours - spend_prev_hour
///   alpha <- exp(k_p err_h + k_i sum_{j<=h} err_j + k_d (err_h - err_{h-1}))
///            * alpha,   err_{-1} = 0.
/// remaining_hours == 0 throws std::invalid_argument (campaign over).
PacingState pid_update(const PacingState& state, double remaining_budget,
                       int remaining_hours, double spend_prev_hour,
                       const PIDConfig& cfg);

/// Offline gain search. evaluate(candidate, seed) returns the relative
/// spend deviation |spend - budget| / budget of one simulated campaign;
/// the candidate with the lowest mean over seeds wins (first on ties).
PIDConfig tune_gains(
    std::span<const PIDConfig> grid, std::span<const std::uint64_t> seeds,
    const std::function<double(const PIDConfig&, std::uint64_t)>& evaluate);

/// k_p x k_i x k_d product grid over a base config.
std::vector<PIDConfig> make_gain_grid(const PIDConfig& base,
                                      std::span<const double> k_p,
                                      std::span<const double> k_i,
                                      std::span<const double> k_d);

}  // namespace liftbid
