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

#include "liftbid/pacing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace liftbid {

std::string_view to_string(ErrNormalization mode) {
  return mode == ErrNormalization::kRaw ? "raw" : "per_hour_budget";
}

ErrNormalization err_normalization_from_string(std::string_view name) {
  if (name == "raw") return ErrNormalization::kRaw;
  if (name == "per_hour_budget") return ErrNormalization::kPerHourBudget;
  throw std::invalid_argument("unknown err_normalization: " +
                              std::string(name));
}

void PIDConfig::validate() const {
  if (!(default_alpha > 0.0 && default_alpha < 1.0)) {
    throw std::invalid_argument("default_alpha must lie in (0, 1)");
  }
  if (!(alpha_ceiling_factor >= 0.0)) {
    throw std::invalid_argument("alpha_ceiling_factor must be >= 0");
  }
  if (!std::isfinite(k_p) || !std::isfinite(k_i) || !std::isfinite(k_d)) {
    throw std::invalid_argument("PID gains must be finite");
  }
}

PacingState init_pacing(const PIDConfig& cfg, double budget,
                        int horizon_hours) {
  cfg.validate();
  if (horizon_hours < 1) throw std::invalid_argument("horizon must be >= 1");
  PacingState state;
  state.alpha = cfg.default_alpha;
  state.per_hour_budget = budget / static_cast<double>(horizon_hours);
  return state;
}

PacingState pid_update(const PacingState& state, double remaining_budget,
                       int remaining_hours, double spend_prev_hour,
                       const PIDConfig& cfg) {
  if (remaining_hours < 1) {
    throw std::invalid_argument("campaign over: remaining_hours must be >= 1");
  }
  double err = remaining_budget / static_cast<double>(remaining_hours) -
               spend_prev_hour;
  if (cfg.err_normalization == ErrNormalization::kPerHourBudget) {
    err /= state.per_hour_budget;
  }
  const double prev_err =
      state.err_history.empty() ? 0.0 : state.err_history.back();
  const double err_sum =
      std::accumulate(state.err_history.begin(), state.err_history.end(),
                      0.0) +
      err;

  PacingState next = state;
  const double exponent =
      err * cfg.k_p + err_sum * cfg.k_i + (err - prev_err) * cfg.k_d;
  next.alpha = std::exp(exponent) * state.alpha;
  if (cfg.alpha_ceiling_factor > 0.0) {
    next.alpha =
        std::min(next.alpha, cfg.alpha_ceiling_factor * cfg.default_alpha);
  }
  // exp underflow is the only way to reach zero; alpha stays positive.
  next.alpha = std::max(next.alpha, std::numeric_limits<double>::min());
  next.err_history.push_back(err);
  next.spend_history.push_back(spend_prev_hour);
  next.hour = state.hour + 1;
  return next;
}

PIDConfig tune_gains(
    std::span<const PIDConfig> grid, std::span<const std::uint64_t> seeds,
    const std::function<double(const PIDConfig&, std::uint64_t)>& evaluate) {
  if (grid.empty()) throw std::invalid_argument("empty PID grid");
  if (seeds.empty()) throw std::invalid_argument("tuning needs seeds");
  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double total = 0.0;
    for (auto seed : seeds) total += evaluate(grid[i], seed);
    const double score = total / static_cast<double>(seeds.size());
    if (score < best_score) {
      best_score = score;
      best = i;
    }
  }
  return grid[best];
}

std::vector<PIDConfig> make_gain_grid(const PIDConfig& base,
                                      std::span<const double> k_p,
                                      std::span<const double> k_i,
                                      std::span<const double> k_d) {
  std::vector<PIDConfig> grid;
  for (double p : k_p) {
    for (double i : k_i) {
      for (double d : k_d) {
        PIDConfig c = base;
        c.k_p = p;
        c.k_i = i;
        c.k_d = d;
        grid.push_back(c);
      }
    }
  }
  return grid;
}

}  // namespace liftbid
