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
#include <string_view>

#include "liftbid/domain.hpp"

namespace liftbid {

enum class Strategy { kLift, kPerformance };

std::string_view to_string(Strategy strategy);
Strategy strategy_from_string(std::string_view name);

struct BidDecision {
  double bid_price = 0.0;
  Strategy strategy = Strategy::kLift;
  double alpha = 0.0;
  double conversion_value = 0.0;
  /// tau for the lift strategy, cvr_hat for the performance strategy.
  double signal = 0.0;
  ExposureState next_state;
};

/// alpha * v * tau. tau must already be floored; a negative tau throws.
double lift_bid(double alpha, double conversion_value, double tau);

/// alpha * v * cvr_hat with cvr_hat in [0, 1].
double performance_bid(double alpha, double conversion_value, double cvr_hat);

/// The state whose lift the next impression buys: bucketize(count + 1).
ExposureState next_state_for(std::int64_t impressions_so_far);

BidDecision decide_bid(Strategy strategy, double alpha,
                       double conversion_value, double signal,
                       ExposureState next_state);

}  // namespace liftbid
