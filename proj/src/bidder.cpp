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

#include "liftbid/bidder.hpp"

#include <stdexcept>
#include <string>

namespace liftbid {

std::string_view to_string(Strategy strategy) {
  return strategy == Strategy::kLift ? "lift" : "performance";
}

Strategy strategy_from_string(std::string_view name) {
  if (name == "lift") return Strategy::kLift;
  if (name == "performance") return Strategy::kPerformance;
  throw std::invalid_argument("unknown strategy: " + std::string(name));
}

double lift_bid(double alpha, double conversion_value, double tau) {
  if (tau < 0.0) {
    throw std::invalid_argument("lift bid needs a floored tau; got negative");
  }
  return alpha * conversion_value * tau;
}

double performance_bid(double alpha, double conversion_value, double cvr_hat) {
  if (!(cvr_hat >= 0.0 && cvr_hat <= 1.0)) {
    throw std::invalid_argument("cvr_hat must lie in [0, 1]");
  }
  return alpha * conversion_value * cvr_hat;
}

ExposureState next_state_for(std::int64_t impressions_so_far) {
  if (impressions_so_far < 0) {
    throw std::invalid_argument("impression count must be >= 0");
  }
  return bucketize_impressions(impressions_so_far + 1);
}

BidDecision decide_bid(Strategy strategy, double alpha,
                       double conversion_value, double signal,
                       ExposureState next_state) {
  BidDecision d;
  d.strategy = strategy;
  d.alpha = alpha;
  d.conversion_value = conversion_value;
  d.signal = signal;
  d.next_state = next_state;
  d.bid_price = strategy == Strategy::kLift
                    ? lift_bid(alpha, conversion_value, signal)
                    : performance_bid(alpha, conversion_value, signal);
  return d;
}

}  // namespace liftbid
