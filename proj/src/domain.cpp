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

#include "liftbid/domain.hpp"

#include <stdexcept>
#include <string>

namespace liftbid {

namespace {

constexpr std::array<std::string_view, kNumStates> kLabels = {
    "0", "1", "2", "3", "4", "5-9", "10-20", "21+"};
constexpr std::array<int, kNumStates> kLowerBounds = {0, 1, 2, 3, 4, 5, 10, 21};

}  // namespace

ExposureState::ExposureState(int bucket_index) : index_(bucket_index) {
  if (bucket_index < 0 || bucket_index >= kNumStates) {
    throw std::out_of_range("exposure bucket index out of range: " +
                            std::to_string(bucket_index));
  }
}

std::string_view ExposureState::label() const { return kLabels[index_]; }

AdSize::AdSize(int group_id) : id_(group_id) {
  if (group_id < 0 || group_id >= kMaxAdSizeGroups) {
    throw std::out_of_range("ad size group out of range: " +
                            std::to_string(group_id));
  }
}

std::string_view to_string(AuctionType type) {
  return type == AuctionType::kFirstPrice ? "first_price" : "second_price";
}

AuctionType auction_type_from_string(std::string_view name) {
  if (name == "first_price") return AuctionType::kFirstPrice;
  if (name == "second_price") return AuctionType::kSecondPrice;
  throw std::invalid_argument("unknown auction_type: " + std::string(name));
}

void CampaignConfig::validate() const {
  if (!(budget > 0.0)) throw std::invalid_argument("budget must be > 0");
  if (horizon_hours < 1) {
    throw std::invalid_argument("horizon_hours must be >= 1");
  }
  if (!(conversion_value > 0.0)) {
    throw std::invalid_argument("conversion_value must be > 0");
  }
  if (!(default_cost_rate > 0.0 && default_cost_rate < 1.0)) {
    throw std::invalid_argument("default_cost_rate must lie in (0, 1)");
  }
  if (!(requests_per_user > 0.0)) {
    throw std::invalid_argument("requests_per_user must be > 0");
  }
}

ExposureState bucketize_impressions(std::int64_t count) {
  if (count < 0) throw std::invalid_argument("impression count must be >= 0");
  if (count <= 4) return ExposureState(static_cast<int>(count));
  if (count <= 9) return ExposureState(5);
  if (count <= 20) return ExposureState(6);
  return ExposureState(7);
}

ExposureState previous_state(ExposureState s) {
  if (s.index() == 0) {
    throw std::domain_error(
        "bucket 0 has no previous state; lift is undefined at zero exposures");
  }
  return ExposureState(s.index() - 1);
}

int bucket_lower_bound(ExposureState s) { return kLowerBounds[s.index()]; }

}  // namespace liftbid
