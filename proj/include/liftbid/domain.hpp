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
#include <string_view>
#include <vector>

namespace liftbid {

inline constexpr int kNumStates = 8;
inline constexpr int kMaxAdSizeGroups = 4;

/// Bucketized count of past impressions of the campaign's ad for one user.
///
/// Buckets: {0}, {1}, {2}, {3}, {4}, {5-9}, {10-20}, {21+}. Bucket 0 is the
/// never-exposed state; lift is only defined for buckets 1..7.
class ExposureState {
 public:
  constexpr ExposureState() = default;
  /// Throws std::out_of_range unless 0 <= index < kNumStates.
  explicit ExposureState(int bucket_index);

  constexpr int index() const { return index_; }
  std::string_view label() const;

  friend constexpr bool operator==(ExposureState, ExposureState) = default;
  friend constexpr auto operator<=>(ExposureState, ExposureState) = default;

 private:
  int index_ = 0;
};

/// Abstract ad-size group in [0, 4).
class AdSize {
 public:
  constexpr AdSize() = default;
  explicit AdSize(int group_id);

  constexpr int id() const { return id_; }

  friend constexpr bool operator==(AdSize, AdSize) = default;
  friend constexpr auto operator<=>(AdSize, AdSize) = default;

 private:
  int id_ = 0;
};

using FeatureVector = std::vector<double>;

enum class AuctionType { kFirstPrice, kSecondPrice };

std::string_view to_string(AuctionType type);
AuctionType auction_type_from_string(std::string_view name);

struct CampaignConfig {
  double budget = 40000.0;
  int horizon_hours = 24;
  double conversion_value = 8.0;
  double default_cost_rate = 0.5;
  AuctionType auction_type = AuctionType::kSecondPrice;
  std::uint64_t seed = 1;
  /// Expected bid requests per evaluation user over the whole campaign.
  double requests_per_user = 12.0;

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
};

ExposureState bucketize_impressions(std::int64_t count);

/// Bucket immediately below `s`. Bucket 0 has no predecessor; asking for it
/// throws std::domain_error because lift at zero exposures is undefined.
ExposureState previous_state(ExposureState s);

/// Smallest impression count that falls into bucket `s`.
int bucket_lower_bound(ExposureState s);

}  // namespace liftbid
