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
#include <span>
#include <unordered_map>
#include <vector>

#include "liftbid/domain.hpp"
#include "liftbid/learners.hpp"
#include "liftbid/synthworld.hpp"

namespace liftbid {

inline constexpr int kNumLiftStates = kNumStates - 1;  // buckets 1..7

/// f^s(x) - f^{s-1}(x) from the bank's predictors of the given mode.
double predict_raw_lift(const ModelBank& bank, std::span<const double> x,
                        ExposureState s, AdSize ad_size,
                        TrainingMode mode = TrainingMode::kIps);

/// Elementwise max(v, 0).
std::vector<double> floor_lift(std::span<const double> raw);

/// Forward window average: out[i] = mean(v[i], v[i+1], v[i+2]), with the
/// window truncated at the end of the vector.
std::vector<double> smooth_lift(std::span<const double> floored);

/// Per-key lift vectors over buckets 1..7 (index 0 is bucket 1).
struct LiftRow {
  std::uint64_t key = 0;
  AdSize ad_size;
  std::array<double, kNumLiftStates> raw{};
  std::array<double, kNumLiftStates> floored{};
  std::array<double, kNumLiftStates> smoothed{};
};

/// Precomputed lift served at auction time.
class LiftTable {
 public:
  LiftTable() = default;
  explicit LiftTable(std::vector<LiftRow> rows);

  const std::vector<LiftRow>& rows() const { return rows_; }
  bool contains(std::uint64_t key) const { return index_.contains(key); }
  const LiftRow& at(std::uint64_t key) const;
  /// Smoothed, floored tau for a bucket >= 1.
  double tau(std::uint64_t key, ExposureState s) const;

 private:
  std::vector<LiftRow> rows_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Buckets whose predictor (or predecessor's) was excluded at training time
/// get zero raw lift.
LiftRow make_lift_row(const ModelBank& bank, std::uint64_t key,
                      std::span<const double> x, AdSize ad_size,
                      TrainingMode mode);

/// One row per user, keyed by user_id and using each user's ad size.
LiftTable build_lift_table(const ModelBank& bank, const Population& users,
                           TrainingMode mode = TrainingMode::kIps);

/// True per-bucket lift, floored and smoothed the same way as predictions.
std::array<double, kNumLiftStates> true_smoothed_lift(const UserProfile& user);

}  // namespace liftbid
