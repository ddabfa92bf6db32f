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

#include "liftbid/lift.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace liftbid {

double predict_raw_lift(const ModelBank& bank, std::span<const double> x,
                        ExposureState s, AdSize ad_size, TrainingMode mode) {
  const ExposureState prev = previous_state(s);
  return bank.at(s, ad_size, mode).predict(x) -
         bank.at(prev, ad_size, mode).predict(x);
}

std::vector<double> floor_lift(std::span<const double> raw) {
  std::vector<double> out(raw.begin(), raw.end());
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

std::vector<double> smooth_lift(std::span<const double> floored) {
  const std::size_t n = floored.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t end = std::min(n, i + 3);
    double sum = 0.0;
    for (std::size_t j = i; j < end; ++j) sum += floored[j];
    out[i] = sum / static_cast<double>(end - i);
  }
  return out;
}

LiftTable::LiftTable(std::vector<LiftRow> rows) : rows_(std::move(rows)) {
  index_.reserve(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!index_.emplace(rows_[i].key, i).second) {
      throw std::invalid_argument("duplicate lift table key " +
                                  std::to_string(rows_[i].key));
    }
  }
}

const LiftRow& LiftTable::at(std::uint64_t key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) {
    throw std::out_of_range("no lift row for key " + std::to_string(key));
  }
  return rows_[it->second];
}

double LiftTable::tau(std::uint64_t key, ExposureState s) const {
  if (s.index() == 0) {
    throw std::domain_error("lift is undefined for exposure bucket 0");
  }
  return at(key).smoothed[s.index() - 1];
}

namespace {

template <class Array>
void fill_floored_smoothed(Array& raw, Array& floored, Array& smoothed) {
  const auto f = floor_lift(raw);
  const auto s = smooth_lift(f);
  std::copy(f.begin(), f.end(), floored.begin());
  std::copy(s.begin(), s.end(), smoothed.begin());
}

}  // namespace

LiftRow make_lift_row(const ModelBank& bank, std::uint64_t key,
                      std::span<const double> x, AdSize ad_size,
                      TrainingMode mode) {
  LiftRow row;
  row.key = key;
  row.ad_size = ad_size;
  // States excluded at training time contribute zero lift.
  std::array<double, kNumStates> level{};
  std::array<bool, kNumStates> present{};
  for (int k = 0; k < kNumStates; ++k) {
    const ExposureState s(k);
    present[k] = bank.contains(s, ad_size, mode);
    if (present[k]) level[k] = bank.at(s, ad_size, mode).predict(x);
  }
  for (int k = 1; k < kNumStates; ++k) {
    row.raw[k - 1] =
        present[k] && present[k - 1] ? level[k] - level[k - 1] : 0.0;
  }
  fill_floored_smoothed(row.raw, row.floored, row.smoothed);
  return row;
}

LiftTable build_lift_table(const ModelBank& bank, const Population& users,
                           TrainingMode mode) {
  std::vector<LiftRow> rows;
  rows.reserve(users.size());
  for (const auto& u : users) {
    rows.push_back(make_lift_row(bank, u.user_id, u.x, u.ad_size, mode));
  }
  return LiftTable(std::move(rows));
}

std::array<double, kNumLiftStates> true_smoothed_lift(const UserProfile& user) {
  std::array<double, kNumLiftStates> raw{}, floored{}, smoothed{};
  for (int k = 1; k < kNumStates; ++k) {
    raw[k - 1] = true_lift(user, ExposureState(k));
  }
  fill_floored_smoothed(raw, floored, smoothed);
  return smoothed;
}

}  // namespace liftbid
