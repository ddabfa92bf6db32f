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
#include <random>
#include <string_view>

namespace liftbid {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Independent child seed for a named stream and an index (user id, hour,
/// replication). Pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t seed, std::string_view stream,
                    std::uint64_t index = 0) {
  return Rng(derive_seed(seed, stream, index));
}

/// Uniform draw in [0, 1) from a stateless hash; used for stable
/// randomization (train/test split, A/B arm assignment).
double hash_uniform(std::uint64_t seed, std::string_view stream,
                    std::uint64_t index);

}  // namespace liftbid
