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

#include "liftbid/rng.hpp"

namespace liftbid {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                          std::uint64_t index) {
  // FNV-1a over the stream name keeps stream tags stable across builds.
  std::uint64_t tag = 0xCBF29CE484222325ULL;
  for (unsigned char c : stream) {
    tag ^= c;
    tag *= 0x100000001B3ULL;
  }
  return splitmix64(splitmix64(splitmix64(seed) ^ tag) ^ index);
}

double hash_uniform(std::uint64_t seed, std::string_view stream,
                    std::uint64_t index) {
  return static_cast<double>(derive_seed(seed, stream, index) >> 11) *
         0x1.0p-53;
}

}  // namespace liftbid
