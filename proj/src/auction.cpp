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

#include "liftbid/auction.hpp"

#include <stdexcept>

namespace liftbid {

AuctionOutcome run_auction(double bid, double competitor_highest,
                           AuctionType type) {
  if (!(bid >= 0.0)) throw std::invalid_argument("bid must be >= 0");
  if (!(competitor_highest > 0.0)) {
    throw std::invalid_argument("competitor_highest must be > 0");
  }
  AuctionOutcome out;
  out.competitor_highest = competitor_highest;
  out.won = bid > competitor_highest;
  if (out.won) {
    out.price_paid =
        type == AuctionType::kSecondPrice ? competitor_highest : bid;
  }
  return out;
}

}  // namespace liftbid
