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

#include "liftbid/domain.hpp"

namespace liftbid {

struct AuctionOutcome {
  bool won = false;
  /// wp * omega: zero when the auction is lost.
  double price_paid = 0.0;
  double competitor_highest = 0.0;
};

/// Single-slot auction against the highest competing bid. Ties lose.
/// Requires bid >= 0 and competitor_highest > 0 (std::invalid_argument).
AuctionOutcome run_auction(double bid, double competitor_highest,
                           AuctionType type);

}  // namespace liftbid
