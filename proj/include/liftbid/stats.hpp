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

#include <cstddef>
#include <span>

// Small descriptive and testing statistics used by the experiment harness.
namespace liftbid::stats {

double mean(std::span<const double> xs);
/// Unbiased sample variance; 0 for fewer than two values.
double variance(std::span<const double> xs);
double standard_error(std::span<const double> xs);
/// Sample standard deviation over mean. Requires a nonzero mean.
double coefficient_of_variation(std::span<const double> xs);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> xs, std::span<const double> ys);
double pearson(std::span<const double> xs, std::span<const double> ys);

/// One-sided exact sign test: P(X >= successes) for X ~ Binomial(trials, 1/2).
double sign_test_p_value(std::size_t successes, std::size_t trials);

/// Two-sided p-value of Welch's two-sample test for equal means, using the
/// normal reference distribution (intended for large samples).
double welch_p_value(std::span<const double> a, std::span<const double> b);

}  // namespace liftbid::stats
