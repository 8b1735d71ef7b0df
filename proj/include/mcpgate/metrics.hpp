/*
   Copyright 2026 The mcpgate Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <vector>

namespace mcpgate {

// Deny is the positive class: tp = dangerous call denied, tn = benign call
// allowed.
struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }
};

// Each metric returns 0 when its denominator is 0.
double precision(const ConfusionMatrix& m);
double recall(const ConfusionMatrix& m);
double f1(const ConfusionMatrix& m);  // 2tp / (2tp + fp + fn)
double accuracy(const ConfusionMatrix& m);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Wilson score interval on a binomial proportion, clamped to [0, 1].
// Requires n > 0.
Interval wilson_ci(std::uint64_t successes, std::uint64_t n, double z = 1.96);

// One benchmark item's ground truth and prediction, the unit the bootstrap
// resamples over.
struct ItemOutcome {
    bool dangerous = false;  // label
    bool denied = false;     // prediction
};

ConfusionMatrix matrix_from_outcomes(const std::vector<ItemOutcome>& outcomes);

// Percentile bootstrap over items. Deterministic under a fixed seed. A
// resample with no positives (denominator 0) contributes F1 = 0.
Interval bootstrap_ci_f1(const std::vector<ItemOutcome>& outcomes,
                         std::size_t resamples = 10000, std::uint64_t seed = 20260819,
                         double level = 0.95);

}  // namespace mcpgate
