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

#include "mcpgate/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mcpgate {

double precision(const ConfusionMatrix& m) {
    const auto denom = m.tp + m.fp;
    return denom == 0 ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(denom);
}

double recall(const ConfusionMatrix& m) {
    const auto denom = m.tp + m.fn;
    return denom == 0 ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(denom);
}

double f1(const ConfusionMatrix& m) {
    const auto denom = 2 * m.tp + m.fp + m.fn;
    return denom == 0 ? 0.0 : static_cast<double>(2 * m.tp) / static_cast<double>(denom);
}

double accuracy(const ConfusionMatrix& m) {
    const auto n = m.total();
    return n == 0 ? 0.0 : static_cast<double>(m.tp + m.tn) / static_cast<double>(n);
}

Interval wilson_ci(std::uint64_t successes, std::uint64_t n, double z) {
    if (n == 0) throw std::invalid_argument("wilson_ci: n must be positive");
    if (successes > n) throw std::invalid_argument("wilson_ci: successes exceed n");
    const double nn = static_cast<double>(n);
    const double p_hat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p_hat + z2 / (2.0 * nn)) / denom;
    const double half =
        (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ConfusionMatrix matrix_from_outcomes(const std::vector<ItemOutcome>& outcomes) {
    ConfusionMatrix m;
    for (const auto& item : outcomes) {
        if (item.dangerous && item.denied) ++m.tp;
        else if (!item.dangerous && item.denied) ++m.fp;
        else if (item.dangerous && !item.denied) ++m.fn;
        else ++m.tn;
    }
    return m;
}

Interval bootstrap_ci_f1(const std::vector<ItemOutcome>& outcomes, std::size_t resamples,
                         std::uint64_t seed, double level) {
    if (outcomes.empty()) throw std::invalid_argument("bootstrap_ci_f1: no outcomes");
    if (resamples == 0) throw std::invalid_argument("bootstrap_ci_f1: no resamples");
    if (level <= 0.0 || level >= 1.0) {
        throw std::invalid_argument("bootstrap_ci_f1: level outside (0,1)");
    }

    std::mt19937_64 rng(seed);
    const std::size_t n = outcomes.size();
    std::vector<double> f1s;
    f1s.reserve(resamples);
    for (std::size_t r = 0; r < resamples; ++r) {
        ConfusionMatrix m;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& item = outcomes[rng() % n];
            if (item.dangerous && item.denied) ++m.tp;
            else if (!item.dangerous && item.denied) ++m.fp;
            else if (item.dangerous && !item.denied) ++m.fn;
        }
        f1s.push_back(f1(m));  // zero-positive resample scores 0 by the 0/0 rule
    }
    std::sort(f1s.begin(), f1s.end());

    const double tail = (1.0 - level) / 2.0;
    const auto idx_lo = static_cast<std::size_t>(
        std::floor(tail * static_cast<double>(resamples - 1)));
    const auto idx_hi = static_cast<std::size_t>(
        std::floor((1.0 - tail) * static_cast<double>(resamples - 1)));
    return {f1s[idx_lo], f1s[idx_hi]};
}

}  // namespace mcpgate
