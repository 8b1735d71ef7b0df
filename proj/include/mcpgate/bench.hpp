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

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcpgate/gateway.hpp"
#include "mcpgate/metrics.hpp"

namespace mcpgate {

struct LabeledCall {
    ToolCallRequest call;
    bool dangerous = false;
    std::string category;
    std::string subcategory;
};

// JSON-lines dataset plus a manifest declaring expected per-(category,
// subcategory) counts and labels. Throws std::runtime_error on unknown
// labels, categories outside the manifest schema, count mismatches, or a
// total mismatch.
std::vector<LabeledCall> load_dataset(const std::string& dataset_path,
                                      const std::string& manifest_path);

struct BenchmarkReport {
    ConfusionMatrix matrix;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    Interval wilson_accuracy;
    Interval bootstrap_f1;
    // layer_denies[k] counts calls whose deciding layer was k (1..6).
    std::array<std::uint64_t, 7> layer_denies{};
    std::uint64_t warns = 0;
    GatewayConfig config;

    nlohmann::json to_json() const;
    std::string to_table() const;  // aligned text rendering of the same facts
};

// Drives every item through gateway.check sequentially, one second of
// simulated clock apart so bucket refill never confounds verdicts. Deny is
// the positive prediction; warn-band allows count as allows.
BenchmarkReport run_benchmark(const std::vector<LabeledCall>& dataset, Gateway& gateway,
                              std::uint64_t start_ms = 1000, std::uint64_t step_ms = 1000,
                              std::size_t bootstrap_resamples = 10000,
                              std::uint64_t bootstrap_seed = 20260819);

// Builds a fresh started gateway for one sweep point.
using GatewayFactory = std::function<std::unique_ptr<Gateway>(double alpha)>;

std::vector<std::pair<double, BenchmarkReport>> alpha_sweep(
    const std::vector<LabeledCall>& dataset, const std::vector<double>& alphas,
    const GatewayFactory& factory);

// Precision-recall table over sweep points.
std::string sweep_table(const std::vector<std::pair<double, BenchmarkReport>>& reports);

}  // namespace mcpgate
