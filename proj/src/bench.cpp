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

#include "mcpgate/bench.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mcpgate {

namespace {

struct SubcatSpec {
    std::size_t count = 0;
    bool dangerous = false;
    std::size_t seen = 0;
};

std::string dataset_error(std::size_t line_no, const std::string& what) {
    return "dataset line " + std::to_string(line_no) + ": " + what;
}

}  // namespace

std::vector<LabeledCall> load_dataset(const std::string& dataset_path,
                                      const std::string& manifest_path) {
    std::ifstream manifest_in(manifest_path);
    if (!manifest_in) throw std::runtime_error("manifest unreadable: " + manifest_path);
    const auto manifest = nlohmann::json::parse(manifest_in, nullptr,
                                                /*allow_exceptions=*/false);
    if (manifest.is_discarded() || !manifest.is_object() || !manifest.contains("categories") ||
        !manifest.contains("total")) {
        throw std::runtime_error("manifest malformed: " + manifest_path);
    }

    std::map<std::pair<std::string, std::string>, SubcatSpec> schema;
    for (const auto& [category, subcats] : manifest["categories"].items()) {
        if (!subcats.is_object()) throw std::runtime_error("manifest category malformed");
        for (const auto& [subcategory, spec] : subcats.items()) {
            if (!spec.is_object() || !spec.contains("count") || !spec.contains("label")) {
                throw std::runtime_error("manifest subcategory malformed");
            }
            const std::string label = spec["label"].get<std::string>();
            if (label != "dangerous" && label != "benign") {
                throw std::runtime_error("manifest label outside {dangerous, benign}");
            }
            schema[{category, subcategory}] =
                SubcatSpec{spec["count"].get<std::size_t>(), label == "dangerous", 0};
        }
    }

    std::ifstream dataset_in(dataset_path);
    if (!dataset_in) throw std::runtime_error("dataset unreadable: " + dataset_path);

    std::vector<LabeledCall> items;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(dataset_in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto doc = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded() || !doc.is_object()) {
            throw std::runtime_error(dataset_error(line_no, "not a JSON object"));
        }
        for (const char* field : {"call", "label", "category", "subcategory"}) {
            if (!doc.contains(field)) {
                throw std::runtime_error(dataset_error(line_no, std::string("missing ") + field));
            }
        }
        const std::string label = doc["label"].get<std::string>();
        if (label != "dangerous" && label != "benign") {
            throw std::runtime_error(dataset_error(line_no, "label '" + label + "'"));
        }

        LabeledCall item;
        item.dangerous = label == "dangerous";
        item.category = doc["category"].get<std::string>();
        item.subcategory = doc["subcategory"].get<std::string>();

        const auto key = std::make_pair(item.category, item.subcategory);
        const auto slot = schema.find(key);
        if (slot == schema.end()) {
            throw std::runtime_error(dataset_error(
                line_no, "category " + item.category + "/" + item.subcategory +
                             " outside the manifest schema"));
        }
        if (slot->second.dangerous != item.dangerous) {
            throw std::runtime_error(
                dataset_error(line_no, "label disagrees with the manifest"));
        }
        ++slot->second.seen;

        const auto& call = doc["call"];
        if (!call.is_object() || !call.contains("name") || !call.contains("agent")) {
            throw std::runtime_error(dataset_error(line_no, "call missing name/agent"));
        }
        item.call.tool_name = call["name"].get<std::string>();
        item.call.agent_id = call["agent"].get<std::string>();
        item.call.args = call.contains("arguments") ? call["arguments"]
                                                    : nlohmann::json::object();
        item.call.raw_bytes_len = line.size();
        items.push_back(std::move(item));
    }

    for (const auto& [key, spec] : schema) {
        if (spec.seen != spec.count) {
            throw std::runtime_error("category " + key.first + "/" + key.second + " has " +
                                     std::to_string(spec.seen) + " items, manifest declares " +
                                     std::to_string(spec.count));
        }
    }
    if (items.size() != manifest["total"].get<std::size_t>()) {
        throw std::runtime_error("dataset total " + std::to_string(items.size()) +
                                 " disagrees with the manifest");
    }
    return items;
}

BenchmarkReport run_benchmark(const std::vector<LabeledCall>& dataset, Gateway& gateway,
                              std::uint64_t start_ms, std::uint64_t step_ms,
                              std::size_t bootstrap_resamples, std::uint64_t bootstrap_seed) {
    if (dataset.empty()) throw std::invalid_argument("benchmark refuses an empty dataset");

    BenchmarkReport report;
    report.config = gateway.config();

    std::vector<ItemOutcome> outcomes;
    outcomes.reserve(dataset.size());
    std::uint64_t now = start_ms;
    for (const auto& item : dataset) {
        const auto outcome = gateway.check(item.call, now);
        now += step_ms;
        const bool denied = outcome.verdict.denied();
        outcomes.push_back({item.dangerous, denied});
        if (denied) {
            ++report.layer_denies[static_cast<std::size_t>(outcome.verdict.deciding_layer)];
        } else if (outcome.verdict.warn) {
            ++report.warns;
        }
    }

    report.matrix = matrix_from_outcomes(outcomes);
    report.precision = mcpgate::precision(report.matrix);
    report.recall = mcpgate::recall(report.matrix);
    report.f1 = mcpgate::f1(report.matrix);
    report.accuracy = mcpgate::accuracy(report.matrix);
    report.wilson_accuracy = wilson_ci(report.matrix.tp + report.matrix.tn,
                                       report.matrix.total());
    report.bootstrap_f1 = bootstrap_ci_f1(outcomes, bootstrap_resamples, bootstrap_seed);
    return report;
}

nlohmann::json BenchmarkReport::to_json() const {
    nlohmann::json layers = nlohmann::json::object();
    for (int layer = 1; layer <= 6; ++layer) {
        layers["layer" + std::to_string(layer)] =
            layer_denies[static_cast<std::size_t>(layer)];
    }
    return {{"matrix",
             {{"tp", matrix.tp}, {"fp", matrix.fp}, {"fn", matrix.fn}, {"tn", matrix.tn}}},
            {"precision", precision},
            {"recall", recall},
            {"f1", f1},
            {"accuracy", accuracy},
            {"wilson_ci_accuracy", {wilson_accuracy.lo, wilson_accuracy.hi}},
            {"bootstrap_ci_f1", {bootstrap_f1.lo, bootstrap_f1.hi}},
            {"layer_denies", layers},
            {"warns", warns},
            {"config", config.to_json()}};
}

std::string BenchmarkReport::to_table() const {
    char buf[256];
    std::ostringstream out;
    out << "metric       value\n";
    out << "-----------  ------------------\n";
    std::snprintf(buf, sizeof buf, "%-12s tp=%llu fp=%llu fn=%llu tn=%llu\n", "matrix",
                  static_cast<unsigned long long>(matrix.tp),
                  static_cast<unsigned long long>(matrix.fp),
                  static_cast<unsigned long long>(matrix.fn),
                  static_cast<unsigned long long>(matrix.tn));
    out << buf;
    std::snprintf(buf, sizeof buf, "%-12s %.4f\n", "precision", precision);
    out << buf;
    std::snprintf(buf, sizeof buf, "%-12s %.4f\n", "recall", recall);
    out << buf;
    std::snprintf(buf, sizeof buf, "%-12s %.4f\n", "f1", f1);
    out << buf;
    std::snprintf(buf, sizeof buf, "%-12s %.4f\n", "accuracy", accuracy);
    out << buf;
    std::snprintf(buf, sizeof buf, "%-12s [%.3f, %.3f]\n", "wilson-acc", wilson_accuracy.lo,
                  wilson_accuracy.hi);
    out << buf;
    std::snprintf(buf, sizeof buf, "%-12s [%.3f, %.3f]\n", "boot-f1", bootstrap_f1.lo,
                  bootstrap_f1.hi);
    out << buf;
    out << "deny-by-layer";
    for (int layer = 1; layer <= 6; ++layer) {
        std::snprintf(buf, sizeof buf, " L%d=%llu", layer,
                      static_cast<unsigned long long>(
                          layer_denies[static_cast<std::size_t>(layer)]));
        out << buf;
    }
    std::snprintf(buf, sizeof buf, " warns=%llu\n", static_cast<unsigned long long>(warns));
    out << buf;
    return out.str();
}

std::vector<std::pair<double, BenchmarkReport>> alpha_sweep(
    const std::vector<LabeledCall>& dataset, const std::vector<double>& alphas,
    const GatewayFactory& factory) {
    std::vector<std::pair<double, BenchmarkReport>> reports;
    reports.reserve(alphas.size());
    for (const double alpha : alphas) {
        auto gateway = factory(alpha);
        reports.emplace_back(alpha, run_benchmark(dataset, *gateway));
    }
    return reports;
}

std::string sweep_table(const std::vector<std::pair<double, BenchmarkReport>>& reports) {
    std::ostringstream out;
    out << "alpha  precision  recall  f1      tp  fp  fn  tn\n";
    char buf[128];
    for (const auto& [alpha, report] : reports) {
        std::snprintf(buf, sizeof buf, "%-5.2f  %-9.4f  %-6.4f  %-6.4f  %-3llu %-3llu %-3llu %-3llu\n",
                      alpha, report.precision, report.recall, report.f1,
                      static_cast<unsigned long long>(report.matrix.tp),
                      static_cast<unsigned long long>(report.matrix.fp),
                      static_cast<unsigned long long>(report.matrix.fn),
                      static_cast<unsigned long long>(report.matrix.tn));
        out << buf;
    }
    return out.str();
}

}  // namespace mcpgate
