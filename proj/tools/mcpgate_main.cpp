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

// Single binary: serve, bench run, calibrate, mediate, audit verify.
// Machine-readable JSON goes to stdout, diagnostics to stderr. Exit codes:
// 0 success, 2 usage or unreadable input, 3 refused to start (fail closed),
// 4 audit verification break, 5 mediation failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mcpgate/audit.hpp"
#include "mcpgate/bench.hpp"
#include "mcpgate/constitution.hpp"
#include "mcpgate/gateway.hpp"
#include "mcpgate/mediation.hpp"
#include "mcpgate/prefilter.hpp"
#include "mcpgate/probe.hpp"
#include "mcpgate/probe_backends.hpp"
#include "mcpgate/registry.hpp"
#include "mcpgate/transport.hpp"
#include "mcpgate/trust.hpp"

namespace {

using mcpgate::Gateway;
using mcpgate::GatewayConfig;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

GatewayConfig load_config(const std::string& config_path) {
    if (config_path.empty()) return GatewayConfig{};
    return GatewayConfig::from_json(nlohmann::json::parse(slurp(config_path)));
}

struct Built {
    std::shared_ptr<mcpgate::ProbeBackend> backend;
    std::unique_ptr<Gateway> gateway;
};

// Empty path fields fall back to the compiled-in defaults; the probe backend
// defaults to the keyword oracle when no logit fixture is named.
Built build_gateway(const GatewayConfig& config) {
    auto registry = config.tools_path.empty()
                        ? mcpgate::default_tool_registry()
                        : mcpgate::ToolRegistry::from_json(slurp(config.tools_path));
    auto agents = config.agents_path.empty()
                      ? mcpgate::default_agent_manifest()
                      : mcpgate::AgentManifest::from_json(slurp(config.agents_path));
    auto prefilter = config.rules_path.empty()
                         ? mcpgate::Prefilter::defaults()
                         : mcpgate::Prefilter::from_json(slurp(config.rules_path));
    auto constitution = mcpgate::Constitution::from_json(
        config.principles_path.empty() ? mcpgate::Constitution::default_json()
                                       : slurp(config.principles_path));

    std::shared_ptr<mcpgate::ProbeBackend> backend;
    if (config.logit_fixture_path.empty()) {
        backend = std::make_shared<mcpgate::HeuristicOracleBackend>();
    } else {
        backend = std::make_shared<mcpgate::ScriptedFixtureBackend>(
            mcpgate::ScriptedFixtureBackend::from_json(
                nlohmann::json::parse(slurp(config.logit_fixture_path))));
    }

    Built built;
    built.backend = backend;
    built.gateway = std::make_unique<Gateway>(std::move(registry), std::move(agents),
                                              std::move(prefilter), std::move(constitution),
                                              config, backend, config.audit_sink_path);
    return built;
}

int run_serve(const GatewayConfig& config, const std::string& transport,
              const std::string& bind, bool quiet) {
    Built built = build_gateway(config);
    if (!built.gateway->start()) {
        std::cerr << "refusing to start: probe engine failed fertility or calibration "
                     "(fail closed)\n";
        return 3;
    }
    mcpgate::LoopbackUpstream upstream(built.gateway->registry());
    mcpgate::Dispatcher dispatcher(*built.gateway, upstream);

    if (transport == "stdio") {
        if (!quiet) std::cerr << "[mcpgate] serving stdio, one JSON-RPC frame per line\n";
        const std::size_t frames = mcpgate::serve_stdio(std::cin, std::cout, dispatcher);
        if (!quiet) std::cerr << "[mcpgate] input closed after " << frames << " frames\n";
        return 0;
    }

    const auto colon = bind.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= bind.size()) {
        std::cerr << "--bind expects host:port, got '" << bind << "'\n";
        return 2;
    }
    const std::string host = bind.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(bind.substr(colon + 1));
    } catch (const std::exception&) {
        std::cerr << "--bind port is not a number: '" << bind << "'\n";
        return 2;
    }
    if (!quiet) std::cerr << "[mcpgate] serving http on " << host << ":" << port << " /mcp\n";
    mcpgate::HttpGatewayServer server(dispatcher);
    if (!server.serve(host, port)) {
        std::cerr << "cannot bind " << bind << "\n";
        return 2;
    }
    return 0;
}

int run_bench(const GatewayConfig& base_config, const std::string& dataset_path,
              const std::string& manifest_path, const std::vector<int>& disabled_layers,
              bool sweep, bool quiet) {
    GatewayConfig config = base_config;
    for (const int layer : disabled_layers) {
        if (layer == 4) config.enable_prefilter = false;
        if (layer == 5) config.enable_probe = false;
        if (layer == 6) config.enable_constitution = false;
    }

    const auto dataset = mcpgate::load_dataset(dataset_path, manifest_path);

    if (sweep) {
        const std::vector<double> alphas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
        const auto reports = mcpgate::alpha_sweep(dataset, alphas, [&config](double alpha) {
            GatewayConfig point = config;
            point.alpha = alpha;
            Built built = build_gateway(point);
            if (!built.gateway->start()) {
                throw std::runtime_error("gateway refused to start during sweep");
            }
            return std::move(built.gateway);
        });
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& [alpha, report] : reports) {
            doc.push_back({{"alpha", alpha}, {"report", report.to_json()}});
        }
        std::cout << doc.dump(2) << "\n";
        if (!quiet) std::cerr << mcpgate::sweep_table(reports);
        return 0;
    }

    Built built = build_gateway(config);
    if (!built.gateway->start()) {
        std::cerr << "refusing to start: probe engine failed fertility or calibration "
                     "(fail closed)\n";
        return 3;
    }
    const auto report = mcpgate::run_benchmark(dataset, *built.gateway);
    std::cout << report.to_json().dump(2) << "\n";
    if (!quiet) std::cerr << report.to_table();
    return 0;
}

int run_calibrate(const GatewayConfig& config) {
    Built built = build_gateway(config);
    const auto pair =
        mcpgate::token_fertility_check(mcpgate::default_verbalizer_candidates(), *built.backend);
    if (!pair) {
        std::cerr << "no single-token verbalizer pair; refusing to calibrate (fail closed)\n";
        return 3;
    }
    const auto cal = mcpgate::calibrate(*built.backend, *pair, config.alpha);
    if (!cal) {
        std::cerr << "calibration failed: backend not ready or restore failed (fail closed)\n";
        return 3;
    }
    const nlohmann::json doc = {
        {"pair", {{"safe", pair->safe_word}, {"dangerous", pair->dangerous_word}}},
        {"bias", cal->bias},
        {"alpha", cal->alpha},
        {"null_prompt_count", cal->null_prompt_count},
    };
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int run_mediate(const GatewayConfig& config, const std::string& report_path, bool quiet) {
    Built built = build_gateway(config);
    if (!built.gateway->start()) {
        std::cerr << "refusing to start: probe engine failed fertility or calibration "
                     "(fail closed)\n";
        return 3;
    }
    const auto report =
        mcpgate::run_mediation_traversal(*built.gateway, mcpgate::default_host_functions());
    const std::string rendered = report.to_json().dump(2) + "\n";
    std::cout << rendered;
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "cannot write report to " << report_path << "\n";
            return 2;
        }
        out << rendered;
    }
    if (!quiet) {
        std::cerr << "[mcpgate] " << report.paths.size() << " paths, "
                  << report.total_increments << " governance increments, "
                  << (report.pass ? "complete mediation holds" : "MEDIATION GAP") << "\n";
    }
    return report.pass ? 0 : 5;
}

int run_audit_verify(const std::string& path) {
    const auto result = mcpgate::verify_sink_file(path);
    const nlohmann::json doc = {
        {"ok", result.ok},
        {"first_break", result.ok ? nlohmann::json(nullptr) : nlohmann::json(result.first_break)},
    };
    std::cout << doc.dump(2) << "\n";
    if (!result.ok) {
        std::cerr << "chain break at record " << result.first_break << "\n";
        return 4;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Governed MCP gateway: six-layer governance over tool calls"};
    app.require_subcommand(1);

    std::string config_path;
    std::string transport = "stdio";
    std::string bind = "127.0.0.1:8085";
    std::string dataset_path;
    std::string manifest_path;
    std::string report_path;
    std::string audit_path;
    std::vector<int> disabled_layers;
    bool sweep = false;
    std::string log_level = "info";
    app.add_option("--log-level", log_level, "stderr verbosity")
        ->check(CLI::IsMember({"quiet", "info"}));

    auto* serve = app.add_subcommand("serve", "Run the gateway over a transport");
    serve->fallthrough();
    serve->add_option("--transport", transport, "stdio or http")
        ->check(CLI::IsMember({"stdio", "http"}));
    serve->add_option("--config", config_path, "gateway config JSON")->check(CLI::ExistingFile);
    serve->add_option("--bind", bind, "host:port for the http transport");

    auto* bench = app.add_subcommand("bench", "Benchmark the governance pipeline");
    bench->fallthrough();
    bench->require_subcommand(1);
    auto* bench_run = bench->add_subcommand("run", "Replay a labeled dataset");
    bench_run->fallthrough();
    bench_run->add_option("--config", config_path, "gateway config JSON")
        ->check(CLI::ExistingFile);
    bench_run->add_option("--dataset", dataset_path, "JSONL of labeled calls")
        ->required()
        ->check(CLI::ExistingFile);
    bench_run->add_option("--manifest", manifest_path,
                          "dataset manifest (default: manifest.json beside the dataset)")
        ->check(CLI::ExistingFile);
    bench_run->add_option("--disable-layer", disabled_layers, "governance layer to switch off")
        ->check(CLI::IsMember({4, 5, 6}));
    bench_run->add_flag("--alpha-sweep", sweep, "sweep alpha over 0.1..1.0");

    auto* calibrate = app.add_subcommand("calibrate", "Print verbalizer calibration state");
    calibrate->fallthrough();
    calibrate->add_option("--config", config_path, "gateway config JSON")
        ->check(CLI::ExistingFile);

    auto* mediate = app.add_subcommand("mediate", "Run the complete-mediation traversal");
    mediate->fallthrough();
    mediate->add_option("--config", config_path, "gateway config JSON")
        ->check(CLI::ExistingFile);
    mediate->add_option("--report", report_path, "also write the JSON report here");

    auto* audit = app.add_subcommand("audit", "Audit chain utilities");
    audit->fallthrough();
    audit->require_subcommand(1);
    auto* verify = audit->add_subcommand("verify", "Verify a flushed audit sink file");
    verify->fallthrough();
    verify->add_option("file", audit_path, "sink file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const bool quiet = log_level == "quiet";

    try {
        if (*serve) return run_serve(load_config(config_path), transport, bind, quiet);
        if (*bench_run) {
            if (manifest_path.empty()) {
                manifest_path = (std::filesystem::path(dataset_path).parent_path() /
                                 "manifest.json")
                                    .string();
            }
            return run_bench(load_config(config_path), dataset_path, manifest_path,
                             disabled_layers, sweep, quiet);
        }
        if (*calibrate) return run_calibrate(load_config(config_path));
        if (*mediate) return run_mediate(load_config(config_path), report_path, quiet);
        if (*verify) return run_audit_verify(audit_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
