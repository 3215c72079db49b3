// Copyright 2026 The DatChain Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <CLI11.hpp>
#include <sys/stat.h>

#include <csignal>
#include <fstream>
#include <iostream>

#include "datchain/consensus/config.hpp"
#include "datchain/service/http_server.hpp"
#include "datchain/service/ledger_io.hpp"
#include "datchain/sim/simulator.hpp"

using namespace datchain;

namespace {

service::HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

consensus::ConsensusConfig engine_of(const std::filesystem::path& dir) {
    auto meta = service::read_meta(dir);
    if (!meta) throw std::runtime_error("no ledger.meta in " + dir.string());
    return meta->engine;
}

int node_run(const std::string& config_path, int port_override) {
    auto config = service::load_node_config(config_path);
    if (port_override >= 0) config.port = port_override;
    auto node = service::Node::open(config);
    service::HttpServer server(*node);
    int port = server.bind(config.host, config.port);
    if (port < 0) {
        std::cerr << "cannot bind " << config.host << ":" << config.port << "\n";
        return 1;
    }
    std::cout << "datchain node " << node->operator_address().hex() << " mode=" << ledger::to_string(config.ledger_mode)
              << " engine=" << consensus::format_config(config.engine) << " listening on " << config.host << ":"
              << port << std::endl;
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.run();
    g_server = nullptr;
    return 0;
}

int keygen(const std::string& out) {
    auto keys = KeyPair::generate();
    write_file(out, to_hex(keys.seed()) + "\n");
    ::chmod(out.c_str(), 0600);
    std::cout << "address " << keys.address().hex() << "\npublic_key " << to_base64(keys.public_key()) << "\n";
    return 0;
}

int ledger_verify(const std::filesystem::path& dir) {
    auto loaded = service::load_ledger(dir, engine_of(dir));
    const char* unit = loaded.mode == ledger::LedgerMode::Chain ? "block" : "site";
    if (!loaded.report.valid) {
        std::cerr << "ledger invalid: first bad " << unit << " " << loaded.report.first_bad_index << " ("
                  << ledger::to_string(loaded.report.reason) << ")";
        if (!loaded.report.detail.empty()) std::cerr << ": " << loaded.report.detail;
        std::cerr << "\n";
        return 1;
    }
    const std::size_t n = loaded.mode == ledger::LedgerMode::Chain ? loaded.blocks.size() : loaded.sites.size();
    std::cout << "ledger ok: " << n << " " << unit << "s\n";
    return 0;
}

int market_replay(const std::filesystem::path& dir) {
    auto loaded = service::load_ledger(dir, engine_of(dir));
    if (!loaded.report.valid) {
        std::cerr << "ledger invalid at record " << loaded.report.first_bad_index << " ("
                  << ledger::to_string(loaded.report.reason) << ")\n";
        return 1;
    }
    auto state = service::replay_market(loaded);
    std::cout << "accounts " << state.accounts().size() << "\nsensors " << state.sensors().size()
              << "\nsubscriptions " << state.subscriptions().size() << "\nenvelopes " << state.envelopes().size()
              << "\ndeliveries " << state.deliveries().size() << "\ntotal_supply " << state.total_supply()
              << "\nbalance_sum " << state.balance_sum() << "\ndigest " << state.digest().hex() << "\n";
    return state.total_supply() == state.balance_sum() ? 0 : 1;
}

int sim_run(const std::string& scenario, const std::string& out) {
    auto result = sim::run_scenario(sim::load_scenario(scenario));
    std::vector<sim::SimMetrics> rows{result.metrics};
    std::string csv = sim::metrics_csv(rows);
    if (out.empty() || out == "-")
        std::cout << csv;
    else
        write_file(out, csv);
    return 0;
}

int sim_compare(const std::string& engines, const std::string& scenario, const std::string& out) {
    sim::SimScenario base = scenario.empty() ? sim::SimScenario{} : sim::load_scenario(scenario);
    std::vector<consensus::ConsensusConfig> list;
    for (const auto& name : split(engines, ',')) {
        if (name == consensus::engine_name(base.engine))
            list.push_back(base.engine);
        else
            list.push_back(sim::resolve_engine(name, base.node_count));
    }
    auto rows = sim::compare_engines(base, list);
    std::string csv = sim::metrics_csv(rows);
    if (out.empty() || out == "-")
        std::cout << csv;
    else
        write_file(out, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DatChain IoT data marketplace node and tools"};
    app.require_subcommand(1);
    int rc = 0;

    auto* node = app.add_subcommand("node", "Run a node")->require_subcommand(1);
    auto* run = node->add_subcommand("run", "Serve the HTTP API");
    std::string config_path;
    int port = -1;
    run->add_option("--config", config_path, "Node config file")->required()->check(CLI::ExistingFile);
    run->add_option("--port", port, "Override the configured port");

    auto* kg = app.add_subcommand("keygen", "Generate an account key seed");
    std::string key_out;
    kg->add_option("--out", key_out, "Seed file to write")->required();

    auto* ledger_cmd = app.add_subcommand("ledger", "Ledger tools")->require_subcommand(1);
    auto* verify = ledger_cmd->add_subcommand("verify", "Verify the ledger in a data directory");
    std::string data_dir;
    verify->add_option("--data-dir", data_dir)->required()->check(CLI::ExistingDirectory);

    auto* sim_cmd = app.add_subcommand("sim", "Network simulator")->require_subcommand(1);
    auto* sim_run_cmd = sim_cmd->add_subcommand("run", "Run one scenario");
    std::string scenario, csv_out;
    sim_run_cmd->add_option("--scenario", scenario)->required()->check(CLI::ExistingFile);
    sim_run_cmd->add_option("--out", csv_out, "CSV file, - for stdout")->default_val("-");
    auto* sim_cmp = sim_cmd->add_subcommand("compare", "Run one scenario under several engines");
    std::string engines;
    sim_cmp->add_option("--engines", engines, "Comma separated, e.g. pow,pbft,rpca")->required();
    sim_cmp->add_option("--scenario", scenario, "Base scenario")->check(CLI::ExistingFile);
    sim_cmp->add_option("--out", csv_out, "CSV file, - for stdout")->default_val("-");

    auto* market_cmd = app.add_subcommand("market", "Marketplace tools")->require_subcommand(1);
    auto* replay = market_cmd->add_subcommand("replay", "Rebuild market state from the ledger");
    replay->add_option("--data-dir", data_dir)->required()->check(CLI::ExistingDirectory);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) rc = node_run(config_path, port);
        else if (kg->parsed()) rc = keygen(key_out);
        else if (verify->parsed()) rc = ledger_verify(data_dir);
        else if (sim_run_cmd->parsed()) rc = sim_run(scenario, csv_out);
        else if (sim_cmp->parsed()) rc = sim_compare(engines, scenario, csv_out);
        else if (replay->parsed()) rc = market_replay(data_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
