// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include "client.hpp"
#include <workbench/app/config.hpp>
#include <workbench/chain/mock_rpc_node.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/util/fs.hpp>
#include <workbench/wallet/keys.hpp>
#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>
#include <csignal>
#include <iostream>
#include <pthread.h>

namespace
{
using namespace workbench;
using namespace workbench::cli;
using nlohmann::json;

struct ServeFlags
{
    std::optional<std::filesystem::path> config;
    std::optional<std::string> bind;
    std::optional<int> port;
    std::optional<std::filesystem::path> data_dir;
    std::optional<std::filesystem::path> port_file;
};

struct ClientFlags
{
    Endpoint ep;
    unsigned timeout_s = 120;
    bool json = false;
};

void add_client_flags(CLI::App* sub, ClientFlags& f)
{
    sub->add_option("--url", f.ep.url, "Service base URL")->envname("WORKBENCH_URL")->capture_default_str();
    sub->add_option("--token", f.ep.token, "Session token")->envname("WORKBENCH_TOKEN");
    sub->add_option("--api-key", f.ep.api_key, "Application API key")->envname("WORKBENCH_API_KEY");
    sub->add_option("--timeout", f.timeout_s, "Request timeout in seconds")->capture_default_str();
    sub->add_flag("--json", f.json, "Print the raw JSON response");
}

/// Blocks SIGINT and SIGTERM on the calling thread (and on threads it
/// starts afterwards) and returns a waiter for them.
sigset_t block_termination_signals()
{
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    return set;
}

void setup_logging(const std::string& level)
{
    auto logger = spdlog::stderr_color_mt("workbench");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::from_str(level));
}

int local_error(const Error& e, std::ostream& err)
{
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for_status(http::http_status(e.code()));
}

app::Config load_config(const ServeFlags& f)
{
    auto cfg = app::Config::load(f.config);
    if (f.bind)
        cfg.bind = *f.bind;
    if (f.data_dir)
        cfg.data_dir = *f.data_dir;
    cfg.validate();
    return cfg;
}

int serve(const ServeFlags& f)
{
    const auto cfg = load_config(f);
    setup_logging(cfg.log_level);
    const auto signals = block_termination_signals();

    std::optional<app::DataDirLock> lock;
    std::unique_ptr<app::Workbench> wb;
    try
    {
        lock.emplace(cfg.data_dir);
        wb = std::make_unique<app::Workbench>(cfg);
    }
    catch (const Error& e)
    {
        spdlog::critical("refusing to start: {}: {}", to_string(e.code()), e.what());
        return exit_server;
    }

    http::HttpServer server{wb->api()};
    // --port 0 asks for any free port; the choice is reported via --port-file.
    const int port = server.bind(cfg.bind, f.port.value_or(cfg.port));
    server.start();
    if (f.port_file)
        util::write_file_atomic(*f.port_file, std::to_string(port) + "\n");
    spdlog::info("listening on http://{}:{} (data in {})", cfg.bind, port, cfg.data_dir.string());

    int sig = 0;
    sigwait(&signals, &sig);
    spdlog::info("signal {} received, shutting down", sig);
    server.stop();
    return exit_ok;
}

int init(const ServeFlags& f, const std::string& email, const std::string& password, bool as_json)
{
    const auto cfg = load_config(f);
    app::DataDirLock lock{cfg.data_dir};
    app::Workbench wb{cfg};
    const auto user = wb.registry().create_user(email, password);
    if (as_json)
        std::cout << json{{"user_id", user.id}, {"email", user.email}}.dump() << '\n';
    else
        std::cout << "created user " << user.id << " <" << user.email << ">\n";
    return exit_ok;
}

int keygen(const std::string& passphrase, uint32_t iterations, bool as_json)
{
    if (passphrase.empty())
    {
        std::cerr << "error: a passphrase is required (--passphrase or WORKBENCH_KEYSTORE_PASSPHRASE)\n";
        return exit_usage;
    }
    util::SystemRandom rng;
    const auto kp = wallet::generate_keypair(rng);
    const auto ks = wallet::encrypt_key(kp.key, passphrase, rng, iterations);
    const auto address = wallet::checksum_address(kp.address);
    if (as_json)
        std::cout << json{{"address", address}, {"keystore", ks.to_json()}}.dump() << '\n';
    else
        std::cout << "address: " << address << '\n' << ks.to_json().dump(2) << '\n';
    return exit_ok;
}

int devnode(uint64_t chain_id, const std::string& bind, int port, const std::optional<std::filesystem::path>& state,
    const std::vector<std::string>& funds, const std::optional<std::filesystem::path>& port_file)
{
    setup_logging("info");
    auto chain = std::make_shared<chain::MockChain>(chain_id, state);
    for (const auto& f : funds)
    {
        const auto colon = f.find(':');
        if (colon == std::string::npos)
        {
            std::cerr << "error: --fund expects ADDRESS:WEI\n";
            return exit_usage;
        }
        chain->fund(fixed_from_hex<20>(f.substr(0, colon)), uint256{f.substr(colon + 1)});
    }
    const auto signals = block_termination_signals();
    chain::MockRpcNode node{chain};
    const int bound = node.start(bind, port);
    if (port_file)
        util::write_file_atomic(*port_file, std::to_string(bound) + "\n");
    spdlog::info("mock node for chain {} at {}", chain_id, node.url());
    int sig = 0;
    sigwait(&signals, &sig);
    node.stop();
    return exit_ok;
}

std::string app_path(const std::string& app)
{
    return "/apps/" + app;
}

std::string contract_path(const std::string& app, const std::string& contract)
{
    return app_path(app) + "/contracts/" + contract;
}

std::string trimmed(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

int run(int argc, char** argv)
{
    CLI::App cli{"Smart-contract deployment and interaction workbench", "workbench"};
    cli.require_subcommand(1);

    ServeFlags sf;
    ClientFlags cf;
    const auto add_server_flags = [&sf](CLI::App* sub) {
        sub->add_option("-c,--config", sf.config, "Configuration file (key = value)");
        sub->add_option("--data-dir", sf.data_dir, "Data directory");
    };

    auto* serve_cmd = cli.add_subcommand("serve", "Run the HTTP service");
    add_server_flags(serve_cmd);
    serve_cmd->add_option("--bind", sf.bind, "Bind address");
    serve_cmd->add_option("--port", sf.port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--port-file", sf.port_file, "Write the bound port to this file");

    std::string email, password;
    bool local_json = false;
    auto* init_cmd = cli.add_subcommand("init", "Create a user directly in the data directory");
    add_server_flags(init_cmd);
    init_cmd->add_option("--email", email)->required();
    init_cmd->add_option("--password", password)->envname("WORKBENCH_PASSWORD")->required();
    init_cmd->add_flag("--json", local_json);

    std::string passphrase;
    uint32_t iterations = wallet::default_kdf_iterations;
    auto* keygen_cmd = cli.add_subcommand("keygen", "Print a fresh keypair as address and encrypted keystore");
    keygen_cmd->add_option("--passphrase", passphrase)->envname("WORKBENCH_KEYSTORE_PASSPHRASE");
    keygen_cmd->add_option("--iterations", iterations, "PBKDF2 iterations")->capture_default_str()->check(
        CLI::PositiveNumber);
    keygen_cmd->add_flag("--json", local_json);

    uint64_t node_chain_id = 1337;
    std::string node_bind = "127.0.0.1";
    int node_port = 8545;
    std::optional<std::filesystem::path> node_state, node_port_file;
    std::vector<std::string> node_funds;
    auto* devnode_cmd = cli.add_subcommand("devnode", "Serve an in-process mock chain over JSON-RPC");
    devnode_cmd->add_option("--chain-id", node_chain_id)->capture_default_str()->check(CLI::PositiveNumber);
    devnode_cmd->add_option("--bind", node_bind)->capture_default_str();
    devnode_cmd->add_option("--port", node_port)->capture_default_str()->check(CLI::Range(0, 65535));
    devnode_cmd->add_option("--state", node_state, "Persist chain state to this file");
    devnode_cmd->add_option("--fund", node_funds, "Pre-fund ADDRESS:WEI (repeatable)");
    devnode_cmd->add_option("--port-file", node_port_file);

    auto* register_cmd = cli.add_subcommand("register", "Create an account through the API");
    auto* login_cmd = cli.add_subcommand("login", "Obtain a session token");
    for (auto* sub : {register_cmd, login_cmd})
    {
        add_client_flags(sub, cf);
        sub->add_option("--email", email)->required();
        sub->add_option("--password", password)->envname("WORKBENCH_PASSWORD")->required();
    }

    std::string name, rpc_url, chain_id = "1337", gas_price;
    bool mock = false;
    auto* network_cmd = cli.add_subcommand("network-add", "Register a network");
    add_client_flags(network_cmd, cf);
    network_cmd->add_option("--name", name)->required();
    auto* rpc_opt = network_cmd->add_option("--rpc-url", rpc_url, "JSON-RPC endpoint");
    network_cmd->add_flag("--mock", mock, "Use an in-process mock chain")->excludes(rpc_opt);
    network_cmd->add_option("--chain-id", chain_id)->capture_default_str();
    network_cmd->add_option("--gas-price", gas_price, "Gas price in wei");

    std::string app_id, network_id, label, role;
    auto* app_cmd = cli.add_subcommand("app-create", "Create an application");
    add_client_flags(app_cmd, cf);
    app_cmd->add_option("--name", name)->required();
    app_cmd->add_option("--network", network_id)->required();

    auto* key_cmd = cli.add_subcommand("key-create", "Issue an API key for an application");
    add_client_flags(key_cmd, cf);
    key_cmd->add_option("--app", app_id)->required();
    key_cmd->add_option("--label", label);

    auto* share_cmd = cli.add_subcommand("share", "Share an application with another user");
    add_client_flags(share_cmd, cf);
    share_cmd->add_option("--app", app_id)->required();
    share_cmd->add_option("--email", email)->required();
    share_cmd->add_option("--role", role)->required()->check(CLI::IsMember({"viewer", "caller", "editor"}));

    std::string contract, abi_arg, bytecode_arg, args_arg = "[]", method, outputs_arg, raw_arg;
    std::optional<std::string> version, gas_limit;
    bool new_version = false;
    auto* deploy_cmd = cli.add_subcommand("deploy", "Deploy a contract (or a new version of one)");
    add_client_flags(deploy_cmd, cf);
    deploy_cmd->add_option("--app", app_id)->required();
    deploy_cmd->add_option("--contract", contract, "Contract name")->required();
    deploy_cmd->add_option("--abi", abi_arg, "ABI JSON, or @file")->required();
    deploy_cmd->add_option("--bytecode", bytecode_arg, "Creation bytecode hex, or @file")->required();
    deploy_cmd->add_option("--args", args_arg, "Constructor arguments as a JSON array, or @file")->capture_default_str();
    deploy_cmd->add_option("--gas-limit", gas_limit);
    deploy_cmd->add_flag("--new-version", new_version, "Add a version to an existing contract");

    auto* invoke_cmd = cli.add_subcommand("invoke", "Send a state-changing transaction");
    auto* call_cmd = cli.add_subcommand("call", "Run a read-only call");
    auto* stub_cmd = cli.add_subcommand("stub", "Set a mock-chain return value for a method");
    for (auto* sub : {invoke_cmd, call_cmd, stub_cmd})
    {
        add_client_flags(sub, cf);
        sub->add_option("--app", app_id)->required();
        sub->add_option("--contract", contract)->required();
        sub->add_option("--method", method, "Method name or signature")->required();
        sub->add_option("--version", version, "Contract version (default: active)");
    }
    for (auto* sub : {invoke_cmd, call_cmd})
        sub->add_option("--args", args_arg, "Arguments as a JSON array, or @file")->capture_default_str();
    invoke_cmd->add_option("--gas-limit", gas_limit);
    auto* outputs_opt = stub_cmd->add_option("--outputs", outputs_arg, "Return values as a JSON array");
    stub_cmd->add_option("--raw", raw_arg, "Raw return data hex")->excludes(outputs_opt);

    auto* details_cmd = cli.add_subcommand("details", "Show a contract's versions, methods and accounts");
    add_client_flags(details_cmd, cf);
    details_cmd->add_option("--app", app_id)->required();
    details_cmd->add_option("--contract", contract)->required();

    try
    {
        cli.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int rc = cli.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (serve_cmd->parsed())
            return serve(sf);
        if (init_cmd->parsed())
            return init(sf, email, password, local_json);
        if (keygen_cmd->parsed())
            return keygen(passphrase, iterations, local_json);
        if (devnode_cmd->parsed())
            return devnode(node_chain_id, node_bind, node_port, node_state, node_funds, node_port_file);

        cf.ep.timeout = std::chrono::seconds{cf.timeout_s};
        const Output out{std::cout, std::cerr, cf.json};
        const auto post = [&](const std::string& path, const json& body) {
            return send(cf.ep, "POST", path, std::optional<json>{body});
        };
        const auto with_version = [&](json body) {
            if (version)
                body["version"] = *version;
            return body;
        };

        if (register_cmd->parsed())
            return report(out, post("/auth/register", {{"email", email}, {"password", password}}),
                [](std::ostream& os, const json& b) { os << "registered " << b.value("user_id", "") << '\n'; });
        if (login_cmd->parsed())
            return report(out, post("/auth/login", {{"email", email}, {"password", password}}),
                [](std::ostream& os, const json& b) { os << b.value("token", "") << '\n'; });
        if (network_cmd->parsed())
        {
            if (!mock && rpc_url.empty())
            {
                std::cerr << "error: give either --mock or --rpc-url\n";
                return exit_usage;
            }
            json body{{"name", name}, {"chain_id", chain_id}};
            if (mock)
                body["kind"] = "mock";
            else
                body["rpc_url"] = rpc_url;
            if (!gas_price.empty())
                body["gas_price"] = gas_price;
            return report(out, post("/networks", body), [](std::ostream& os, const json& b) {
                os << b.value("id", "") << ' ' << b.value("name", "") << " (chain " << b.value("chain_id", "") << ")\n";
            });
        }
        if (app_cmd->parsed())
            return report(out, post("/apps", {{"name", name}, {"network_id", network_id}}),
                [](std::ostream& os, const json& b) {
                    os << b["app"].value("id", "") << " deployer " << b.value("deployer_address", "") << '\n';
                });
        if (key_cmd->parsed())
            return report(out, post(app_path(app_id) + "/keys", {{"label", label}}),
                [](std::ostream& os, const json& b) { os << b.value("token", "") << '\n'; });
        if (share_cmd->parsed())
            return report(out, post(app_path(app_id) + "/share", {{"email", email}, {"role", role}}),
                [&](std::ostream& os, const json&) { os << "shared " << app_id << " with " << email << '\n'; });
        if (deploy_cmd->parsed())
        {
            json body{{"abi", json_argument(abi_arg, "--abi")}, {"bytecode", trimmed(literal_or_file(bytecode_arg))},
                {"constructor_args", json_argument(args_arg, "--args")}};
            if (gas_limit)
                body["gas_limit"] = *gas_limit;
            std::string path = app_path(app_id) + "/contracts";
            if (new_version)
                path = contract_path(app_id, contract) + "/versions";
            else
                body["name"] = contract;
            return report(out, post(path, body), [&](std::ostream& os, const json& b) {
                os << "deployed " << contract << " version " << b.value("version", 0) << " at "
                   << b.value("address", "") << " (tx " << b.value("tx_hash", "") << ")\n";
            });
        }
        if (invoke_cmd->parsed())
        {
            auto body = with_version({{"method", method}, {"args", json_argument(args_arg, "--args")}});
            if (gas_limit)
                body["gas_limit"] = *gas_limit;
            return report(out, post(contract_path(app_id, contract) + "/invoke", body),
                [](std::ostream& os, const json& b) {
                    const auto& r = b["receipt"];
                    os << b.value("tx_hash", "") << ' ' << r.value("status", "") << " block "
                       << r.value("block_number", "") << " gas " << r.value("gas_used", "") << '\n';
                });
        }
        if (call_cmd->parsed())
            return report(out,
                post(contract_path(app_id, contract) + "/call",
                    with_version({{"method", method}, {"args", json_argument(args_arg, "--args")}})),
                [](std::ostream& os, const json& b) { os << b["outputs"].dump() << '\n'; });
        if (stub_cmd->parsed())
        {
            auto body = with_version({{"method", method}});
            if (!raw_arg.empty())
                body["raw"] = raw_arg;
            else if (!outputs_arg.empty())
                body["outputs"] = json_argument(outputs_arg, "--outputs");
            else
            {
                std::cerr << "error: give either --outputs or --raw\n";
                return exit_usage;
            }
            return report(out, post(contract_path(app_id, contract) + "/stubs", body),
                [&](std::ostream& os, const json&) { os << "stubbed " << contract << '.' << method << '\n'; });
        }
        if (details_cmd->parsed())
            return report(out, send(cf.ep, "GET", contract_path(app_id, contract)));
    }
    catch (const Error& e)
    {
        return local_error(e, std::cerr);
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_server;
    }
    return exit_usage;
}
}  // namespace

int main(int argc, char** argv)
{
    return run(argc, argv);
}
