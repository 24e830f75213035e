// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/chain/backend.hpp>
#include <workbench/registry/registry.hpp>
#include <functional>

namespace workbench::service
{
using registry::Principal;

struct DeployRequest
{
    std::string app_id;
    std::string contract_name;
    std::string abi_json;
    std::string bytecode;  ///< 0x-hex init code
    nlohmann::json constructor_args = nlohmann::json::array();
    std::optional<uint64_t> gas_limit;
    std::optional<uint256> gas_price;
};

struct DeployResult
{
    registry::ContractVersion version;
    chain::Receipt receipt;
};

struct MethodRequest
{
    std::string app_id;
    std::string contract_name;
    std::string method;  ///< bare name or full signature
    nlohmann::json args = nlohmann::json::array();
    std::optional<uint64_t> version;
    std::optional<uint64_t> gas_limit;  ///< invoke only
};

struct InvokeResult
{
    Digest32 tx_hash;
    chain::Receipt receipt;
    uint64_t version_used = 0;
};

struct CallResult
{
    nlohmann::json outputs;  ///< JSON-surfaced values, integers as decimal strings
    uint64_t version_used = 0;
};

/// Pins the result of calls to one method on a mock network. Either
/// `outputs` (values typed by the method's outputs) or `raw` (0x-hex).
struct StubRequest
{
    MethodRequest target;
    std::optional<nlohmann::json> outputs;
    std::optional<std::string> raw;
};

using BackendFactory = std::function<std::shared_ptr<chain::Backend>(const chain::NetworkConfig&)>;

/// Mock networks persist to data_dir/mock-<network id>.json when a data
/// directory is given; rpc networks get an RpcBackend.
BackendFactory default_backend_factory(std::optional<std::filesystem::path> data_dir);

/// Deploy, invoke and call pipelines. Thread-safe; nonce allocation, signing
/// and submission are serialized per application.
class Service
{
public:
    Service(registry::Registry& registry, BackendFactory factory, util::Clock& clock);

    /// Connect-time check: an rpc node must report the configured chain id.
    /// Errors: chain_id_mismatch, chain_unreachable.
    chain::NetworkConfig add_network(const Principal& actor, chain::NetworkConfig net);

    /// Errors: abi_parse_error, type_mismatch, value_out_of_range,
    /// empty_bytecode, name_taken, chain_unreachable, receipt_timeout, tx_failed.
    DeployResult deploy_contract(const Principal& actor, const DeployRequest& req);
    /// As deploy_contract, plus no_such_contract.
    DeployResult deploy_new_version(const Principal& actor, const DeployRequest& req);

    /// Errors: no_such_method, method_is_view, type_mismatch, receipt_timeout, tx_failed.
    InvokeResult invoke(const Principal& actor, const MethodRequest& req);
    /// Errors: no_such_method, decode_error, chain_unreachable.
    CallResult call(const Principal& actor, const MethodRequest& req);

    /// Errors: not_a_mock_network, no_such_method, type_mismatch.
    void register_stub(const Principal& actor, const StubRequest& req);

    /// {name, network_id, active_version, methods, versions, accounts}.
    nlohmann::json contract_details(const Principal& actor, const std::string& app_id, const std::string& name);

    /// Polls at the network's interval until a receipt appears.
    /// Errors: receipt_timeout, chain_unreachable.
    chain::Receipt poll_receipt(chain::Backend& backend, const Digest32& tx_hash, const chain::NetworkConfig& net);

    std::shared_ptr<chain::Backend> backend(const std::string& network_id);

private:
    DeployResult deploy(const Principal& actor, const DeployRequest& req, bool new_version);
    chain::Receipt submit(const std::string& app_id, const chain::NetworkConfig& net, chain::Backend& backend,
        std::optional<Address> to, bytes data, uint64_t gas_limit, const uint256& gas_price);
    std::shared_ptr<std::mutex> app_lock(const std::string& app_id);

    registry::Registry& registry_;
    BackendFactory factory_;
    util::Clock& clock_;

    std::mutex backends_mutex_;
    std::map<std::string, std::shared_ptr<chain::Backend>> backends_;
    std::mutex locks_mutex_;
    std::map<std::string, std::shared_ptr<std::mutex>> app_locks_;
};
}  // namespace workbench::service
