// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/service/service.hpp>
#include <workbench/abi/json.hpp>
#include <workbench/chain/mock_chain.hpp>
#include <workbench/chain/rpc_backend.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/codec/keccak.hpp>
#include <workbench/error.hpp>
#include <workbench/wallet/transaction.hpp>

namespace workbench::service
{
namespace
{
/// Transport and protocol failures surface as one service-level error.
template <typename Fn>
auto on_chain(Fn&& fn)
{
    try
    {
        return fn();
    }
    catch (const Error& e)
    {
        if (e.code() == Errc::unreachable || e.code() == Errc::protocol_error)
            throw Error{Errc::chain_unreachable, e.what()};
        throw;
    }
}

abi::Interface parse_abi(std::string_view text)
{
    try
    {
        return abi::parse_abi_json(text);
    }
    catch (const Error& e)
    {
        throw Error{Errc::abi_parse_error, e.what()};
    }
}

std::optional<size_t> arity_of(const nlohmann::json& args)
{
    if (args.is_array())
        return args.size();
    return std::nullopt;
}

bytes parse_bytecode(std::string_view hex)
{
    try
    {
        auto code = from_hex(hex);
        if (code.empty())
            throw Error{Errc::empty_bytecode, "bytecode must not be empty"};
        return code;
    }
    catch (const Error& e)
    {
        if (e.code() == Errc::empty_bytecode)
            throw;
        throw Error{Errc::invalid_argument, std::string{"bytecode: "} + e.what()};
    }
}

nlohmann::json version_summary(const registry::ContractVersion& v, uint64_t active)
{
    return {
        {"version", v.version_no},
        {"address", to_hex(v.address)},
        {"deploy_tx", to_hex(v.deploy_tx)},
        {"bytecode_hash", to_hex(v.bytecode_hash)},
        {"deployer", to_hex(v.deployer)},
        {"deployed_at", std::to_string(v.deployed_at)},
        {"active", v.version_no == active},
    };
}
}  // namespace

BackendFactory default_backend_factory(std::optional<std::filesystem::path> data_dir)
{
    return [data_dir = std::move(data_dir)](const chain::NetworkConfig& net) -> std::shared_ptr<chain::Backend> {
        if (net.kind == chain::NetworkKind::rpc)
            return std::make_shared<chain::RpcBackend>(net.rpc_url);
        std::optional<std::filesystem::path> persist;
        if (data_dir && !net.id.empty())
            persist = *data_dir / ("mock-" + net.id + ".json");
        return std::make_shared<chain::MockChain>(net.chain_id, persist);
    };
}

Service::Service(registry::Registry& registry, BackendFactory factory, util::Clock& clock)
  : registry_{registry}, factory_{std::move(factory)}, clock_{clock}
{}

std::shared_ptr<chain::Backend> Service::backend(const std::string& network_id)
{
    const auto net = registry_.network(network_id);
    const std::lock_guard lock{backends_mutex_};
    auto& slot = backends_[network_id];
    if (!slot)
        slot = factory_(net);
    return slot;
}

std::shared_ptr<std::mutex> Service::app_lock(const std::string& app_id)
{
    const std::lock_guard lock{locks_mutex_};
    auto& slot = app_locks_[app_id];
    if (!slot)
        slot = std::make_shared<std::mutex>();
    return slot;
}

chain::NetworkConfig Service::add_network(const Principal& actor, chain::NetworkConfig net)
{
    registry_.require_user(actor);
    net.validate();
    if (net.kind == chain::NetworkKind::rpc)
    {
        const auto probe = factory_(net);
        const auto reported = on_chain([&] { return probe->get_chain_id(); });
        if (reported != net.chain_id)
            throw Error{Errc::chain_id_mismatch, "node reports chain id " + std::to_string(reported) +
                                                     ", configured " + std::to_string(net.chain_id)};
    }
    return registry_.add_network(actor, std::move(net));
}

chain::Receipt Service::poll_receipt(chain::Backend& backend, const Digest32& tx_hash, const chain::NetworkConfig& net)
{
    const auto start = clock_.now();
    while (true)
    {
        if (auto r = on_chain([&] { return backend.get_receipt(tx_hash); }))
            return *r;
        const auto elapsed = clock_.now() - start;
        if (elapsed >= net.receipt_timeout)
            throw Error{Errc::receipt_timeout, "no receipt for " + to_hex(tx_hash) + " after " +
                                                   std::to_string(net.receipt_timeout.count()) + " ms"};
        const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(net.receipt_timeout - elapsed);
        clock_.sleep_for(std::min(net.poll_interval, remaining));
    }
}

chain::Receipt Service::submit(const std::string& app_id, const chain::NetworkConfig& net, chain::Backend& backend,
    std::optional<Address> to, bytes data, uint64_t gas_limit, const uint256& gas_price)
{
    const auto key = registry_.deployer_key(app_id);
    Digest32 hash;
    {
        // Nonce fetch, signing and submission form one critical section so
        // concurrent requests on an application never reuse a nonce.
        const auto lock = app_lock(app_id);
        const std::lock_guard guard{*lock};
        wallet::LegacyTransaction tx;
        tx.nonce = on_chain([&] { return backend.get_nonce(key.address()); });
        tx.gas_price = gas_price;
        tx.gas_limit = gas_limit;
        tx.to = to;
        tx.data = std::move(data);
        tx.chain_id = net.chain_id;
        const auto raw = wallet::sign_transaction(tx, key);
        hash = on_chain([&] { return backend.send_raw(raw); });
    }
    auto receipt = poll_receipt(backend, hash, net);
    if (!receipt.success)
        throw Error{Errc::tx_failed, "transaction " + to_hex(hash) + " failed in block " +
                                         std::to_string(receipt.block_number)};
    return receipt;
}

DeployResult Service::deploy_contract(const Principal& actor, const DeployRequest& req)
{
    return deploy(actor, req, false);
}

DeployResult Service::deploy_new_version(const Principal& actor, const DeployRequest& req)
{
    return deploy(actor, req, true);
}

DeployResult Service::deploy(const Principal& actor, const DeployRequest& req, bool new_version)
{
    registry_.authorize(actor, req.app_id, registry::Role::editor);
    registry::validate_contract_name(req.contract_name);
    const auto app = registry_.application(req.app_id);
    const bool exists = app.contracts.contains(req.contract_name);
    if (new_version && !exists)
        throw Error{Errc::no_such_contract, "no contract '" + req.contract_name + "' to version"};
    if (!new_version && exists)
        throw Error{Errc::name_taken, "contract '" + req.contract_name + "' exists; deploy a new version instead"};

    // Everything that can be checked locally is checked before any traffic.
    const auto iface = parse_abi(req.abi_json);
    const auto code = parse_bytecode(req.bytecode);
    const auto ctor_types = iface.constructor_types();
    const auto args = abi::values_from_json(ctor_types, req.constructor_args);
    auto init = abi::encode_constructor(code, ctor_types, args);

    const auto net = registry_.network(app.network_id);
    const auto chain = backend(app.network_id);
    const auto receipt = submit(req.app_id, net, *chain, std::nullopt, std::move(init),
        req.gas_limit.value_or(net.gas_limit_default), req.gas_price.value_or(net.gas_price));
    if (!receipt.contract_address)
        throw Error{Errc::tx_failed, "deployment receipt carries no contract address"};

    if (auto* mock = dynamic_cast<chain::MockChain*>(chain.get()))
    {
        // The mock answers unstubbed calls with zero-valued outputs.
        for (const auto& fn : iface.functions)
        {
            if (fn.outputs.empty())
                continue;
            std::vector<abi::Value> zeros;
            for (const auto& t : fn.outputs)
                zeros.push_back(abi::zero_value(t));
            mock->declare_default(*receipt.contract_address, fn.selector(), abi::encode_args(fn.outputs, zeros));
        }
    }

    registry::ContractVersion v;
    v.address = *receipt.contract_address;
    v.abi_json = req.abi_json;
    v.bytecode_hash = keccak256(code);
    v.deploy_tx = receipt.tx_hash;
    v.deployed_at = clock_.unix_seconds();
    v.deployer = app.deployer;
    return {registry_.register_version(req.app_id, req.contract_name, std::move(v)), receipt};
}

InvokeResult Service::invoke(const Principal& actor, const MethodRequest& req)
{
    registry_.authorize(actor, req.app_id, registry::Role::caller);
    const auto target = registry_.resolve_target(req.app_id, req.contract_name, req.version);
    const auto iface = parse_abi(target.abi_json);
    const auto& fn = iface.find(req.method, arity_of(req.args));
    if (fn.is_view())
        throw Error{Errc::method_is_view, "'" + fn.signature() + "' is read-only; use call"};
    const auto args = abi::values_from_json(fn.input_types(), req.args);
    auto data = abi::encode_call(fn, args);

    const auto app = registry_.application(req.app_id);
    const auto net = registry_.network(app.network_id);
    const auto chain = backend(app.network_id);
    const auto receipt = submit(req.app_id, net, *chain, target.address, std::move(data),
        req.gas_limit.value_or(net.gas_limit_default), net.gas_price);
    return {receipt.tx_hash, receipt, target.version_no};
}

CallResult Service::call(const Principal& actor, const MethodRequest& req)
{
    registry_.authorize(actor, req.app_id, registry::Role::viewer);
    const auto target = registry_.resolve_target(req.app_id, req.contract_name, req.version);
    const auto iface = parse_abi(target.abi_json);
    const auto& fn = iface.find(req.method, arity_of(req.args));
    const auto args = abi::values_from_json(fn.input_types(), req.args);
    const auto data = abi::encode_call(fn, args);

    const auto app = registry_.application(req.app_id);
    const auto chain = backend(app.network_id);
    const auto out = on_chain([&] { return chain->call(target.address, data); });
    if (fn.outputs.empty())
        return {nlohmann::json::array(), target.version_no};
    try
    {
        return {abi::values_to_json(fn.outputs, abi::decode_values(fn.outputs, out)), target.version_no};
    }
    catch (const Error& e)
    {
        throw Error{Errc::decode_error, "cannot decode " + std::to_string(out.size()) + " returned bytes as (" +
                                            std::string{e.what()} + ")"};
    }
}

void Service::register_stub(const Principal& actor, const StubRequest& req)
{
    const auto& t = req.target;
    registry_.authorize(actor, t.app_id, registry::Role::editor);
    const auto target = registry_.resolve_target(t.app_id, t.contract_name, t.version);
    const auto iface = parse_abi(target.abi_json);
    const auto& fn = iface.find(t.method);

    bytes output;
    if (req.outputs.has_value() == req.raw.has_value())
        throw Error{Errc::invalid_argument, "give exactly one of outputs or raw"};
    if (req.outputs)
        output = abi::encode_args(fn.outputs, abi::values_from_json(fn.outputs, *req.outputs));
    else
    {
        try
        {
            output = from_hex(*req.raw);
        }
        catch (const Error& e)
        {
            throw Error{Errc::invalid_argument, std::string{"raw: "} + e.what()};
        }
    }

    const auto app = registry_.application(t.app_id);
    const auto chain = backend(app.network_id);
    auto* mock = dynamic_cast<chain::MockChain*>(chain.get());
    if (mock == nullptr)
        throw Error{Errc::not_a_mock_network, "stubs exist only on mock networks"};
    mock->register_stub(target.address, fn.selector(), std::move(output));
}

nlohmann::json Service::contract_details(const Principal& actor, const std::string& app_id, const std::string& name)
{
    registry_.authorize(actor, app_id, registry::Role::viewer);
    const auto app = registry_.application(app_id);
    const auto c = registry_.contract(app_id, name);
    const auto iface = parse_abi(c.active().abi_json);

    auto methods = nlohmann::json::array();
    for (const auto& fn : iface.functions)
        methods.push_back(abi::function_to_json(fn));
    auto ctor_inputs = nlohmann::json::array();
    for (const auto& t : iface.constructor_types())
        ctor_inputs.push_back(t.canonical());
    auto versions = nlohmann::json::array();
    for (const auto& v : c.versions)
        versions.push_back(version_summary(v, c.active_version));

    return {
        {"name", c.name},
        {"app_id", app_id},
        {"network_id", app.network_id},
        {"active_version", c.active_version},
        {"address", to_hex(c.active().address)},
        {"abi", nlohmann::json::parse(c.active().abi_json)},
        {"constructor_inputs", ctor_inputs},
        {"methods", methods},
        {"versions", versions},
        {"accounts", nlohmann::json::array({to_hex(app.deployer)})},
    };
}
}  // namespace workbench::service
