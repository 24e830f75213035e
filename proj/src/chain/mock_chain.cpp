// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/chain/mock_chain.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/codec/keccak.hpp>
#include <workbench/error.hpp>
#include <workbench/util/fs.hpp>
#include <workbench/wallet/transaction.hpp>

namespace workbench::chain
{
namespace
{
constexpr int state_format = 1;

nlohmann::json stubs_to_json(const std::map<std::pair<Address, Selector>, bytes>& m)
{
    auto arr = nlohmann::json::array();
    for (const auto& [k, v] : m)
        arr.push_back({{"address", to_hex(k.first)}, {"selector", to_hex(k.second)}, {"output", to_hex(v)}});
    return arr;
}

void stubs_from_json(const nlohmann::json& arr, std::map<std::pair<Address, Selector>, bytes>& m)
{
    for (const auto& e : arr)
        m[{fixed_from_hex<20>(e.at("address").get<std::string>()),
            Selector::from(from_hex(e.at("selector").get<std::string>()))}] =
            from_hex(e.at("output").get<std::string>());
}
}  // namespace

MockChain::MockChain(uint64_t chain_id, std::optional<std::filesystem::path> persist)
  : chain_id_{chain_id}, persist_{std::move(persist)}
{
    if (chain_id_ == 0)
        throw Error{Errc::invalid_argument, "chain id must be at least 1"};
    if (persist_)
        load();
}

uint64_t MockChain::intrinsic_gas(bool creation, bytes_view data) noexcept
{
    uint64_t gas = 21'000 + (creation ? 32'000 : 0);
    for (const auto b : data)
        gas += b != 0 ? 16 : 4;
    return gas;
}

uint64_t MockChain::get_chain_id()
{
    return chain_id_;
}

uint64_t MockChain::get_nonce(const Address& account)
{
    const std::lock_guard lock{mutex_};
    const auto it = accounts_.find(account);
    return it == accounts_.end() ? 0 : it->second.nonce;
}

Digest32 MockChain::send_raw(bytes_view raw)
{
    const auto recovered = wallet::recover_sender(raw);
    const auto& tx = recovered.tx;
    if (tx.chain_id != chain_id_)
        throw Error{Errc::wrong_chain, "transaction signed for chain " + std::to_string(tx.chain_id) +
                                           ", this chain is " + std::to_string(chain_id_)};
    if (tx.is_creation() && tx.data.empty())
        throw Error{Errc::invalid_argument, "contract creation without init code"};

    const auto hash = keccak256(raw);
    const uint512 fee = uint512{tx.gas_limit} * uint512{tx.gas_price};
    const uint512 cost = fee + uint512{tx.value};

    const std::lock_guard lock{mutex_};
    auto& sender = accounts_[recovered.sender];
    if (tx.nonce != sender.nonce)
        throw Error{Errc::nonce_mismatch, "expected nonce " + std::to_string(sender.nonce) + ", got " +
                                              std::to_string(tx.nonce)};
    if (cost > uint512{sender.balance})
        throw Error{Errc::insufficient_funds, "sender balance does not cover gas and value"};

    Receipt r;
    r.tx_hash = hash;
    r.block_number = ++height_;
    r.gas_used = intrinsic_gas(tx.is_creation(), tx.data);
    r.success = r.gas_used <= tx.gas_limit;
    const auto nonce = sender.nonce++;

    if (!r.success)
    {
        // Out of gas: the whole limit is consumed, nothing else happens.
        r.gas_used = tx.gas_limit;
        sender.balance -= static_cast<uint256>(fee);
    }
    else
    {
        sender.balance -= static_cast<uint256>(uint512{r.gas_used} * uint512{tx.gas_price}) + tx.value;
        Address target;
        if (tx.is_creation())
        {
            target = derive_contract_address(recovered.sender, nonce);
            code_[target] = tx.data;
            r.contract_address = target;
        }
        else
            target = *tx.to;
        accounts_[target].balance += tx.value;
    }
    receipts_[hash] = r;
    persist_locked();
    return hash;
}

std::optional<Receipt> MockChain::get_receipt(const Digest32& tx_hash)
{
    const std::lock_guard lock{mutex_};
    const auto it = receipts_.find(tx_hash);
    if (it == receipts_.end())
        return std::nullopt;
    return it->second;
}

bytes MockChain::call(const Address& to, bytes_view data)
{
    const std::lock_guard lock{mutex_};
    if (!code_.contains(to))
        throw Error{Errc::no_such_contract, "no contract at " + to_hex(to)};
    if (data.size() < 4)
        return {};
    const StubKey key{to, Selector::from(data.first(4))};
    if (const auto it = stubs_.find(key); it != stubs_.end())
        return it->second;
    if (const auto it = defaults_.find(key); it != defaults_.end())
        return it->second;
    return {};
}

uint64_t MockChain::block_number()
{
    const std::lock_guard lock{mutex_};
    return height_;
}

void MockChain::register_stub(const Address& contract, const Selector& selector, bytes output)
{
    const std::lock_guard lock{mutex_};
    if (!code_.contains(contract))
        throw Error{Errc::no_such_contract, "no contract at " + to_hex(contract)};
    stubs_[{contract, selector}] = std::move(output);
    persist_locked();
}

void MockChain::declare_default(const Address& contract, const Selector& selector, bytes output)
{
    const std::lock_guard lock{mutex_};
    if (!code_.contains(contract))
        throw Error{Errc::no_such_contract, "no contract at " + to_hex(contract)};
    defaults_[{contract, selector}] = std::move(output);
    persist_locked();
}

void MockChain::fund(const Address& account, const uint256& amount)
{
    const std::lock_guard lock{mutex_};
    accounts_[account].balance += amount;
    persist_locked();
}

uint256 MockChain::balance(const Address& account)
{
    const std::lock_guard lock{mutex_};
    const auto it = accounts_.find(account);
    return it == accounts_.end() ? 0 : it->second.balance;
}

std::optional<bytes> MockChain::code(const Address& contract)
{
    const std::lock_guard lock{mutex_};
    const auto it = code_.find(contract);
    if (it == code_.end())
        return std::nullopt;
    return it->second;
}

void MockChain::persist_locked() const
{
    if (!persist_)
        return;
    nlohmann::json accounts = nlohmann::json::object();
    for (const auto& [a, acc] : accounts_)
        accounts[to_hex(a)] = {{"nonce", std::to_string(acc.nonce)}, {"balance", acc.balance.str()}};
    nlohmann::json code = nlohmann::json::object();
    for (const auto& [a, c] : code_)
        code[to_hex(a)] = to_hex(c);
    auto receipts = nlohmann::json::array();
    for (const auto& [h, r] : receipts_)
        receipts.push_back(to_json(r));

    const nlohmann::json body = {
        {"chain_id", std::to_string(chain_id_)},
        {"height", std::to_string(height_)},
        {"accounts", accounts},
        {"code", code},
        {"receipts", receipts},
        {"stubs", stubs_to_json(stubs_)},
        {"defaults", stubs_to_json(defaults_)},
    };
    const auto text = body.dump();
    const nlohmann::json doc = {
        {"format_version", state_format},
        {"checksum", to_hex(keccak256(std::string_view{text}))},
        {"body", body},
    };
    util::write_file_atomic(*persist_, doc.dump());
}

void MockChain::load()
{
    const auto text = util::read_file(*persist_);
    if (!text)
        return;
    try
    {
        const auto doc = nlohmann::json::parse(*text);
        if (doc.at("format_version").get<int>() != state_format)
            throw Error{Errc::corrupt_snapshot, "unsupported mock chain state version"};
        const auto& body = doc.at("body");
        if (to_hex(keccak256(std::string_view{body.dump()})) != doc.at("checksum").get<std::string>())
            throw Error{Errc::corrupt_snapshot, "mock chain state checksum mismatch"};
        if (std::stoull(body.at("chain_id").get<std::string>()) != chain_id_)
            throw Error{Errc::corrupt_snapshot, "mock chain state belongs to another chain id"};

        height_ = std::stoull(body.at("height").get<std::string>());
        for (const auto& [a, acc] : body.at("accounts").items())
            accounts_[fixed_from_hex<20>(a)] = {std::stoull(acc.at("nonce").get<std::string>()),
                uint256{acc.at("balance").get<std::string>()}};
        for (const auto& [a, c] : body.at("code").items())
            code_[fixed_from_hex<20>(a)] = from_hex(c.get<std::string>());
        for (const auto& r : body.at("receipts"))
        {
            auto receipt = receipt_from_json(r);
            receipts_[receipt.tx_hash] = receipt;
        }
        stubs_from_json(body.at("stubs"), stubs_);
        stubs_from_json(body.at("defaults"), defaults_);
    }
    catch (const Error& e)
    {
        if (e.code() == Errc::corrupt_snapshot)
            throw;
        throw Error{Errc::corrupt_snapshot, std::string{"mock chain state: "} + e.what()};
    }
    catch (const std::exception& e)
    {
        throw Error{Errc::corrupt_snapshot, std::string{"mock chain state: "} + e.what()};
    }
}
}  // namespace workbench::chain
