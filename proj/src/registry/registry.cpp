// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/registry/registry.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/codec/keccak.hpp>
#include <workbench/error.hpp>
#include <workbench/util/fs.hpp>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <algorithm>

namespace workbench::registry
{
namespace
{
constexpr int snapshot_format = 1;
constexpr size_t min_password_length = 8;

std::string fold_email(std::string_view email)
{
    std::string out{email};
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

Digest32 token_hash(std::string_view token)
{
    return keccak256(token);
}

Role role_from_string(std::string_view s)
{
    if (s == "owner")
        return Role::owner;
    return grantable_role_from_string(s);
}

nlohmann::json version_to_json(const ContractVersion& v)
{
    return {
        {"version_no", v.version_no},
        {"address", to_hex(v.address)},
        {"abi", v.abi_json},
        {"bytecode_hash", to_hex(v.bytecode_hash)},
        {"deploy_tx", to_hex(v.deploy_tx)},
        {"deployed_at", v.deployed_at},
        {"deployer", to_hex(v.deployer)},
    };
}

ContractVersion version_from_json(const nlohmann::json& j)
{
    return {
        j.at("version_no").get<uint64_t>(),
        fixed_from_hex<20>(j.at("address").get<std::string>()),
        j.at("abi").get<std::string>(),
        fixed_from_hex<32>(j.at("bytecode_hash").get<std::string>()),
        fixed_from_hex<32>(j.at("deploy_tx").get<std::string>()),
        j.at("deployed_at").get<int64_t>(),
        fixed_from_hex<20>(j.at("deployer").get<std::string>()),
    };
}
}  // namespace

std::string_view to_string(Role r) noexcept
{
    switch (r)
    {
    case Role::viewer: return "viewer";
    case Role::caller: return "caller";
    case Role::editor: return "editor";
    case Role::owner: return "owner";
    }
    return "unknown";
}

Role grantable_role_from_string(std::string_view s)
{
    if (s == "viewer")
        return Role::viewer;
    if (s == "caller")
        return Role::caller;
    if (s == "editor")
        return Role::editor;
    throw Error{Errc::invalid_argument, "role must be one of viewer, caller, editor"};
}

void validate_contract_name(std::string_view name)
{
    const bool ok = !name.empty() && name.size() <= 64 && std::ranges::all_of(name, [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
    });
    if (!ok)
        throw Error{Errc::invalid_argument, "contract name must be 1-64 characters from [A-Za-z0-9_.-]"};
}

PasswordHash hash_password(std::string_view password, util::RandomSource& rng, uint32_t iterations)
{
    PasswordHash h;
    h.salt = rng.draw<16>().to_bytes();
    h.iterations = iterations;
    if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), h.salt.data(),
            static_cast<int>(h.salt.size()), static_cast<int>(iterations), EVP_sha256(), 32, h.hash.bytes.data()) != 1)
        throw Error{Errc::crypto_failure, "PBKDF2 failed"};
    return h;
}

bool verify_password(const PasswordHash& h, std::string_view password)
{
    Digest32 got;
    if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), h.salt.data(),
            static_cast<int>(h.salt.size()), static_cast<int>(h.iterations), EVP_sha256(), 32, got.bytes.data()) != 1)
        throw Error{Errc::crypto_failure, "PBKDF2 failed"};
    return CRYPTO_memcmp(got.bytes.data(), h.hash.bytes.data(), 32) == 0;
}

nlohmann::json State::to_json() const
{
    nlohmann::json users_j = nlohmann::json::object();
    for (const auto& [id, u] : users)
        users_j[id] = {
            {"email", u.email},
            {"password",
                {{"salt", to_hex(u.password.salt)}, {"iterations", u.password.iterations},
                    {"hash", to_hex(u.password.hash)}}},
            {"created_at", u.created_at},
        };

    nlohmann::json networks_j = nlohmann::json::object();
    for (const auto& [id, n] : networks)
        networks_j[id] = n.to_json();

    nlohmann::json apps_j = nlohmann::json::object();
    for (const auto& [id, a] : apps)
    {
        nlohmann::json shares_j = nlohmann::json::object();
        for (const auto& [uid, role] : a.shares)
            shares_j[uid] = to_string(role);
        nlohmann::json contracts_j = nlohmann::json::object();
        for (const auto& [name, c] : a.contracts)
        {
            auto versions = nlohmann::json::array();
            for (const auto& v : c.versions)
                versions.push_back(version_to_json(v));
            contracts_j[name] = {{"id", c.id}, {"versions", versions}, {"active_version", c.active_version}};
        }
        apps_j[id] = {
            {"name", a.name},
            {"owner", a.owner},
            {"network_id", a.network_id},
            {"deployer_keystore", a.deployer_keystore},
            {"deployer", to_hex(a.deployer)},
            {"shares", shares_j},
            {"contracts", contracts_j},
            {"created_at", a.created_at},
        };
    }

    nlohmann::json keys_j = nlohmann::json::object();
    for (const auto& [id, k] : api_keys)
        keys_j[id] = {
            {"app_id", k.app_id},
            {"key_hash", to_hex(k.key_hash)},
            {"label", k.label},
            {"created_at", k.created_at},
            {"revoked", k.revoked},
        };

    return {
        {"users", users_j},
        {"networks", networks_j},
        {"apps", apps_j},
        {"api_keys", keys_j},
        {"next_id", next_id},
    };
}

State State::from_json(const nlohmann::json& body)
{
    State s;
    for (const auto& [id, u] : body.at("users").items())
    {
        const auto& p = u.at("password");
        s.users[id] = {id, u.at("email").get<std::string>(),
            {from_hex(p.at("salt").get<std::string>()), p.at("iterations").get<uint32_t>(),
                fixed_from_hex<32>(p.at("hash").get<std::string>())},
            u.at("created_at").get<int64_t>()};
    }
    for (const auto& [id, n] : body.at("networks").items())
        s.networks[id] = chain::NetworkConfig::from_json(n);
    for (const auto& [id, a] : body.at("apps").items())
    {
        Application app;
        app.id = id;
        app.name = a.at("name").get<std::string>();
        app.owner = a.at("owner").get<std::string>();
        app.network_id = a.at("network_id").get<std::string>();
        app.deployer_keystore = a.at("deployer_keystore");
        app.deployer = fixed_from_hex<20>(a.at("deployer").get<std::string>());
        for (const auto& [uid, role] : a.at("shares").items())
            app.shares[uid] = role_from_string(role.get<std::string>());
        for (const auto& [name, c] : a.at("contracts").items())
        {
            Contract contract{c.at("id").get<std::string>(), name, {}, c.at("active_version").get<uint64_t>()};
            for (const auto& v : c.at("versions"))
                contract.versions.push_back(version_from_json(v));
            for (size_t i = 0; i < contract.versions.size(); ++i)
                if (contract.versions[i].version_no != i + 1)
                    throw Error{Errc::corrupt_snapshot, "version numbers are not contiguous"};
            if (contract.active_version == 0 || contract.active_version > contract.versions.size())
                throw Error{Errc::corrupt_snapshot, "active version does not exist"};
            app.contracts[name] = std::move(contract);
        }
        app.created_at = a.at("created_at").get<int64_t>();
        s.apps[id] = std::move(app);
    }
    for (const auto& [id, k] : body.at("api_keys").items())
        s.api_keys[id] = {id, k.at("app_id").get<std::string>(), fixed_from_hex<32>(k.at("key_hash").get<std::string>()),
            k.at("label").get<std::string>(), k.at("created_at").get<int64_t>(), k.at("revoked").get<bool>()};
    s.next_id = body.at("next_id").get<uint64_t>();
    return s;
}

Registry::Registry(std::optional<std::filesystem::path> snapshot, std::string keystore_secret, util::Clock& clock,
    util::RandomSource& rng, Options options)
  : snapshot_{std::move(snapshot)},
    keystore_secret_{std::move(keystore_secret)},
    clock_{clock},
    rng_{rng},
    options_{options},
    state_{std::make_shared<State>()}
{
    if (keystore_secret_.empty())
        throw Error{Errc::invalid_argument, "keystore secret must not be empty"};
    if (snapshot_)
    {
        if (const auto doc = util::read_file(*snapshot_))
            state_ = std::make_shared<const State>(parse_snapshot(*doc));
    }
    // Used to equalize the cost of failed logins for unknown emails.
    dummy_hash_ = hash_password("workbench-dummy", rng_, options_.password_iterations);
}

std::shared_ptr<const State> Registry::state() const
{
    const std::shared_lock lock{state_mutex_};
    return state_;
}

std::string Registry::snapshot_document() const
{
    const auto body = state()->to_json();
    const nlohmann::json doc = {
        {"format_version", snapshot_format},
        {"checksum", to_hex(keccak256(std::string_view{body.dump()}))},
        {"body", body},
    };
    return doc.dump(1);
}

State Registry::parse_snapshot(std::string_view document)
{
    try
    {
        const auto doc = nlohmann::json::parse(document);
        if (!doc.is_object() || doc.value("format_version", 0) != snapshot_format)
            throw Error{Errc::corrupt_snapshot, "unsupported snapshot format"};
        const auto& body = doc.at("body");
        if (to_hex(keccak256(std::string_view{body.dump()})) != doc.at("checksum").get<std::string>())
            throw Error{Errc::corrupt_snapshot, "snapshot checksum mismatch"};
        return State::from_json(body);
    }
    catch (const Error& e)
    {
        if (e.code() == Errc::corrupt_snapshot)
            throw;
        throw Error{Errc::corrupt_snapshot, std::string{"snapshot: "} + e.what()};
    }
    catch (const std::exception& e)
    {
        throw Error{Errc::corrupt_snapshot, std::string{"snapshot: "} + e.what()};
    }
}

template <typename Fn>
auto Registry::mutate(Fn&& fn)
{
    const std::lock_guard writer{write_mutex_};
    auto next = std::make_shared<State>(*state());
    auto result = fn(*next);
    if (snapshot_)
    {
        const auto body = next->to_json();
        const nlohmann::json doc = {
            {"format_version", snapshot_format},
            {"checksum", to_hex(keccak256(std::string_view{body.dump()}))},
            {"body", body},
        };
        util::write_file_atomic(*snapshot_, doc.dump(1));
    }
    {
        const std::unique_lock lock{state_mutex_};
        state_ = std::move(next);
    }
    return result;
}

std::string Registry::next_id(State& s, std::string_view prefix) const
{
    return std::string{prefix} + "_" + std::to_string(s.next_id++);
}

const Application& Registry::app_in(const State& s, const std::string& app_id) const
{
    const auto it = s.apps.find(app_id);
    if (it == s.apps.end())
        throw Error{Errc::no_such_application, "no application " + app_id};
    return it->second;
}

User Registry::create_user(std::string_view email, std::string_view password)
{
    const auto at = email.find('@');
    if (email.size() > 254 || at == std::string_view::npos || at == 0 || at + 1 == email.size())
        throw Error{Errc::invalid_argument, "invalid email address"};
    if (password.size() < min_password_length)
        throw Error{Errc::weak_password, "password must have at least 8 characters"};
    const auto folded = fold_email(email);
    // Hash outside the writer lock; it is the slow part.
    auto hash = hash_password(password, rng_, options_.password_iterations);
    return mutate([&](State& s) {
        for (const auto& [id, u] : s.users)
            if (fold_email(u.email) == folded)
                throw Error{Errc::email_taken, "email already registered"};
        User u{next_id(s, "usr"), std::string{email}, std::move(hash), clock_.unix_seconds()};
        s.users[u.id] = u;
        return u;
    });
}

std::string Registry::authenticate(std::string_view email, std::string_view password)
{
    const auto snapshot = state();
    const auto folded = fold_email(email);
    const User* user = nullptr;
    for (const auto& [id, u] : snapshot->users)
        if (fold_email(u.email) == folded)
            user = &u;
    // Unknown emails pay for a full verification too.
    const bool ok = verify_password(user != nullptr ? user->password : dummy_hash_, password) && user != nullptr;
    if (!ok)
        throw Error{Errc::invalid_credentials, "invalid email or password"};

    const auto token = to_hex_raw(rng_.draw<32>().view());
    const std::lock_guard lock{session_mutex_};
    const auto now = clock_.now();
    std::erase_if(sessions_, [&](const auto& kv) { return kv.second.expires <= now; });
    sessions_[token_hash(token)] = {user->id, now + options_.session_ttl};
    return token;
}

Principal Registry::session_principal(std::string_view token)
{
    std::string user_id;
    {
        const std::lock_guard lock{session_mutex_};
        const auto it = sessions_.find(token_hash(token));
        if (it == sessions_.end())
            throw Error{Errc::unauthenticated, "invalid session token"};
        if (it->second.expires <= clock_.now())
        {
            sessions_.erase(it);
            throw Error{Errc::unauthenticated, "session expired"};
        }
        user_id = it->second.user_id;
    }
    if (!state()->users.contains(user_id))
        throw Error{Errc::unauthenticated, "session user no longer exists"};
    return Principal::for_user(user_id);
}

void Registry::logout(std::string_view token)
{
    const std::lock_guard lock{session_mutex_};
    sessions_.erase(token_hash(token));
}

Principal Registry::api_key_principal(std::string_view token) const
{
    const auto h = token_hash(token);
    const auto snapshot = state();
    for (const auto& [id, k] : snapshot->api_keys)
        if (k.key_hash == h)
        {
            if (k.revoked)
                throw Error{Errc::unauthenticated, "API key has been revoked"};
            return {Principal::Kind::api_key, {}, k.id, k.app_id};
        }
    throw Error{Errc::unauthenticated, "invalid API key"};
}

const std::string& Registry::require_user(const Principal& actor) const
{
    if (actor.kind != Principal::Kind::user)
        throw Error{Errc::not_authorized, "API keys may only invoke and call their application's contracts"};
    return actor.user_id;
}

chain::NetworkConfig Registry::add_network(const Principal& actor, chain::NetworkConfig net)
{
    require_user(actor);
    net.validate();
    return mutate([&](State& s) {
        for (const auto& [id, n] : s.networks)
            if (n.name == net.name)
                throw Error{Errc::name_taken, "network name already in use"};
        net.id = next_id(s, "net");
        s.networks[net.id] = net;
        return net;
    });
}

chain::NetworkConfig Registry::network(const std::string& id) const
{
    const auto snapshot = state();
    const auto it = snapshot->networks.find(id);
    if (it == snapshot->networks.end())
        throw Error{Errc::no_such_network, "no network " + id};
    return it->second;
}

Application Registry::create_application(const Principal& actor, std::string_view name, const std::string& network_id)
{
    const auto& owner = require_user(actor);
    if (name.empty() || name.size() > 128)
        throw Error{Errc::invalid_argument, "application name must have 1-128 characters"};
    static_cast<void>(network(network_id));

    auto pair = wallet::generate_keypair(rng_);
    const auto keystore = wallet::encrypt_key(pair.key, keystore_secret_, rng_, options_.keystore_iterations);
    auto app = mutate([&](State& s) {
        if (!s.networks.contains(network_id))
            throw Error{Errc::no_such_network, "no network " + network_id};
        for (const auto& [id, a] : s.apps)
            if (a.owner == owner && a.name == name)
                throw Error{Errc::name_taken, "you already own an application with this name"};
        Application a;
        a.id = next_id(s, "app");
        a.name = std::string{name};
        a.owner = owner;
        a.network_id = network_id;
        a.deployer_keystore = keystore.to_json();
        a.deployer = pair.address;
        a.created_at = clock_.unix_seconds();
        s.apps[a.id] = a;
        return a;
    });
    const std::lock_guard lock{key_mutex_};
    key_cache_.insert_or_assign(app.id, pair.key);
    return app;
}

void Registry::delete_application(const Principal& actor, const std::string& app_id)
{
    authorize(actor, app_id, Role::owner);
    mutate([&](State& s) {
        app_in(s, app_id);
        s.apps.erase(app_id);
        std::erase_if(s.api_keys, [&](const auto& kv) { return kv.second.app_id == app_id; });
        return 0;
    });
    const std::lock_guard lock{key_mutex_};
    key_cache_.erase(app_id);
}

Role Registry::authorize(const Principal& actor, const std::string& app_id, Role needed) const
{
    const auto snapshot = state();
    const auto& app = app_in(*snapshot, app_id);
    std::optional<Role> have;
    if (actor.kind == Principal::Kind::api_key)
    {
        if (actor.app_id == app_id)
            have = Role::caller;
    }
    else if (app.owner == actor.user_id)
        have = Role::owner;
    else if (const auto it = app.shares.find(actor.user_id); it != app.shares.end())
        have = it->second;

    if (!have)
        throw Error{Errc::not_authorized, "no access to application " + app_id};
    if (*have < needed)
        throw Error{Errc::not_authorized, "this action needs the " + std::string{to_string(needed)} +
                                              " role, you have " + std::string{to_string(*have)}};
    return *have;
}

Application Registry::application(const std::string& app_id) const
{
    return app_in(*state(), app_id);
}

std::vector<std::pair<Application, Role>> Registry::applications_for(const Principal& actor) const
{
    const auto& user = require_user(actor);
    std::vector<std::pair<Application, Role>> out;
    for (const auto& [id, a] : state()->apps)
    {
        if (a.owner == user)
            out.emplace_back(a, Role::owner);
        else if (const auto it = a.shares.find(user); it != a.shares.end())
            out.emplace_back(a, it->second);
    }
    return out;
}

Application Registry::share_application(
    const Principal& actor, const std::string& app_id, std::string_view grantee_email, Role role)
{
    authorize(actor, app_id, Role::editor);
    if (role == Role::owner)
        throw Error{Errc::invalid_argument, "ownership cannot be shared"};
    const auto folded = fold_email(grantee_email);
    return mutate([&](State& s) {
        const User* grantee = nullptr;
        for (const auto& [id, u] : s.users)
            if (fold_email(u.email) == folded)
                grantee = &u;
        if (grantee == nullptr)
            throw Error{Errc::no_such_user, "no user with that email"};
        auto& app = s.apps.at(app_id);
        if (grantee->id == app.owner)
            throw Error{Errc::invalid_argument, "the owner already has full access"};
        app.shares[grantee->id] = role;
        return app;
    });
}

CreatedApiKey Registry::create_api_key(const Principal& actor, const std::string& app_id, std::string_view label)
{
    authorize(actor, app_id, Role::editor);
    if (label.size() > 128)
        throw Error{Errc::invalid_argument, "label must have at most 128 characters"};
    auto token = to_hex_raw(rng_.draw<32>().view());
    auto record = mutate([&](State& s) {
        app_in(s, app_id);
        ApiKey k{next_id(s, "key"), app_id, token_hash(token), std::string{label}, clock_.unix_seconds(), false};
        s.api_keys[k.id] = k;
        return k;
    });
    return {std::move(record), std::move(token)};
}

std::vector<ApiKey> Registry::list_api_keys(const Principal& actor, const std::string& app_id) const
{
    authorize(actor, app_id, Role::editor);
    std::vector<ApiKey> out;
    for (const auto& [id, k] : state()->api_keys)
        if (k.app_id == app_id)
            out.push_back(k);
    return out;
}

void Registry::revoke_api_key(const Principal& actor, const std::string& app_id, const std::string& key_id)
{
    authorize(actor, app_id, Role::editor);
    mutate([&](State& s) {
        const auto it = s.api_keys.find(key_id);
        if (it == s.api_keys.end() || it->second.app_id != app_id)
            throw Error{Errc::no_such_api_key, "no API key " + key_id + " in this application"};
        it->second.revoked = true;
        return 0;
    });
}

ContractVersion Registry::register_version(
    const std::string& app_id, std::string_view contract_name, ContractVersion version)
{
    validate_contract_name(contract_name);
    return mutate([&](State& s) {
        app_in(s, app_id);
        auto& app = s.apps.at(app_id);
        for (const auto& [id, other] : s.apps)
        {
            if (other.network_id != app.network_id)
                continue;
            for (const auto& [name, c] : other.contracts)
                for (const auto& v : c.versions)
                    if (v.address == version.address)
                        throw Error{Errc::address_in_use, "address already registered on this network"};
        }
        auto [it, inserted] = app.contracts.try_emplace(std::string{contract_name});
        auto& contract = it->second;
        if (inserted)
        {
            contract.id = next_id(s, "ctr");
            contract.name = std::string{contract_name};
        }
        version.version_no = contract.versions.size() + 1;
        contract.versions.push_back(version);
        contract.active_version = version.version_no;
        return version;
    });
}

Contract Registry::contract(const std::string& app_id, std::string_view contract_name) const
{
    const auto snapshot = state();
    const auto& app = app_in(*snapshot, app_id);
    const auto it = app.contracts.find(std::string{contract_name});
    if (it == app.contracts.end())
        throw Error{Errc::no_such_contract, "no contract '" + std::string{contract_name} + "' in " + app_id};
    return it->second;
}

VersionTarget Registry::resolve_target(
    const std::string& app_id, std::string_view contract_name, std::optional<uint64_t> version) const
{
    const auto c = contract(app_id, contract_name);
    const auto n = version.value_or(c.active_version);
    if (n == 0 || n > c.versions.size())
        throw Error{Errc::no_such_version, "contract '" + c.name + "' has no version " + std::to_string(n)};
    const auto& v = c.versions[n - 1];
    return {v.address, v.version_no, v.abi_json};
}

wallet::PrivateKey Registry::deployer_key(const std::string& app_id)
{
    {
        const std::lock_guard lock{key_mutex_};
        if (const auto it = key_cache_.find(app_id); it != key_cache_.end())
            return it->second;
    }
    const auto app = application(app_id);
    auto key = wallet::decrypt_key(wallet::EncryptedKeystore::from_json(app.deployer_keystore), keystore_secret_);
    if (key.address() != app.deployer)
        throw Error{Errc::storage_failure, "deployer keystore does not match the recorded address"};
    const std::lock_guard lock{key_mutex_};
    key_cache_.insert_or_assign(app_id, key);
    return key;
}
}  // namespace workbench::registry
