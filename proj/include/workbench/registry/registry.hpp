// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <workbench/chain/backend.hpp>
#include <workbench/util/clock.hpp>
#include <workbench/util/random.hpp>
#include <workbench/wallet/keystore.hpp>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <vector>

namespace workbench::registry
{
enum class Role
{
    viewer = 1,
    caller = 2,
    editor = 3,
    owner = 4,
};

std::string_view to_string(Role r) noexcept;
/// Accepts viewer, caller, editor. Throws Error{invalid_argument}.
Role grantable_role_from_string(std::string_view s);

struct PasswordHash
{
    bytes salt;
    uint32_t iterations = 0;
    Digest32 hash;

    friend bool operator==(const PasswordHash&, const PasswordHash&) = default;
};

/// Contract names appear in URLs: 1-64 characters from [A-Za-z0-9_.-].
/// Throws Error{invalid_argument}.
void validate_contract_name(std::string_view name);

PasswordHash hash_password(std::string_view password, util::RandomSource& rng, uint32_t iterations);
bool verify_password(const PasswordHash& h, std::string_view password);

struct User
{
    std::string id;
    std::string email;
    PasswordHash password;
    int64_t created_at = 0;

    friend bool operator==(const User&, const User&) = default;
};

struct ContractVersion
{
    uint64_t version_no = 0;
    Address address;
    std::string abi_json;  ///< raw ABI text as submitted
    Digest32 bytecode_hash;
    Digest32 deploy_tx;
    int64_t deployed_at = 0;
    Address deployer;

    friend bool operator==(const ContractVersion&, const ContractVersion&) = default;
};

struct Contract
{
    std::string id;
    std::string name;
    std::vector<ContractVersion> versions;  ///< versions[i].version_no == i + 1
    uint64_t active_version = 0;

    [[nodiscard]] const ContractVersion& active() const { return versions.at(active_version - 1); }

    friend bool operator==(const Contract&, const Contract&) = default;
};

struct Application
{
    std::string id;
    std::string name;
    std::string owner;
    std::string network_id;
    nlohmann::json deployer_keystore;  ///< EncryptedKeystore JSON
    Address deployer;
    std::map<std::string, Role> shares;  ///< user id -> role, never the owner
    std::map<std::string, Contract> contracts;  ///< by name
    int64_t created_at = 0;

    friend bool operator==(const Application&, const Application&) = default;
};

struct ApiKey
{
    std::string id;
    std::string app_id;
    Digest32 key_hash;
    std::string label;
    int64_t created_at = 0;
    bool revoked = false;

    friend bool operator==(const ApiKey&, const ApiKey&) = default;
};

/// The whole persisted registry.
struct State
{
    std::map<std::string, User> users;
    std::map<std::string, chain::NetworkConfig> networks;
    std::map<std::string, Application> apps;
    std::map<std::string, ApiKey> api_keys;
    uint64_t next_id = 1;

    [[nodiscard]] nlohmann::json to_json() const;
    static State from_json(const nlohmann::json& body);

    friend bool operator==(const State&, const State&) = default;
};

/// Who is making a request: a logged-in user or an application API key.
struct Principal
{
    enum class Kind
    {
        user,
        api_key,
    };
    Kind kind = Kind::user;
    std::string user_id;  ///< set for users
    std::string key_id;   ///< set for API keys
    std::string app_id;   ///< the key's application

    static Principal for_user(std::string id) { return {Kind::user, std::move(id), {}, {}}; }
};

struct CreatedApiKey
{
    ApiKey record;
    std::string token;  ///< plaintext, returned exactly once
};

struct VersionTarget
{
    Address address;
    uint64_t version_no = 0;
    std::string abi_json;
};

struct Options
{
    uint32_t password_iterations = wallet::default_kdf_iterations;
    uint32_t keystore_iterations = wallet::default_kdf_iterations;
    std::chrono::seconds session_ttl{12 * 3600};
};

/// Users, networks, applications, contracts and API keys, persisted as one
/// checksummed snapshot rewritten atomically on every mutation. Readers see
/// an immutable state; writers are serialized and publish a new state only
/// after the snapshot write succeeded.
class Registry
{
public:
    /// `snapshot` absent means in-memory only. `keystore_secret` encrypts the
    /// application deployer keys. Throws Error{corrupt_snapshot}.
    Registry(std::optional<std::filesystem::path> snapshot, std::string keystore_secret, util::Clock& clock,
        util::RandomSource& rng, Options options = {});

    [[nodiscard]] std::shared_ptr<const State> state() const;

    // Users and sessions.
    User create_user(std::string_view email, std::string_view password);
    /// Returns a fresh session token. Errors: invalid_credentials.
    std::string authenticate(std::string_view email, std::string_view password);
    /// Errors: unauthenticated (unknown or expired token).
    Principal session_principal(std::string_view token);
    void logout(std::string_view token);
    /// Errors: unauthenticated (unknown or revoked key).
    Principal api_key_principal(std::string_view token) const;

    // Networks.
    chain::NetworkConfig add_network(const Principal& actor, chain::NetworkConfig net);
    [[nodiscard]] chain::NetworkConfig network(const std::string& id) const;

    // Applications.
    Application create_application(const Principal& actor, std::string_view name, const std::string& network_id);
    void delete_application(const Principal& actor, const std::string& app_id);
    /// Errors: no_such_app, not_authorized.
    Role authorize(const Principal& actor, const std::string& app_id, Role needed) const;
    /// Errors: not_authorized for API keys.
    const std::string& require_user(const Principal& actor) const;
    [[nodiscard]] Application application(const std::string& app_id) const;
    [[nodiscard]] std::vector<std::pair<Application, Role>> applications_for(const Principal& actor) const;
    Application share_application(
        const Principal& actor, const std::string& app_id, std::string_view grantee_email, Role role);

    // API keys.
    CreatedApiKey create_api_key(const Principal& actor, const std::string& app_id, std::string_view label);
    std::vector<ApiKey> list_api_keys(const Principal& actor, const std::string& app_id) const;
    void revoke_api_key(const Principal& actor, const std::string& app_id, const std::string& key_id);

    // Contracts.
    /// Appends version max+1 (creating the contract on first use) and makes
    /// it active. Errors: address_in_use, no_such_app.
    ContractVersion register_version(const std::string& app_id, std::string_view contract_name,
        ContractVersion version);
    /// Errors: no_such_contract, no_such_version.
    VersionTarget resolve_target(
        const std::string& app_id, std::string_view contract_name, std::optional<uint64_t> version) const;
    [[nodiscard]] Contract contract(const std::string& app_id, std::string_view contract_name) const;

    /// Decrypted deployer key, cached after the first use.
    wallet::PrivateKey deployer_key(const std::string& app_id);

    /// Serialized snapshot document for the current state.
    [[nodiscard]] std::string snapshot_document() const;
    /// Errors: corrupt_snapshot.
    static State parse_snapshot(std::string_view document);

private:
    template <typename Fn>
    auto mutate(Fn&& fn);

    std::string next_id(State& s, std::string_view prefix) const;
    const Application& app_in(const State& s, const std::string& app_id) const;

    std::optional<std::filesystem::path> snapshot_;
    std::string keystore_secret_;
    util::Clock& clock_;
    util::RandomSource& rng_;
    Options options_;

    mutable std::shared_mutex state_mutex_;
    std::shared_ptr<const State> state_;
    std::mutex write_mutex_;

    struct Session
    {
        std::string user_id;
        util::Clock::time_point expires;
    };
    std::mutex session_mutex_;
    std::map<Digest32, Session> sessions_;  ///< by keccak256(token)
    PasswordHash dummy_hash_;

    std::mutex key_mutex_;
    std::map<std::string, wallet::PrivateKey> key_cache_;
};
}  // namespace workbench::registry
