// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/chain/mock_rpc_node.hpp>
#include <workbench/codec/hex.hpp>
#include <workbench/codec/keccak.hpp>
#include <support/api_client.hpp>
#include <support/fixtures.hpp>
#include <gtest/gtest.h>
#include <httplib.h>

using namespace workbench;
using testing_support::Credential;
using testing_support::Stack;
using json = nlohmann::json;

namespace
{
void expect_error(const http::Response& r, int status, std::string_view code)
{
    EXPECT_EQ(r.status, status) << r.body.dump();
    ASSERT_TRUE(r.body.is_object()) << r.body.dump();
    ASSERT_TRUE(r.body.contains("error")) << r.body.dump();
    EXPECT_EQ(r.body["error"]["code"], code) << r.body.dump();
    EXPECT_TRUE(r.body["error"]["message"].is_string());
}

struct Session
{
    testing_support::TempDir dir;
    Stack stack{dir.path()};
    Credential owner = stack.user("owner@example.com");
    std::string net;
    std::string app;

    Session()
    {
        net = stack.request("POST", "/networks", {{"name", "dev"}, {"mock", true}, {"chain_id", "1337"}}, owner)
                  .body.at("id");
        app = stack.request("POST", "/apps", {{"name", "shop"}, {"network_id", net}}, owner).body["app"]["id"];
    }

    http::Response deploy(const std::string& name, const Credential& cred)
    {
        return stack.request("POST", "/apps/" + app + "/contracts",
            {{"name", name}, {"abi", testing_support::storage_abi}, {"bytecode", testing_support::storage_bytecode},
                {"constructor_args", {"7"}}},
            cred);
    }

    std::string contract_path(const std::string& name) const { return "/apps/" + app + "/contracts/" + name; }
};
}  // namespace

TEST(http, register_and_login)
{
    testing_support::TempDir dir;
    Stack s{dir.path()};
    const json creds = {{"email", "a@example.com"}, {"password", "password1"}};
    const auto reg = s.request("POST", "/auth/register", creds);
    EXPECT_EQ(reg.status, 201);
    EXPECT_EQ(reg.body["user_id"], "usr_1");
    expect_error(s.request("POST", "/auth/register", creds), 409, "email_taken");
    expect_error(s.request("POST", "/auth/register", {{"email", "b@example.com"}, {"password", "short"}}), 422,
        "weak_password");

    const auto login = s.request("POST", "/auth/login", creds);
    ASSERT_EQ(login.status, 200);
    const auto token = login.body["token"].get<std::string>();
    EXPECT_EQ(s.request("GET", "/me", nullptr, Credential::bearer(token)).body["user_id"], "usr_1");
    expect_error(s.request("POST", "/auth/login", {{"email", "a@example.com"}, {"password", "nope-nope"}}), 401,
        "invalid_credentials");
    expect_error(s.request("POST", "/auth/login", {{"email", "a@example.com"}}), 400, "bad_request");

    EXPECT_EQ(s.request("POST", "/auth/logout", nullptr, Credential::bearer(token)).status, 200);
    expect_error(s.request("GET", "/me", nullptr, Credential::bearer(token)), 401, "unauthenticated");
}

TEST(http, every_route_but_auth_requires_credentials)
{
    Session s;
    for (const auto& [method, pattern] : s.stack.api().routes())
    {
        if (pattern.starts_with("/auth/register") || pattern.starts_with("/auth/login"))
            continue;
        std::string path = pattern;
        for (const auto& [param, value] : {std::pair{std::string{":app"}, s.app}, {std::string{":network"}, s.net},
                 {std::string{":contract"}, std::string{"C"}}, {std::string{":key"}, std::string{"key_1"}}})
            if (const auto i = path.find(param); i != std::string::npos)
                path.replace(i, param.size(), value);
        expect_error(s.stack.request(method, path, json::object()), 401, "unauthenticated");
        expect_error(s.stack.request(method, path, json::object(), Credential::bearer("forged")), 401, "unauthenticated");
    }
}

TEST(http, transport_errors_and_cors)
{
    Session s;
    expect_error(s.stack.request("GET", "/nope", nullptr, s.owner), 404, "not_found");
    expect_error(s.stack.request("DELETE", "/networks", nullptr, s.owner), 405, "method_not_allowed");

    http::Request bad{"POST", "/api/v1/apps", {{"authorization", "Bearer " + s.owner.token}}, "{not json"};
    expect_error(s.stack.api().handle(bad), 400, "bad_request");
    bad.body = "[1,2]";
    expect_error(s.stack.api().handle(bad), 400, "bad_request");
    bad.headers["authorization"] = "Basic abc";
    expect_error(s.stack.api().handle(bad), 401, "unauthenticated");
    expect_error(s.stack.api().handle({"GET", "/other", {}, ""}), 404, "not_found");

    const auto pre = s.stack.api().handle({"OPTIONS", "/api/v1/apps/app_1/contracts/X/invoke", {}, ""});
    EXPECT_EQ(pre.status, 204);
    EXPECT_EQ(pre.headers.at("Access-Control-Allow-Origin"), "*");
    EXPECT_NE(pre.headers.at("Access-Control-Allow-Headers").find("X-API-Key"), std::string::npos);
    EXPECT_EQ(s.stack.request("GET", "/networks", nullptr, s.owner).headers.at("Access-Control-Allow-Origin"), "*");
}

TEST(http, networks)
{
    Session s;
    const auto list = s.stack.request("GET", "/networks", nullptr, s.owner);
    ASSERT_EQ(list.body.size(), 1u);
    EXPECT_EQ(list.body[0]["chain_id"], "1337");
    EXPECT_EQ(list.body[0]["kind"], "mock");
    EXPECT_EQ(list.body[0]["poll_interval_ms"], "250");
    expect_error(s.stack.request("POST", "/networks", {{"name", "dev"}, {"mock", true}, {"chain_id", 1}}, s.owner),
        409, "name_taken");
    expect_error(s.stack.request("POST", "/networks", {{"name", "x"}, {"chain_id", 1}}, s.owner), 422,
        "invalid_argument");
    expect_error(s.stack.request("GET", "/networks/net_9", nullptr, s.owner), 404, "no_such_network");

    chain::MockRpcNode node{std::make_shared<chain::MockChain>(5)};
    node.start();
    expect_error(
        s.stack.request("POST", "/networks", {{"name", "n"}, {"rpc_url", node.url()}, {"chain_id", "6"}}, s.owner),
        422, "chain_id_mismatch");
    EXPECT_EQ(
        s.stack.request("POST", "/networks", {{"name", "n"}, {"rpc_url", node.url()}, {"chain_id", "5"}}, s.owner)
            .status,
        201);
}

TEST(http, applications_sharing_and_keys)
{
    Session s;
    const auto bob = s.stack.user("bob@example.com");
    expect_error(s.stack.request("GET", "/apps/" + s.app, nullptr, bob), 403, "not_authorized");
    expect_error(s.stack.request("GET", "/apps/app_404", nullptr, bob), 404, "no_such_app");

    const auto share = s.stack.request("POST", "/apps/" + s.app + "/share",
        {{"email", "bob@example.com"}, {"role", "viewer"}}, s.owner);
    EXPECT_EQ(share.status, 200);
    EXPECT_EQ(share.body["shares"][0]["role"], "viewer");
    expect_error(s.stack.request("POST", "/apps/" + s.app + "/share", {{"email", "bob@example.com"}, {"role", "god"}},
                     s.owner),
        422, "invalid_argument");
    expect_error(s.stack.request("POST", "/apps/" + s.app + "/share", {{"email", "zz@example.com"}, {"role", "viewer"}},
                     s.owner),
        404, "no_such_user");
    EXPECT_EQ(s.stack.request("GET", "/apps", nullptr, bob).body[0]["role"], "viewer");
    expect_error(s.stack.request("POST", "/apps/" + s.app + "/keys", {{"label", "x"}}, bob), 403, "not_authorized");

    const auto key = s.stack.request("POST", "/apps/" + s.app + "/keys", {{"label", "ci"}}, s.owner);
    ASSERT_EQ(key.status, 201);
    EXPECT_EQ(key.body["token"].get<std::string>().size(), 64u);
    const auto keys = s.stack.request("GET", "/apps/" + s.app + "/keys", nullptr, s.owner);
    ASSERT_EQ(keys.body.size(), 1u);
    EXPECT_FALSE(keys.body[0].contains("token"));
    EXPECT_EQ(keys.body[0]["key_hash"], to_hex(keccak256(std::string_view{key.body["token"].get<std::string>()})));

    expect_error(s.stack.request("DELETE", "/apps/" + s.app, nullptr, bob), 403, "not_authorized");
    EXPECT_EQ(s.stack.request("DELETE", "/apps/" + s.app, nullptr, s.owner).status, 200);
    expect_error(s.stack.request("GET", "/apps/" + s.app, nullptr, s.owner), 404, "no_such_app");
}

TEST(http, deploy_invoke_call)
{
    Session s;
    const auto d = s.deploy("Storage", s.owner);
    ASSERT_EQ(d.status, 201) << d.body.dump();
    EXPECT_EQ(d.body["version"], 1);
    const auto deployer = s.stack.registry().application(s.app).deployer;
    EXPECT_EQ(d.body["address"], testing_support::oracle_create_address(deployer, 0));
    EXPECT_EQ(d.body["receipt"]["status"], "success");
    EXPECT_EQ(d.body["receipt"]["block_number"], "1");

    auto bad = json{{"name", "Bad"}, {"abi", "[{"}, {"bytecode", "0x60"}};
    expect_error(s.stack.request("POST", "/apps/" + s.app + "/contracts", bad, s.owner), 422, "abi_parse_error");
    bad = {{"name", "Bad"}, {"abi", json::parse(testing_support::storage_abi)}, {"bytecode", "0x60"},
        {"constructor_args", {"1", "2"}}};
    expect_error(s.stack.request("POST", "/apps/" + s.app + "/contracts", bad, s.owner), 422, "type_mismatch");
    expect_error(s.deploy("Storage", s.owner), 409, "name_taken");

    const auto key = s.stack.request("POST", "/apps/" + s.app + "/keys", {{"label", "dapp"}}, s.owner);
    const auto api_key = Credential::api_key(key.body["token"]);
    const auto inv = s.stack.request("POST", s.contract_path("Storage") + "/invoke",
        {{"method", "set"}, {"args", {"99"}}}, api_key);
    ASSERT_EQ(inv.status, 200) << inv.body.dump();
    EXPECT_EQ(inv.body["receipt"]["status"], "success");
    EXPECT_TRUE(inv.body["receipt"]["contract_address"].is_null());
    EXPECT_EQ(inv.body["tx_hash"], inv.body["receipt"]["tx_hash"]);

    expect_error(s.stack.request("POST", s.contract_path("Storage") + "/invoke", {{"method", "get"}}, api_key), 409,
        "method_is_view");
    expect_error(s.stack.request("POST", s.contract_path("Storage") + "/invoke", {{"method", "nope"}}, api_key), 404,
        "no_such_method");
    expect_error(s.stack.request("POST", s.contract_path("Storage") + "/invoke", {{"method", "set"}, {"args", {"x"}}},
                     api_key),
        422, "type_mismatch");
    expect_error(s.stack.request("POST", s.contract_path("Nope") + "/call", {{"method", "get"}}, api_key), 404,
        "no_such_contract");

    EXPECT_EQ(s.stack.request("POST", s.contract_path("Storage") + "/call", {{"method", "get"}}, api_key).body["outputs"],
        json::array({"0"}));
    EXPECT_EQ(s.stack.request("POST", s.contract_path("Storage") + "/stubs", {{"method", "get"}, {"outputs", {"42"}}},
                  s.owner)
                  .status,
        200);
    const auto called = s.stack.request("POST", s.contract_path("Storage") + "/call", {{"method", "get"}}, api_key);
    EXPECT_EQ(called.body["outputs"], json::array({"42"}));
    expect_error(s.stack.request("POST", s.contract_path("Storage") + "/stubs", {{"method", "get"}, {"outputs", {"1"}}},
                     api_key),
        403, "not_authorized");

    // Revocation takes effect immediately.
    s.stack.request("DELETE", "/apps/" + s.app + "/keys/" + key.body["id"].get<std::string>(), nullptr, s.owner);
    expect_error(s.stack.request("POST", s.contract_path("Storage") + "/call", {{"method", "get"}}, api_key), 401,
        "unauthenticated");
}

TEST(http, versions_and_details)
{
    Session s;
    s.deploy("Storage", s.owner);
    const auto v2 = s.stack.request("POST", s.contract_path("Storage") + "/versions",
        {{"abi", testing_support::storage_abi}, {"bytecode", testing_support::storage_bytecode},
            {"constructor_args", {"8"}}},
        s.owner);
    ASSERT_EQ(v2.status, 201) << v2.body.dump();
    EXPECT_EQ(v2.body["version"], 2);
    expect_error(s.stack.request("POST", s.contract_path("Nope") + "/versions",
                     {{"abi", testing_support::storage_abi}, {"bytecode", testing_support::storage_bytecode},
                         {"constructor_args", {"8"}}},
                     s.owner),
        404, "no_such_contract");

    const auto d = s.stack.request("GET", s.contract_path("Storage"), nullptr, s.owner);
    ASSERT_EQ(d.status, 200);
    EXPECT_EQ(d.body["versions"].size(), 2u);
    EXPECT_EQ(d.body["methods"].size(), 3u);
    EXPECT_TRUE(d.body["methods"][0].contains("mutability"));
    EXPECT_EQ(d.body["accounts"][0], to_hex(s.stack.registry().application(s.app).deployer));
    const auto pinned = s.stack.request("POST", s.contract_path("Storage") + "/call",
        {{"method", "get"}, {"version", "1"}}, s.owner);
    EXPECT_EQ(pinned.body["version"], 1);
    expect_error(s.stack.request("POST", s.contract_path("Storage") + "/call", {{"method", "get"}, {"version", 9}},
                     s.owner),
        404, "no_such_version");
}

TEST(http, unreachable_node_is_502)
{
    Session s;
    chain::MockRpcNode node{std::make_shared<chain::MockChain>(5)};
    node.start();
    const auto net = s.stack.request("POST", "/networks", {{"name", "n"}, {"rpc_url", node.url()}, {"chain_id", 5}},
        s.owner);
    const auto app =
        s.stack.request("POST", "/apps", {{"name", "remote"}, {"network_id", net.body["id"]}}, s.owner).body["app"]["id"];
    node.stop();
    expect_error(s.stack.request("POST", "/apps/" + app.get<std::string>() + "/contracts",
                     {{"name", "S"}, {"abi", testing_support::storage_abi},
                         {"bytecode", testing_support::storage_bytecode}, {"constructor_args", {"1"}}},
                     s.owner),
        502, "chain_unreachable");
}

TEST(http, status_table_is_consistent)
{
    for (int i = 0; i <= static_cast<int>(Errc::internal); ++i)
    {
        const auto code = static_cast<Errc>(i);
        const auto r = http::error_response(code, "m");
        EXPECT_GE(r.status, 400);
        EXPECT_LT(r.status, 600);
        EXPECT_EQ(r.body["error"]["code"], to_string(code));
        EXPECT_NE(to_string(code), "unknown");
    }
}

TEST(http, served_over_sockets)
{
    testing_support::TempDir dir;
    Stack s{dir.path()};
    http::HttpServer server{s.api()};
    const auto port = server.bind("127.0.0.1", 0);
    server.start();

    httplib::Client client{"127.0.0.1", port};
    EXPECT_EQ(client.Get("/healthz")->status, 200);
    auto r = client.Post("/api/v1/auth/register", R"({"email":"x@example.com","password":"password1"})",
        "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 201);
    r = client.Get("/api/v1/networks");
    EXPECT_EQ(r->status, 401);
    EXPECT_EQ(json::parse(r->body)["error"]["code"], "unauthenticated");
    EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");
    server.stop();
}
