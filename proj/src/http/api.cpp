// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/http/api.hpp>
#include <workbench/codec/hex.hpp>
#include <spdlog/spdlog.h>
#include <functional>

namespace workbench::http
{
using registry::Principal;
using registry::Role;
using json = nlohmann::json;

int http_status(Errc code) noexcept
{
    switch (code)
    {
    case Errc::bad_request:
    case Errc::malformed_json:
        return 400;
    case Errc::unauthenticated:
    case Errc::invalid_credentials:
        return 401;
    case Errc::not_authorized:
        return 403;
    case Errc::not_found:
    case Errc::no_such_user:
    case Errc::no_such_network:
    case Errc::no_such_application:
    case Errc::no_such_version:
    case Errc::no_such_api_key:
    case Errc::no_such_contract:
    case Errc::no_such_method:
        return 404;
    case Errc::method_not_allowed:
        return 405;
    case Errc::email_taken:
    case Errc::name_taken:
    case Errc::address_in_use:
    case Errc::method_is_view:
    case Errc::nonce_mismatch:
        return 409;
    case Errc::chain_unreachable:
    case Errc::unreachable:
    case Errc::protocol_error:
    case Errc::node_error:
    case Errc::decode_error:
        return 502;
    case Errc::receipt_timeout:
        return 504;
    case Errc::storage_failure:
    case Errc::corrupt_snapshot:
    case Errc::crypto_failure:
    case Errc::mac_mismatch:
    case Errc::malformed_keystore:
    case Errc::internal:
        return 500;
    default:
        // Remaining codes describe invalid input: ABI, codec and value errors.
        return 422;
    }
}

Response error_response(Errc code, std::string_view message)
{
    return {http_status(code), {{"error", {{"code", to_string(code)}, {"message", message}}}}, {}};
}

namespace
{
std::vector<std::string> split_path(std::string_view path)
{
    std::vector<std::string> out;
    size_t i = 0;
    while (i < path.size())
    {
        const auto j = path.find('/', i);
        const auto seg = path.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i);
        if (!seg.empty())
            out.emplace_back(seg);
        if (j == std::string_view::npos)
            break;
        i = j + 1;
    }
    return out;
}

struct Context
{
    const Request& req;
    std::map<std::string, std::string> params;
    Principal principal;
    json body;

    const std::string& param(const std::string& name) const { return params.at(name); }

    std::string str(const char* key, bool required = true) const
    {
        const auto it = body.find(key);
        if (it == body.end() || it->is_null())
        {
            if (required)
                throw Error{Errc::bad_request, std::string{"missing field '"} + key + "'"};
            return {};
        }
        if (!it->is_string())
            throw Error{Errc::bad_request, std::string{"field '"} + key + "' must be a string"};
        return it->get<std::string>();
    }

    std::optional<uint64_t> u64(const char* key) const
    {
        const auto it = body.find(key);
        if (it == body.end() || it->is_null())
            return std::nullopt;
        if (it->is_number_unsigned())
            return it->get<uint64_t>();
        if (it->is_number_integer() && it->get<int64_t>() >= 0)
            return static_cast<uint64_t>(it->get<int64_t>());
        if (it->is_string())
        {
            const auto s = it->get<std::string>();
            if (!s.empty() && s.size() <= 19 && s.find_first_not_of("0123456789") == std::string::npos)
                return std::stoull(s);
        }
        throw Error{Errc::bad_request, std::string{"field '"} + key + "' must be a non-negative integer"};
    }

    json array(const char* key) const
    {
        const auto it = body.find(key);
        if (it == body.end() || it->is_null())
            return json::array();
        if (!it->is_array())
            throw Error{Errc::bad_request, std::string{"field '"} + key + "' must be an array"};
        return *it;
    }

    /// ABI given either as JSON text or as the JSON array itself.
    std::string abi() const
    {
        const auto it = body.find("abi");
        if (it != body.end() && it->is_array())
            return it->dump();
        return str("abi");
    }
};

using Handler = std::function<Response(Context&)>;

Response ok(json body, int status = 200)
{
    return {status, std::move(body), {}};
}

json app_view(const registry::Registry& reg, const registry::Application& app, Role role)
{
    const auto state = reg.state();
    auto shares = json::array();
    for (const auto& [uid, r] : app.shares)
    {
        const auto it = state->users.find(uid);
        shares.push_back({{"user_id", uid}, {"email", it != state->users.end() ? it->second.email : ""},
            {"role", registry::to_string(r)}});
    }
    auto contracts = json::array();
    for (const auto& [name, c] : app.contracts)
        contracts.push_back(
            {{"name", name}, {"active_version", c.active_version}, {"address", to_hex(c.active().address)},
                {"versions", c.versions.size()}});
    return {
        {"id", app.id},
        {"name", app.name},
        {"owner", app.owner},
        {"network_id", app.network_id},
        {"deployer_address", to_hex(app.deployer)},
        {"role", registry::to_string(role)},
        {"shares", shares},
        {"contracts", contracts},
        {"created_at", std::to_string(app.created_at)},
    };
}

json key_view(const registry::ApiKey& k)
{
    return {
        {"id", k.id},
        {"app_id", k.app_id},
        {"label", k.label},
        {"key_hash", to_hex(k.key_hash)},
        {"created_at", std::to_string(k.created_at)},
        {"revoked", k.revoked},
    };
}

json deploy_view(const service::DeployResult& r)
{
    return {
        {"version", r.version.version_no},
        {"address", to_hex(r.version.address)},
        {"tx_hash", to_hex(r.receipt.tx_hash)},
        {"receipt", chain::to_json(r.receipt)},
        {"deployer", to_hex(r.version.deployer)},
    };
}

service::DeployRequest deploy_request(const Context& c, std::string name)
{
    service::DeployRequest r;
    r.app_id = c.param("app");
    r.contract_name = std::move(name);
    r.abi_json = c.abi();
    r.bytecode = c.str("bytecode");
    r.constructor_args = c.array("constructor_args");
    r.gas_limit = c.u64("gas_limit");
    if (const auto gp = c.u64("gas_price"))
        r.gas_price = *gp;
    return r;
}

service::MethodRequest method_request(const Context& c)
{
    return {c.param("app"), c.param("contract"), c.str("method"), c.array("args"), c.u64("version"),
        c.u64("gas_limit")};
}
}  // namespace

struct Api::Route
{
    std::string method;
    std::string pattern;
    std::vector<std::string> segments;
    bool authenticated = true;
    Handler handler;
};

Api::~Api() = default;

Api::Api(registry::Registry& registry, service::Service& service, ApiOptions options)
  : registry_{registry}, service_{service}, options_{std::move(options)}
{
    auto& reg = registry_;
    auto& svc = service_;
    const auto add = [this](std::string method, std::string pattern, bool auth, Handler h) {
        auto segments = split_path(pattern);
        routes_.push_back({std::move(method), std::move(pattern), std::move(segments), auth, std::move(h)});
    };

    add("POST", "/auth/register", false, [&reg](Context& c) {
        const auto u = reg.create_user(c.str("email"), c.str("password"));
        return ok({{"user_id", u.id}, {"email", u.email}}, 201);
    });
    add("POST", "/auth/login", false, [&reg](Context& c) {
        const auto token = reg.authenticate(c.str("email"), c.str("password"));
        const auto p = reg.session_principal(token);
        return ok({{"token", token}, {"user_id", p.user_id}});
    });
    add("POST", "/auth/logout", true, [&reg](Context& c) {
        reg.require_user(c.principal);
        const auto& auth = c.req.headers.at("authorization");
        reg.logout(std::string_view{auth}.substr(7));
        return ok(json::object());
    });
    add("GET", "/me", true, [&reg](Context& c) {
        const auto& id = reg.require_user(c.principal);
        return ok({{"user_id", id}, {"email", reg.state()->users.at(id).email}});
    });

    add("GET", "/networks", true, [&reg](Context& c) {
        reg.require_user(c.principal);
        auto out = json::array();
        for (const auto& [id, n] : reg.state()->networks)
            out.push_back(n.to_json());
        return ok(out);
    });
    add("POST", "/networks", true, [this, &svc](Context& c) {
        auto body = c.body;
        body.erase("id");
        if (!body.contains("poll_interval_ms"))
            body["poll_interval_ms"] = options_.poll_interval.count();
        if (!body.contains("receipt_timeout_ms"))
            body["receipt_timeout_ms"] = options_.receipt_timeout.count();
        return ok(svc.add_network(c.principal, chain::NetworkConfig::from_json(body)).to_json(), 201);
    });
    add("GET", "/networks/:network", true, [&reg](Context& c) {
        reg.require_user(c.principal);
        return ok(reg.network(c.param("network")).to_json());
    });

    add("GET", "/apps", true, [&reg](Context& c) {
        auto out = json::array();
        for (const auto& [app, role] : reg.applications_for(c.principal))
            out.push_back(app_view(reg, app, role));
        return ok(out);
    });
    add("POST", "/apps", true, [&reg](Context& c) {
        const auto app = reg.create_application(c.principal, c.str("name"), c.str("network_id"));
        return ok({{"app", app_view(reg, app, Role::owner)}, {"deployer_address", to_hex(app.deployer)}}, 201);
    });
    add("GET", "/apps/:app", true, [&reg](Context& c) {
        const auto role = reg.authorize(c.principal, c.param("app"), Role::viewer);
        return ok(app_view(reg, reg.application(c.param("app")), role));
    });
    add("DELETE", "/apps/:app", true, [&reg](Context& c) {
        reg.delete_application(c.principal, c.param("app"));
        return ok({{"deleted", c.param("app")}});
    });
    add("POST", "/apps/:app/share", true, [&reg](Context& c) {
        const auto role = registry::grantable_role_from_string(c.str("role"));
        const auto app = reg.share_application(c.principal, c.param("app"), c.str("email"), role);
        return ok(app_view(reg, app, reg.authorize(c.principal, app.id, Role::viewer)));
    });

    add("GET", "/apps/:app/keys", true, [&reg](Context& c) {
        auto out = json::array();
        for (const auto& k : reg.list_api_keys(c.principal, c.param("app")))
            out.push_back(key_view(k));
        return ok(out);
    });
    add("POST", "/apps/:app/keys", true, [&reg](Context& c) {
        const auto created = reg.create_api_key(c.principal, c.param("app"), c.str("label", false));
        auto view = key_view(created.record);
        view["token"] = created.token;
        return ok(view, 201);
    });
    add("DELETE", "/apps/:app/keys/:key", true, [&reg](Context& c) {
        reg.revoke_api_key(c.principal, c.param("app"), c.param("key"));
        return ok({{"revoked", c.param("key")}});
    });

    add("GET", "/apps/:app/contracts", true, [&reg](Context& c) {
        const auto role = reg.authorize(c.principal, c.param("app"), Role::viewer);
        return ok(app_view(reg, reg.application(c.param("app")), role)["contracts"]);
    });
    add("POST", "/apps/:app/contracts", true, [&svc](Context& c) {
        return ok(deploy_view(svc.deploy_contract(c.principal, deploy_request(c, c.str("name")))), 201);
    });
    add("GET", "/apps/:app/contracts/:contract", true, [&svc](Context& c) {
        return ok(svc.contract_details(c.principal, c.param("app"), c.param("contract")));
    });
    add("POST", "/apps/:app/contracts/:contract/versions", true, [&svc](Context& c) {
        return ok(deploy_view(svc.deploy_new_version(c.principal, deploy_request(c, c.param("contract")))), 201);
    });
    add("POST", "/apps/:app/contracts/:contract/invoke", true, [&svc](Context& c) {
        const auto r = svc.invoke(c.principal, method_request(c));
        return ok({{"tx_hash", to_hex(r.tx_hash)}, {"receipt", chain::to_json(r.receipt)}, {"version", r.version_used}});
    });
    add("POST", "/apps/:app/contracts/:contract/call", true, [&svc](Context& c) {
        const auto r = svc.call(c.principal, method_request(c));
        return ok({{"outputs", r.outputs}, {"version", r.version_used}});
    });
    add("POST", "/apps/:app/contracts/:contract/stubs", true, [&svc](Context& c) {
        service::StubRequest s{method_request(c), std::nullopt, std::nullopt};
        if (c.body.contains("outputs"))
            s.outputs = c.array("outputs");
        if (c.body.contains("raw"))
            s.raw = c.str("raw");
        svc.register_stub(c.principal, s);
        return ok(json::object());
    });
}

std::vector<std::pair<std::string, std::string>> Api::routes() const
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& r : routes_)
        out.emplace_back(r.method, r.pattern);
    return out;
}

Response Api::handle(const Request& req) const
{
    Response res;
    try
    {
        res = dispatch(req);
    }
    catch (const Error& e)
    {
        res = error_response(e.code(), e.what());
    }
    catch (const std::exception& e)
    {
        spdlog::error("unhandled exception for {} {}: {}", req.method, req.path, e.what());
        res = error_response(Errc::internal, "internal error");
    }
    res.headers["Access-Control-Allow-Origin"] = options_.cors_origin;
    res.headers["Vary"] = "Origin";
    return res;
}

Response Api::dispatch(const Request& req) const
{
    std::string_view path = req.path;
    if (const auto q = path.find('?'); q != std::string_view::npos)
        path = path.substr(0, q);
    if (!path.starts_with(base_path) || (path.size() > base_path.size() && path[base_path.size()] != '/'))
        throw Error{Errc::not_found, "no such route"};
    const auto segments = split_path(path.substr(base_path.size()));

    bool path_matched = false;
    const Route* route = nullptr;
    std::map<std::string, std::string> params;
    for (const auto& r : routes_)
    {
        if (r.segments.size() != segments.size())
            continue;
        std::map<std::string, std::string> p;
        bool match = true;
        for (size_t i = 0; i < segments.size() && match; ++i)
        {
            if (r.segments[i].starts_with(':'))
                p[r.segments[i].substr(1)] = segments[i];
            else
                match = r.segments[i] == segments[i];
        }
        if (!match)
            continue;
        path_matched = true;
        if (r.method == req.method)
        {
            route = &r;
            params = std::move(p);
            break;
        }
    }

    if (req.method == "OPTIONS" && path_matched)
        return {204,
            nullptr,
            {{"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                {"Access-Control-Allow-Headers", "Authorization, Content-Type, X-API-Key"},
                {"Access-Control-Max-Age", "600"}}};
    if (route == nullptr)
        throw Error{path_matched ? Errc::method_not_allowed : Errc::not_found,
            path_matched ? "method not allowed on this route" : "no such route"};

    Context ctx{req, std::move(params), {}, json::object()};
    if (route->authenticated)
    {
        const auto auth = req.headers.find("authorization");
        const auto key = req.headers.find("x-api-key");
        if (auth != req.headers.end())
        {
            if (!auth->second.starts_with("Bearer ") || auth->second.size() <= 7)
                throw Error{Errc::unauthenticated, "Authorization header must be 'Bearer <token>'"};
            ctx.principal = registry_.session_principal(std::string_view{auth->second}.substr(7));
        }
        else if (key != req.headers.end())
            ctx.principal = registry_.api_key_principal(key->second);
        else
            throw Error{Errc::unauthenticated, "credentials required: Bearer token or X-API-Key"};
    }

    if (!req.body.empty())
    {
        try
        {
            ctx.body = json::parse(req.body);
        }
        catch (const json::exception&)
        {
            throw Error{Errc::bad_request, "request body is not valid JSON"};
        }
        if (!ctx.body.is_object())
            throw Error{Errc::bad_request, "request body must be a JSON object"};
    }
    return route->handler(ctx);
}
}  // namespace workbench::http
