// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace workbench
{
/// Every failure the workbench can surface. Names follow the error vocabulary
/// of each module; the http layer maps each one to a (code, status) pair.
enum class Errc
{
    // codec
    truncated_input,
    trailing_bytes,
    non_canonical,
    payload_too_large,
    invalid_hex,

    // abi
    malformed_json,
    unsupported_type,
    duplicate_signature,
    type_mismatch,
    value_out_of_range,
    data_too_short,
    offset_out_of_bounds,
    bool_not_canonical,
    padding_not_zero,
    empty_bytecode,

    // wallet
    invalid_private_key,
    point_not_on_curve,
    malformed_rlp,
    bad_signature,
    high_s,
    wrong_chain_id,
    mac_mismatch,
    malformed_keystore,
    crypto_failure,

    // chain
    unreachable,
    protocol_error,
    node_error,
    nonce_mismatch,
    wrong_chain,
    insufficient_funds,
    no_such_contract,
    not_a_mock_network,

    // registry
    email_taken,
    weak_password,
    invalid_credentials,
    unauthenticated,
    not_authorized,
    no_such_user,
    no_such_network,
    no_such_application,
    no_such_version,
    no_such_api_key,
    name_taken,
    address_in_use,
    chain_id_mismatch,
    corrupt_snapshot,
    invalid_argument,

    // service
    abi_parse_error,
    no_such_method,
    method_is_view,
    decode_error,
    receipt_timeout,
    tx_failed,
    chain_unreachable,
    storage_failure,

    // http
    bad_request,
    not_found,
    method_not_allowed,
    internal,
};

/// Stable machine-readable name, e.g. "not_authorized".
std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& message) : std::runtime_error{message}, code_{code} {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};
}  // namespace workbench
