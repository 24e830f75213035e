// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/error.hpp>

namespace workbench
{
std::string_view to_string(Errc code) noexcept
{
    switch (code)
    {
    case Errc::truncated_input: return "truncated_input";
    case Errc::trailing_bytes: return "trailing_bytes";
    case Errc::non_canonical: return "non_canonical";
    case Errc::payload_too_large: return "payload_too_large";
    case Errc::invalid_hex: return "invalid_hex";
    case Errc::malformed_json: return "malformed_json";
    case Errc::unsupported_type: return "unsupported_type";
    case Errc::duplicate_signature: return "duplicate_signature";
    case Errc::type_mismatch: return "type_mismatch";
    case Errc::value_out_of_range: return "value_out_of_range";
    case Errc::data_too_short: return "data_too_short";
    case Errc::offset_out_of_bounds: return "offset_out_of_bounds";
    case Errc::bool_not_canonical: return "bool_not_canonical";
    case Errc::padding_not_zero: return "padding_not_zero";
    case Errc::empty_bytecode: return "empty_bytecode";
    case Errc::invalid_private_key: return "invalid_private_key";
    case Errc::point_not_on_curve: return "point_not_on_curve";
    case Errc::malformed_rlp: return "malformed_rlp";
    case Errc::bad_signature: return "bad_signature";
    case Errc::high_s: return "high_s";
    case Errc::wrong_chain_id: return "wrong_chain_id";
    case Errc::mac_mismatch: return "mac_mismatch";
    case Errc::malformed_keystore: return "malformed_keystore";
    case Errc::crypto_failure: return "crypto_failure";
    case Errc::unreachable: return "unreachable";
    case Errc::protocol_error: return "protocol_error";
    case Errc::node_error: return "node_error";
    case Errc::nonce_mismatch: return "nonce_mismatch";
    case Errc::wrong_chain: return "wrong_chain";
    case Errc::insufficient_funds: return "insufficient_funds";
    case Errc::no_such_contract: return "no_such_contract";
    case Errc::not_a_mock_network: return "not_a_mock_network";
    case Errc::email_taken: return "email_taken";
    case Errc::weak_password: return "weak_password";
    case Errc::invalid_credentials: return "invalid_credentials";
    case Errc::unauthenticated: return "unauthenticated";
    case Errc::not_authorized: return "not_authorized";
    case Errc::no_such_user: return "no_such_user";
    case Errc::no_such_network: return "no_such_network";
    case Errc::no_such_application: return "no_such_app";
    case Errc::no_such_version: return "no_such_version";
    case Errc::no_such_api_key: return "no_such_api_key";
    case Errc::name_taken: return "name_taken";
    case Errc::address_in_use: return "address_in_use";
    case Errc::chain_id_mismatch: return "chain_id_mismatch";
    case Errc::corrupt_snapshot: return "corrupt_snapshot";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::abi_parse_error: return "abi_parse_error";
    case Errc::no_such_method: return "no_such_method";
    case Errc::method_is_view: return "method_is_view";
    case Errc::decode_error: return "decode_error";
    case Errc::receipt_timeout: return "receipt_timeout";
    case Errc::tx_failed: return "tx_failed";
    case Errc::chain_unreachable: return "chain_unreachable";
    case Errc::storage_failure: return "storage_failure";
    case Errc::bad_request: return "bad_request";
    case Errc::not_found: return "not_found";
    case Errc::method_not_allowed: return "method_not_allowed";
    case Errc::internal: return "internal";
    }
    return "unknown";
}
}  // namespace workbench
