// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

// Test-only secp256k1 oracle on OpenSSL's EC_GROUP arithmetic.
#pragma once

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>
#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace oracle
{
class OpenSslSecp256k1
{
public:
    OpenSslSecp256k1()
      : group_{EC_GROUP_new_by_curve_name(NID_secp256k1), EC_GROUP_free}, ctx_{BN_CTX_new(), BN_CTX_free}
    {}

    /// 64-byte x || y of secret * G.
    std::array<uint8_t, 64> public_key(const std::array<uint8_t, 32>& secret)
    {
        auto d = bn(secret.data(), 32);
        Point p{EC_POINT_new(group_.get()), EC_POINT_free};
        EC_POINT_mul(group_.get(), p.get(), d.get(), nullptr, nullptr, ctx_.get());
        return encode(p.get());
    }

    /// Standard ECDSA verification of (r, s) over `hash` by `pub`.
    bool verify(const std::array<uint8_t, 32>& hash, const std::array<uint8_t, 32>& r_be,
        const std::array<uint8_t, 32>& s_be, const std::array<uint8_t, 64>& pub)
    {
        const auto* n = EC_GROUP_get0_order(group_.get());
        auto z = bn(hash.data(), 32), r = bn(r_be.data(), 32), s = bn(s_be.data(), 32);
        BN_nnmod(z.get(), z.get(), n, ctx_.get());

        Num w{BN_mod_inverse(nullptr, s.get(), n, ctx_.get()), BN_free};
        Num u1{BN_new(), BN_free}, u2{BN_new(), BN_free};
        BN_mod_mul(u1.get(), z.get(), w.get(), n, ctx_.get());
        BN_mod_mul(u2.get(), r.get(), w.get(), n, ctx_.get());

        std::vector<uint8_t> oct(65);
        oct[0] = 0x04;
        std::copy(pub.begin(), pub.end(), oct.begin() + 1);
        Point q{EC_POINT_new(group_.get()), EC_POINT_free};
        if (EC_POINT_oct2point(group_.get(), q.get(), oct.data(), oct.size(), ctx_.get()) != 1)
            return false;

        Point x{EC_POINT_new(group_.get()), EC_POINT_free};
        EC_POINT_mul(group_.get(), x.get(), u1.get(), q.get(), u2.get(), ctx_.get());
        Num xx{BN_new(), BN_free};
        EC_POINT_get_affine_coordinates(group_.get(), x.get(), xx.get(), nullptr, ctx_.get());
        BN_nnmod(xx.get(), xx.get(), n, ctx_.get());
        return BN_cmp(xx.get(), r.get()) == 0;
    }

private:
    using Num = std::unique_ptr<BIGNUM, decltype(&BN_free)>;
    using Point = std::unique_ptr<EC_POINT, decltype(&EC_POINT_free)>;

    static Num bn(const uint8_t* p, int n) { return Num{BN_bin2bn(p, n, nullptr), BN_free}; }

    std::array<uint8_t, 64> encode(const EC_POINT* p)
    {
        std::array<uint8_t, 65> oct{};
        EC_POINT_point2oct(group_.get(), p, POINT_CONVERSION_UNCOMPRESSED, oct.data(), oct.size(), ctx_.get());
        std::array<uint8_t, 64> out{};
        std::copy(oct.begin() + 1, oct.end(), out.begin());
        return out;
    }

    std::unique_ptr<EC_GROUP, decltype(&EC_GROUP_free)> group_;
    std::unique_ptr<BN_CTX, decltype(&BN_CTX_free)> ctx_;
};
}  // namespace oracle
