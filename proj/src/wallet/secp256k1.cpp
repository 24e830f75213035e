// Tubu workbench: smart-contract deployment and interaction service
// Copyright 2026 The Tubu Workbench Authors.
// SPDX-License-Identifier: Apache-2.0

#include <workbench/codec/hex.hpp>
#include <workbench/error.hpp>
#include <workbench/wallet/secp256k1.hpp>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

namespace workbench::secp256k1
{
namespace
{
const uint256 P{"0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F"};
const uint256 N{"0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141"};
const uint256 HALF_N = N >> 1;
const uint256 GX{"0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798"};
const uint256 GY{"0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8"};

// p = 2^256 - 0x1000003D1, so 2^256 == 0x1000003D1 (mod p).
const uint512 FOLD{"0x1000003D1"};
const uint512 LOW_MASK = (uint512{1} << 256) - 1;

// Field arithmetic mod p.

uint256 fmul(const uint256& a, const uint256& b)
{
    uint512 t = uint512{a} * b;
    t = (t & LOW_MASK) + (t >> 256) * FOLD;
    t = (t & LOW_MASK) + (t >> 256) * FOLD;
    auto r = static_cast<uint256>(t);
    if (t >= P)
        r = static_cast<uint256>(t - P);
    return r;
}

uint256 fsqr(const uint256& a)
{
    return fmul(a, a);
}

uint256 fadd(const uint256& a, const uint256& b)
{
    const uint512 t = uint512{a} + b;
    return static_cast<uint256>(t >= P ? t - P : t);
}

uint256 fsub(const uint256& a, const uint256& b)
{
    return a >= b ? a - b : static_cast<uint256>(uint512{a} + P - b);
}

uint256 fpow(uint256 base, uint256 exp)
{
    uint256 result = 1;
    while (exp != 0)
    {
        if ((exp & 1) != 0)
            result = fmul(result, base);
        base = fsqr(base);
        exp >>= 1;
    }
    return result;
}

uint256 finv(const uint256& a)
{
    return fpow(a, P - 2);
}

// Scalar arithmetic mod n.

uint256 nmul(const uint256& a, const uint256& b)
{
    return static_cast<uint256>((uint512{a} * b) % N);
}

uint256 nadd(const uint256& a, const uint256& b)
{
    const uint512 t = uint512{a} + b;
    return static_cast<uint256>(t >= N ? t - N : t);
}

uint256 ninv(const uint256& a)
{
    uint256 result = 1, base = a, exp = N - 2;
    while (exp != 0)
    {
        if ((exp & 1) != 0)
            result = nmul(result, base);
        base = nmul(base, base);
        exp >>= 1;
    }
    return result;
}

// Jacobian coordinates: (X, Y, Z) represents (X/Z^2, Y/Z^3); Z == 0 is infinity.
struct Jacobian
{
    uint256 x, y, z;
    [[nodiscard]] bool infinity() const noexcept { return z == 0; }
};

struct Affine
{
    uint256 x, y;
};

Jacobian dbl(const Jacobian& p)
{
    if (p.infinity() || p.y == 0)
        return {0, 1, 0};
    const auto a = fsqr(p.x);
    const auto b = fsqr(p.y);
    const auto c = fsqr(b);
    auto d = fsub(fsub(fsqr(fadd(p.x, b)), a), c);
    d = fadd(d, d);
    const auto e = fadd(fadd(a, a), a);
    const auto f = fsqr(e);
    const auto x3 = fsub(f, fadd(d, d));
    auto c8 = fadd(c, c);
    c8 = fadd(c8, c8);
    c8 = fadd(c8, c8);
    const auto y3 = fsub(fmul(e, fsub(d, x3)), c8);
    const auto yz = fmul(p.y, p.z);
    return {x3, y3, fadd(yz, yz)};
}

Jacobian add(const Jacobian& p, const Jacobian& q)
{
    if (p.infinity())
        return q;
    if (q.infinity())
        return p;
    const auto z1z1 = fsqr(p.z);
    const auto z2z2 = fsqr(q.z);
    const auto u1 = fmul(p.x, z2z2);
    const auto u2 = fmul(q.x, z1z1);
    const auto s1 = fmul(p.y, fmul(q.z, z2z2));
    const auto s2 = fmul(q.y, fmul(p.z, z1z1));
    if (u1 == u2)
        return s1 == s2 ? dbl(p) : Jacobian{0, 1, 0};
    const auto h = fsub(u2, u1);
    const auto r = fsub(s2, s1);
    const auto h2 = fsqr(h);
    const auto h3 = fmul(h, h2);
    const auto u1h2 = fmul(u1, h2);
    const auto x3 = fsub(fsub(fsqr(r), h3), fadd(u1h2, u1h2));
    const auto y3 = fsub(fmul(r, fsub(u1h2, x3)), fmul(s1, h3));
    return {x3, y3, fmul(h, fmul(p.z, q.z))};
}

Jacobian multiply(const Jacobian& p, const uint256& k)
{
    Jacobian acc{0, 1, 0};
    if (k == 0)
        return acc;
    for (auto bit = boost::multiprecision::msb(k) + 1; bit-- > 0;)
    {
        acc = dbl(acc);
        if (boost::multiprecision::bit_test(k, bit))
            acc = add(acc, p);
    }
    return acc;
}

Affine to_affine(const Jacobian& p)
{
    const auto zi = finv(p.z);
    const auto zi2 = fsqr(zi);
    return {fmul(p.x, zi2), fmul(p.y, fmul(zi2, zi))};
}

const Jacobian& generator()
{
    static const Jacobian g{GX, GY, 1};
    return g;
}

PublicKey encode(const Affine& a)
{
    PublicKey out;
    const auto x = to_be32(a.x), y = to_be32(a.y);
    std::copy(x.bytes.begin(), x.bytes.end(), out.bytes.begin());
    std::copy(y.bytes.begin(), y.bytes.end(), out.bytes.begin() + 32);
    return out;
}

bool on_curve(const uint256& x, const uint256& y)
{
    if (x >= P || y >= P)
        return false;
    return fsqr(y) == fadd(fmul(fsqr(x), x), 7);
}

std::array<uint8_t, 32> hmac(const std::array<uint8_t, 32>& key, std::initializer_list<bytes_view> parts)
{
    bytes msg;
    for (const auto& part : parts)
        append(msg, part);
    std::array<uint8_t, 32> out{};
    unsigned len = 0;
    if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), msg.data(), msg.size(), out.data(), &len))
        throw Error{Errc::crypto_failure, "HMAC-SHA256 unavailable"};
    OPENSSL_cleanse(msg.data(), msg.size());
    return out;
}

/// RFC 6979 section 3.2 nonce stream for a 256-bit curve and SHA-256.
class NonceStream
{
public:
    NonceStream(const Secret& secret, const uint256& z)
    {
        const auto h = to_be32(z);
        v_.fill(0x01);
        k_.fill(0x00);
        const uint8_t zero = 0x00, one = 0x01;
        k_ = hmac(k_, {v_, {&zero, 1}, secret.view(), h.view()});
        v_ = hmac(k_, {v_});
        k_ = hmac(k_, {v_, {&one, 1}, secret.view(), h.view()});
        v_ = hmac(k_, {v_});
    }

    uint256 next()
    {
        for (;;)
        {
            if (!first_)
            {
                const uint8_t zero = 0x00;
                k_ = hmac(k_, {v_, {&zero, 1}});
                v_ = hmac(k_, {v_});
            }
            first_ = false;
            v_ = hmac(k_, {v_});
            const auto k = from_be(v_);
            if (k != 0 && k < N)
                return k;
        }
    }

    ~NonceStream()
    {
        OPENSSL_cleanse(k_.data(), k_.size());
        OPENSSL_cleanse(v_.data(), v_.size());
    }

private:
    std::array<uint8_t, 32> k_{}, v_{};
    bool first_ = true;
};
}  // namespace

const uint256& field_prime() noexcept
{
    return P;
}

const uint256& group_order() noexcept
{
    return N;
}

bool is_valid_secret(const Secret& secret) noexcept
{
    const auto d = from_be(secret.view());
    return d != 0 && d < N;
}

PublicKey derive_public(const Secret& secret)
{
    if (!is_valid_secret(secret))
        throw Error{Errc::invalid_private_key, "private key scalar out of range"};
    return encode(to_affine(multiply(generator(), from_be(secret.view()))));
}

bool is_on_curve(const PublicKey& key) noexcept
{
    return on_curve(from_be(key.view().first(32)), from_be(key.view().subspan(32)));
}

RecoverableSignature sign(const Digest32& hash, const Secret& secret)
{
    if (!is_valid_secret(secret))
        throw Error{Errc::invalid_private_key, "private key scalar out of range"};
    const auto d = from_be(secret.view());
    auto z = from_be(hash.view());
    if (z >= N)
        z -= N;

    NonceStream nonces{secret, z};
    for (;;)
    {
        const auto k = nonces.next();
        const auto R = to_affine(multiply(generator(), k));
        // R.x >= n cannot be expressed in an EIP-155 v value; draw again.
        if (R.x >= N)
            continue;
        const auto r = R.x;
        if (r == 0)
            continue;
        auto s = nmul(ninv(k), nadd(z, nmul(r, d)));
        if (s == 0)
            continue;
        uint8_t recid = (R.y & 1) != 0 ? 1 : 0;
        if (s > HALF_N)
        {
            s = N - s;
            recid ^= 1;
        }
        return {r, s, recid};
    }
}

std::optional<PublicKey> recover(const Digest32& hash, const uint256& r, const uint256& s, uint8_t recovery_id)
{
    if (r == 0 || r >= N || s == 0 || s >= N || recovery_id > 1)
        return std::nullopt;

    const auto x = r;
    const auto rhs = fadd(fmul(fsqr(x), x), 7);
    auto y = fpow(rhs, (P + 1) >> 2);
    if (fsqr(y) != rhs)
        return std::nullopt;
    if (static_cast<uint8_t>(y & 1) != recovery_id)
        y = P - y;

    auto z = from_be(hash.view());
    if (z >= N)
        z -= N;
    const auto r_inv = ninv(r);
    const auto u1 = nmul(z == 0 ? uint256{0} : N - z, r_inv);
    const auto u2 = nmul(s, r_inv);

    const auto q = add(multiply(generator(), u1), multiply(Jacobian{x, y, 1}, u2));
    if (q.infinity())
        return std::nullopt;
    return encode(to_affine(q));
}
}  // namespace workbench::secp256k1
