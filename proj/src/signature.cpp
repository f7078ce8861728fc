#include "smartotps/signature.hpp"

#include "smartotps/errors.hpp"

#include <openssl/evp.h>

#include <memory>

namespace smartotps {

namespace {

struct PkeyFree {
    void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct MdCtxFree {
    void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyFree>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxFree>;

PkeyPtr private_key(const std::array<std::uint8_t, 32>& seed)
{
    PkeyPtr key(EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), seed.size()));
    if (!key)
        throw std::runtime_error("OpenSSL refused the Ed25519 seed");
    return key;
}

} // namespace

SigningKey SigningKey::from_seed(const std::array<std::uint8_t, 32>& seed)
{
    SigningKey out;
    out.seed_ = seed;
    auto key = private_key(seed);
    std::size_t len = 32;
    out.public_key_.resize(len);
    if (EVP_PKEY_get_raw_public_key(key.get(), out.public_key_.data(), &len) != 1 || len != 32)
        throw std::runtime_error("cannot extract Ed25519 public key");
    return out;
}

Bytes SigningKey::sign(ByteView message) const
{
    auto key = private_key(seed_);
    MdCtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1)
        throw std::runtime_error("EVP_DigestSignInit failed");
    Bytes sig(64);
    std::size_t len = sig.size();
    if (EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) != 1 || len != 64)
        throw std::runtime_error("EVP_DigestSign failed");
    return sig;
}

bool verify_signature(ByteView public_key, ByteView message, ByteView signature)
{
    if (public_key.size() != 32 || signature.size() != 64)
        return false;
    PkeyPtr key(EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, public_key.data(), public_key.size()));
    if (!key)
        return false;
    MdCtxPtr ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key.get()) != 1)
        return false;
    return EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(), message.size()) == 1;
}

} // namespace smartotps
