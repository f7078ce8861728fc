#include "smartotps/hash.hpp"

#include "smartotps/errors.hpp"

#include <openssl/evp.h>

#include <limits>
#include <string>

namespace smartotps {

namespace {

Hash256 evp_digest(const EVP_MD* md, ByteView data)
{
    Hash256 out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1 || len != out.size())
        throw std::runtime_error("EVP_Digest failed");
    return out;
}

} // namespace

HashFunction sha3_256()
{
    return [](ByteView data) { return evp_digest(EVP_sha3_256(), data); };
}

HashFunction sha256()
{
    return [](ByteView data) { return evp_digest(EVP_sha256(), data); };
}

Hasher::Hasher(int bits, HashFunction fn) : bits_(bits), fn_(std::move(fn))
{
    if (bits < 128 || bits > 256 || bits % 8 != 0)
        throw DomainError("hash output size S must be a multiple of 8 in [128, 256], got " + std::to_string(bits));
    if (!fn_)
        throw DomainError("hash function must be set");
}

Digest Hasher::operator()(ByteView data) const
{
    if (counter_ != nullptr) {
        ++counter_->calls;
        counter_->words += (data.size() + 31) / 32;
    }
    const Hash256 full = fn_(data);
    return Digest(Bytes(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(digest_size())));
}

Hasher Hasher::counting(HashCounter& counter) const
{
    Hasher copy = *this;
    copy.counter_ = &counter;
    return copy;
}

Digest truncated_hash(const Hasher& h, ByteView data)
{
    return h(data);
}

Digest prf(const Hasher& h, const Seed& k, std::uint64_t x)
{
    if (x > std::numeric_limits<std::uint32_t>::max())
        throw DomainError("PRF input must be below 2^32");
    Bytes input(k.bytes.begin(), k.bytes.end());
    append_be32(input, static_cast<std::uint32_t>(x));
    return h(input);
}

Digest chain_step(const Hasher& h, const Digest& d, std::uint32_t j)
{
    if (j == 0)
        throw DomainError("chain position 0 is the PRF output and is never a hash");
    Bytes input;
    input.reserve(4 + d.size());
    append_be32(input, j);
    append(input, d.bytes());
    return h(input);
}

Digest chain_extend(const Hasher& h, Digest d, std::uint32_t from, std::uint32_t to)
{
    if (from > to)
        throw DomainError("chain_extend: from (" + std::to_string(from) + ") > to (" + std::to_string(to) + ")");
    for (std::uint32_t j = from + 1; j <= to; ++j)
        d = chain_step(h, d, j);
    return d;
}

Digest hash_pair(const Hasher& h, const Digest& a, const Digest& b)
{
    Bytes input;
    input.reserve(a.size() + b.size());
    append(input, a.bytes());
    append(input, b.bytes());
    return h(input);
}

} // namespace smartotps
