#pragma once

#include "smartotps/digest.hpp"

#include <array>
#include <cstdint>
#include <functional>

namespace smartotps {

using Hash256 = std::array<std::uint8_t, 32>;
using HashFunction = std::function<Hash256(ByteView)>;

HashFunction sha3_256();
HashFunction sha256();

/// Tally of hash evaluations and 32-byte input words, filled by a counting Hasher.
struct HashCounter {
    std::uint64_t calls = 0;
    std::uint64_t words = 0;
};

/// h(.): a 256-bit hash truncated to S bits. S is a multiple of 8 in [128, 256].
///
/// Cheap to copy. A Hasher obtained from counting() reports every evaluation
/// to the referenced counter, which must outlive it.
class Hasher {
public:
    explicit Hasher(int bits = 128, HashFunction fn = sha3_256());

    int bits() const noexcept { return bits_; }
    std::size_t digest_size() const noexcept { return static_cast<std::size_t>(bits_ / 8); }

    Digest operator()(ByteView data) const;

    Hasher counting(HashCounter& counter) const;

private:
    int bits_;
    HashFunction fn_;
    HashCounter* counter_ = nullptr;
};

Digest truncated_hash(const Hasher& h, ByteView data);

/// F_k(x) = h(k || enc32(x)).
Digest prf(const Hasher& h, const Seed& k, std::uint64_t x);

/// Element j of a chain from element j-1: h(enc32(j) || d). Requires j >= 1.
Digest chain_step(const Hasher& h, const Digest& d, std::uint32_t j);

/// Walks a chain from position `from` to position `to` (to - from hash steps).
Digest chain_extend(const Hasher& h, Digest d, std::uint32_t from, std::uint32_t to);

/// h(a || b) over two digests.
Digest hash_pair(const Hasher& h, const Digest& a, const Digest& b);

} // namespace smartotps
