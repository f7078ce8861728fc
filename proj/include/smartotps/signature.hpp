#pragma once

#include "smartotps/digest.hpp"

#include <array>

namespace smartotps {

/// Ed25519 signing key derived from a 32-byte seed. Deliberately has no
/// serialization.
class SigningKey {
public:
    static SigningKey from_seed(const std::array<std::uint8_t, 32>& seed);

    const Bytes& public_key() const noexcept { return public_key_; }
    Bytes sign(ByteView message) const;

private:
    std::array<std::uint8_t, 32> seed_{};
    Bytes public_key_;
};

/// False for malformed keys or signatures as well as for wrong ones.
bool verify_signature(ByteView public_key, ByteView message, ByteView signature);

} // namespace smartotps
