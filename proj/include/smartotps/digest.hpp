#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smartotps {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

void append_be32(Bytes& out, std::uint32_t value);
void append_be64(Bytes& out, std::uint64_t value);
void append(Bytes& out, ByteView bytes);
void append(Bytes& out, std::string_view text);

/// Output of the truncated hash; S/8 bytes. The text form is lowercase hex.
class Digest {
public:
    Digest() = default;
    explicit Digest(Bytes bytes) : bytes_(std::move(bytes)) {}

    static Digest from_hex(std::string_view hex);

    ByteView bytes() const noexcept { return bytes_; }
    std::size_t size() const noexcept { return bytes_.size(); }
    int bits() const noexcept { return static_cast<int>(bytes_.size() * 8); }
    bool empty() const noexcept { return bytes_.empty(); }
    std::string hex() const { return to_hex(bytes_); }

    // Bit 0 of the last byte; proofs carry the sibling parity here.
    bool lsb() const noexcept { return !bytes_.empty() && (bytes_.back() & 1u) != 0; }
    Digest with_lsb(bool bit) const;

    auto operator<=>(const Digest&) const = default;

private:
    Bytes bytes_;
};

/// 128-bit secret seed k held by the authenticator.
struct Seed {
    std::array<std::uint8_t, 16> bytes{};

    static Seed from_hex(std::string_view hex);
    std::string hex() const { return to_hex(bytes); }

    auto operator<=>(const Seed&) const = default;
};

} // namespace smartotps
