#include "smartotps/digest.hpp"

#include "smartotps/errors.hpp"

#include <algorithm>

namespace smartotps {

namespace {

int nibble(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

} // namespace

std::string to_hex(ByteView bytes)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0)
        throw ParseError("hex string has odd length");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = nibble(hex[2 * i]);
        const int lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw ParseError("invalid hex digit in '" + std::string(hex) + "'");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

void append_be32(Bytes& out, std::uint32_t value)
{
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(value >> shift));
}

void append_be64(Bytes& out, std::uint64_t value)
{
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(value >> shift));
}

void append(Bytes& out, ByteView bytes)
{
    out.insert(out.end(), bytes.begin(), bytes.end());
}

void append(Bytes& out, std::string_view text)
{
    out.insert(out.end(), text.begin(), text.end());
}

Digest Digest::from_hex(std::string_view hex)
{
    return Digest(smartotps::from_hex(hex));
}

Digest Digest::with_lsb(bool bit) const
{
    Bytes copy = bytes_;
    if (!copy.empty())
        copy.back() = static_cast<std::uint8_t>((copy.back() & 0xfe) | (bit ? 1 : 0));
    return Digest(std::move(copy));
}

Seed Seed::from_hex(std::string_view hex)
{
    const Bytes raw = smartotps::from_hex(hex);
    if (raw.size() != 16)
        throw ParseError("seed must be exactly 16 bytes (32 hex digits)");
    Seed s;
    std::copy(raw.begin(), raw.end(), s.bytes.begin());
    return s;
}

} // namespace smartotps
