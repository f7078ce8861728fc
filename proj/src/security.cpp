#include "smartotps/security.hpp"

#include "smartotps/errors.hpp"
#include "smartotps/mnemonic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace smartotps {

namespace {

constexpr int kBitsPerWord = 11;

// Figures reported for Grover-style attacks on SHA-3; passed through unchanged.
constexpr int kPostQuantumSha3Bits = 166;
constexpr int kPostQuantumOtpBits = 98;
constexpr int kPostQuantumOtpLength = 205;

int ceil_log2(std::uint64_t v)
{
    int bits = 0;
    while ((std::uint64_t{1} << bits) < v)
        ++bits;
    return bits;
}

std::string format_ld(long double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6Lf", v);
    return buf;
}

} // namespace

long double LogProbability::value() const
{
    return std::exp2(log2);
}

LogProbability adv_chain(long double queries, long double chain_length, int bits)
{
    if (queries < 0 || chain_length < 0 || bits <= 0)
        throw DomainError("adv_chain needs Q >= 0, P >= 0 and S > 0");
    return {std::log2(2 * queries + 2 * chain_length + 1) - static_cast<long double>(bits)};
}

long double scheme_secure_lower_bound(long double queries, long double chain_length, int bits, long double leaves)
{
    if (leaves < 1)
        throw DomainError("leaf count must be at least 1");
    const long double log_total = std::log2(leaves) + adv_chain(queries, chain_length, bits).log2;
    if (log_total >= 0)
        return 0;
    return -std::expm1(log_total * std::log(2.0L));
}

long double scheme_secure_product(const LogProbability& x, long double leaves)
{
    const long double p = x.value();
    if (p >= 1)
        return 0;
    return std::exp(leaves * std::log1p(-p));
}

int required_bits(int lambda, std::uint64_t leaves)
{
    if (lambda <= 0 || leaves == 0)
        throw DomainError("required_bits needs lambda > 0 and at least one leaf");
    return lambda + 2 + ceil_log2(leaves);
}

int mnemonic_words_for(int bits)
{
    return (bits + kBitsPerWord - 1) / kBitsPerWord;
}

int codec_bits_for(int bits)
{
    for (int b = 128; b <= 256; b += 32)
        if (b >= bits && mnemonic_supports_bits(b))
            return b;
    return 0;
}

std::string security_report(int lambda, std::uint64_t leaves)
{
    const int s = required_bits(lambda, leaves);
    const int codec = codec_bits_for(s);
    const long double q = std::exp2(static_cast<long double>(lambda));
    std::vector<std::pair<std::string, std::string>> rows = {
        {"lambda", std::to_string(lambda)},
        {"leaves", std::to_string(leaves)},
        {"S", std::to_string(s)},
        {"mnemonic_words", std::to_string(mnemonic_words_for(s))},
        {"codec_bits", codec ? std::to_string(codec) : "none"},
        {"codec_words", codec ? std::to_string(mnemonic_word_count(codec)) : "none"},
        {"adv_chain_log2", format_ld(adv_chain(q, 1, s).log2)},
        {"secure_lower_bound", format_ld(scheme_secure_lower_bound(q, 1, s, static_cast<long double>(leaves)))},
        {"pq_sha3_bits", std::to_string(kPostQuantumSha3Bits)},
        {"pq_otp_bits", std::to_string(kPostQuantumOtpBits)},
        {"pq_otp_length_for_128", std::to_string(kPostQuantumOtpLength)},
    };
    std::size_t width = 0;
    for (const auto& [k, v] : rows)
        width = std::max(width, k.size());
    std::string out;
    for (const auto& [k, v] : rows)
        out += std::string(width - k.size(), ' ') + k + "=" + v + "\n";
    return out;
}

} // namespace smartotps
