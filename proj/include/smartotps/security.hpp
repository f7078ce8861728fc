#pragma once

#include <cstdint>
#include <string>

namespace smartotps {

/// A probability carried as its base-2 logarithm so that 2^-256 does not underflow.
struct LogProbability {
    long double log2 = 0;
    long double value() const;
};

/// (2Q + 2P + 1) / 2^S for an adversary making Q hash queries against chains of length P.
LogProbability adv_chain(long double queries, long double chain_length, int bits);

/// 1 - leaves * x with x = adv_chain(...), floored at 0.
long double scheme_secure_lower_bound(long double queries, long double chain_length, int bits, long double leaves);

/// (1 - x)^leaves, the exact independent-leaves product.
long double scheme_secure_product(const LogProbability& x, long double leaves);

/// lambda + 2 + ceil(log2(leaves)).
int required_bits(int lambda, std::uint64_t leaves);

/// Words needed at 11 bits per word: ceil(S / 11).
int mnemonic_words_for(int bits);

/// Smallest OTP size the mnemonic codec accepts that holds `bits`, or 0 when none does.
int codec_bits_for(int bits);

/// Aligned key=value report for `security calc`.
std::string security_report(int lambda, std::uint64_t leaves);

} // namespace smartotps
