#include "smartotps/security.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace smartotps;

TEST(Security, RequiredBitsAndWords)
{
    EXPECT_EQ(required_bits(128, 64), 136);
    EXPECT_EQ(mnemonic_words_for(136), 13);
    EXPECT_EQ(required_bits(128, 1024), 140);
    EXPECT_EQ(required_bits(128, 1), 130);
    EXPECT_EQ(required_bits(128, 65), 137);
    EXPECT_EQ(mnemonic_words_for(128), 12);
    EXPECT_EQ(codec_bits_for(136), 160);
    EXPECT_EQ(codec_bits_for(128), 128);
    EXPECT_EQ(codec_bits_for(257), 0);
}

TEST(Security, AdvantageBound)
{
    EXPECT_DOUBLE_EQ(static_cast<double>(adv_chain(0, 0, 136).log2), -136.0);
    const long double x = adv_chain(std::ldexp(1.0L, 100), std::ldexp(1.0L, 12), 136).log2;
    EXPECT_NEAR(static_cast<double>(x), -35.0, 1e-9);
    const long double q = std::ldexp(1.0L, 90);
    EXPECT_NEAR(static_cast<double>(adv_chain(2 * q, 0, 128).log2 - adv_chain(q, 0, 128).log2), 1.0, 1e-12);
    EXPECT_NEAR(static_cast<double>(adv_chain(3, 0, 10).value()), 7.0 / 1024.0, 1e-15);
}

TEST(Security, LowerBoundNeverExceedsProduct)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> qexp(0, 140);
    std::uniform_int_distribution<int> pexp(0, 12);
    std::uniform_int_distribution<int> bits(16, 160);
    std::uniform_int_distribution<int> lexp(0, 20);
    for (int i = 0; i < 1000; ++i) {
        const long double Q = std::exp2(static_cast<long double>(qexp(rng)));
        const long double P = std::ldexp(1.0L, pexp(rng));
        const int S = bits(rng);
        const long double L = std::ldexp(1.0L, lexp(rng));
        const long double lower = scheme_secure_lower_bound(Q, P, S, L);
        const long double product = scheme_secure_product(adv_chain(Q, P, S), L);
        EXPECT_GE(lower, 0.0L);
        EXPECT_LE(lower, product + 1e-15L) << "Q=" << static_cast<double>(Q) << " S=" << S;
    }
}

TEST(Security, LowerBoundEdges)
{
    const auto x = adv_chain(1000, 4, 20);
    EXPECT_NEAR(static_cast<double>(scheme_secure_lower_bound(1000, 4, 20, 1)), 1.0 - static_cast<double>(x.value()),
                1e-15);
    EXPECT_EQ(scheme_secure_lower_bound(std::ldexp(1.0L, 30), 1, 20, 1024), 0.0L);
    EXPECT_GE(scheme_secure_lower_bound(1e6L, 8, 64, 16), scheme_secure_lower_bound(1e7L, 8, 64, 16));
    EXPECT_GE(scheme_secure_lower_bound(1e6L, 8, 64, 16), scheme_secure_lower_bound(1e6L, 8, 64, 32));
    EXPECT_LE(scheme_secure_lower_bound(1e6L, 8, 64, 16), scheme_secure_lower_bound(1e6L, 8, 72, 16));
}

// With S = required_bits and Q = 2^lambda the bound sits exactly at
// 1/2 - (2P+1) / 2^(lambda+2) for power-of-two leaf counts.
TEST(Security, RequiredBitsGiveHalfMinusEpsilon)
{
    for (int lambda : {32, 64, 128})
        for (std::uint64_t leaves : {1ull, 64ull, 1024ull})
            for (long double P : {1.0L, 8.0L}) {
                const int S = required_bits(lambda, leaves);
                const long double eps = (2 * P + 1) / std::ldexp(1.0L, lambda + 2);
                const long double lb = scheme_secure_lower_bound(std::ldexp(1.0L, lambda), P, S,
                                                                 static_cast<long double>(leaves));
                EXPECT_NEAR(static_cast<double>(lb), static_cast<double>(0.5L - eps), 1e-15);
            }
}

TEST(Security, ReportIsStable)
{
    const std::string a = security_report(128, 64);
    EXPECT_EQ(a, security_report(128, 64));
    EXPECT_NE(a.find("S=136"), std::string::npos);
    EXPECT_NE(a.find("mnemonic_words=13"), std::string::npos);
    EXPECT_NE(a.find("pq_sha3_bits=166"), std::string::npos);
}
