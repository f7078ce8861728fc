#include "oracles.hpp"

#include "smartotps/errors.hpp"
#include "smartotps/hash.hpp"
#include "smartotps/mnemonic.hpp"
#include "smartotps/signature.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace smartotps;

TEST(Digest, HexRoundTripAndLsb)
{
    const Digest d = Digest::from_hex("00ff10");
    EXPECT_EQ(d.hex(), "00ff10");
    EXPECT_EQ(d.bits(), 24);
    EXPECT_FALSE(d.lsb());
    EXPECT_TRUE(d.with_lsb(true).lsb());
    EXPECT_EQ(d.with_lsb(true).hex(), "00ff11");
    EXPECT_THROW(Digest::from_hex("abc"), ParseError);
    EXPECT_THROW(Digest::from_hex("zz"), ParseError);
}

TEST(Hash, KnownSha3Vectors)
{
    const Hasher h(256);
    EXPECT_EQ(h(Bytes{}).hex(), "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");
    const std::string abc = "abc";
    EXPECT_EQ(h(Bytes(abc.begin(), abc.end())).hex(),
              "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532");
}

TEST(Hash, TruncationKeepsLeadingBytes)
{
    const Bytes in = {1, 2, 3};
    for (int bits = 128; bits <= 256; bits += 8) {
        const Hasher h(bits);
        EXPECT_EQ(h(in), oracle::h(in, bits)) << bits;
        EXPECT_EQ(h(in).size(), static_cast<std::size_t>(bits / 8));
    }
    EXPECT_THROW(Hasher(120), DomainError);
    EXPECT_THROW(Hasher(129), DomainError);
}

TEST(Hash, PrfAndChainMatchByteLayout)
{
    const Hasher h(128);
    Seed k;
    for (std::size_t i = 0; i < k.bytes.size(); ++i)
        k.bytes[i] = static_cast<std::uint8_t>(i * 7 + 3);
    for (std::uint32_t idx : {0u, 1u, 255u, 70000u})
        for (std::uint32_t pos = 0; pos < 5; ++pos)
            EXPECT_EQ(chain_extend(h, prf(h, k, idx), 0, pos), oracle::chain(k, idx, pos, 128));
    EXPECT_THROW(chain_step(h, prf(h, k, 0), 0), DomainError);
    EXPECT_THROW(prf(h, k, std::uint64_t{1} << 32), DomainError);
}

TEST(Hash, ChainExtendComposes)
{
    const Hasher h(160);
    const Digest start = h(Bytes{9});
    EXPECT_EQ(chain_extend(h, chain_extend(h, start, 0, 3), 3, 7), chain_extend(h, start, 0, 7));
    EXPECT_EQ(chain_extend(h, start, 4, 4), start);
}

TEST(Hash, CountingHasherTalliesWords)
{
    HashCounter c;
    const Hasher h = Hasher(128).counting(c);
    h(Bytes(32));
    h(Bytes(33));
    h(Bytes(0));
    EXPECT_EQ(c.calls, 3u);
    EXPECT_EQ(c.words, 1u + 2u + 0u);
}

TEST(Mnemonic, ReferenceVectors)
{
    const auto& wl = Wordlist::standard();
    struct Case {
        const char* hex;
        const char* words;
    };
    const Case cases[] = {
        {"00000000000000000000000000000000",
         "abandon abandon abandon abandon abandon abandon abandon abandon abandon abandon abandon about"},
        {"7f7f7f7f7f7f7f7f7f7f7f7f7f7f7f7f",
         "legal winner thank year wave sausage worth useful legal winner thank yellow"},
        {"80808080808080808080808080808080",
         "letter advice cage absurd amount doctor acoustic avoid letter advice cage above"},
        {"ffffffffffffffffffffffffffffffff", "zoo zoo zoo zoo zoo zoo zoo zoo zoo zoo zoo wrong"},
        {"0000000000000000000000000000000000000000000000000000000000000000",
         "abandon abandon abandon abandon abandon abandon abandon abandon abandon abandon abandon abandon "
         "abandon abandon abandon abandon abandon abandon abandon abandon abandon abandon abandon art"},
    };
    for (const auto& c : cases) {
        EXPECT_EQ(join_words(mnemonic_encode(wl, from_hex(c.hex))), c.words);
        EXPECT_EQ(to_hex(mnemonic_decode(wl, split_words(c.words))), c.hex);
    }
}

TEST(Mnemonic, RoundTripAllSizes)
{
    std::mt19937_64 rng(3);
    const auto& wl = Wordlist::standard();
    for (int bits = 128; bits <= 256; bits += 32) {
        for (int trial = 0; trial < 50; ++trial) {
            Bytes b(static_cast<std::size_t>(bits / 8));
            for (auto& x : b)
                x = static_cast<std::uint8_t>(rng());
            const auto words = mnemonic_encode(wl, b);
            EXPECT_EQ(words.size(), mnemonic_word_count(bits));
            EXPECT_EQ(mnemonic_decode(wl, words), b);
        }
    }
}

TEST(Mnemonic, RejectsBadInput)
{
    const auto& wl = Wordlist::standard();
    auto words = split_words("legal winner thank year wave sausage worth useful legal winner thank yellow");
    words.back() = "zoo";
    EXPECT_THROW(mnemonic_decode(wl, words), IntegrityError);
    words.back() = "notaword";
    EXPECT_THROW(mnemonic_decode(wl, words), ParseError);
    words.pop_back();
    EXPECT_THROW(mnemonic_decode(wl, words), ParseError);
    EXPECT_THROW(mnemonic_encode(wl, Bytes(17)), DomainError);
    EXPECT_FALSE(mnemonic_supports_bits(136));
}

TEST(Signature, Rfc8032FirstVector)
{
    std::array<std::uint8_t, 32> seed{};
    const Bytes s = from_hex("9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60");
    std::copy(s.begin(), s.end(), seed.begin());
    const SigningKey key = SigningKey::from_seed(seed);
    EXPECT_EQ(to_hex(key.public_key()), "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a");
    const Bytes sig = key.sign(Bytes{});
    EXPECT_EQ(to_hex(sig), "e5564300c360ac729086e2cc806e828a84877f1eb8e5d974d873e065224901555fb8821590a33bacc61e39"
                           "701cf9b46bd25bf5f0595bbe24655141438e7a100b");
    EXPECT_TRUE(verify_signature(key.public_key(), Bytes{}, sig));
}

TEST(Signature, RejectsTampering)
{
    const SigningKey key = SigningKey::from_seed({});
    const Bytes msg = {1, 2, 3};
    Bytes sig = key.sign(msg);
    EXPECT_TRUE(verify_signature(key.public_key(), msg, sig));
    EXPECT_FALSE(verify_signature(key.public_key(), Bytes{1, 2, 4}, sig));
    sig[0] ^= 1;
    EXPECT_FALSE(verify_signature(key.public_key(), msg, sig));
    EXPECT_FALSE(verify_signature(Bytes(5), msg, sig));
    EXPECT_FALSE(verify_signature(key.public_key(), msg, Bytes(3)));
}
