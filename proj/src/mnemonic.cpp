#include "smartotps/mnemonic.hpp"

#include "smartotps/errors.hpp"
#include "smartotps/hash.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef SMARTOTPS_DEFAULT_WORDLIST
#define SMARTOTPS_DEFAULT_WORDLIST "data/english.txt"
#endif

namespace smartotps {

namespace {

constexpr std::size_t kWordCount = 2048;
constexpr int kBitsPerWord = 11;

} // namespace

Wordlist Wordlist::from_lines(const std::vector<std::string>& words)
{
    if (words.size() != kWordCount)
        throw ParseError("wordlist must contain exactly 2048 words, got " + std::to_string(words.size()));
    Wordlist wl;
    wl.words_ = words;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].empty())
            throw ParseError("wordlist line " + std::to_string(i + 1) + " is empty");
        if (!wl.index_.emplace(words[i], static_cast<int>(i)).second)
            throw ParseError("wordlist contains duplicate word '" + words[i] + "'");
    }
    return wl;
}

Wordlist Wordlist::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open wordlist '" + path + "'");
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        words.push_back(line);
    }
    return from_lines(words);
}

std::string Wordlist::default_path()
{
    if (const char* env = std::getenv("SMARTOTPS_WORDLIST"); env != nullptr && *env != '\0')
        return env;
    return SMARTOTPS_DEFAULT_WORDLIST;
}

const Wordlist& Wordlist::standard()
{
    static const Wordlist wl = load(default_path());
    return wl;
}

int Wordlist::index_of(std::string_view word) const
{
    auto it = index_.find(std::string(word));
    return it == index_.end() ? -1 : it->second;
}

bool mnemonic_supports_bits(int bits)
{
    return bits >= 128 && bits <= 256 && bits % 32 == 0;
}

std::size_t mnemonic_word_count(int bits)
{
    if (!mnemonic_supports_bits(bits))
        throw DomainError("mnemonic codec supports 128/160/192/224/256 bits, got " + std::to_string(bits));
    return static_cast<std::size_t>((bits + bits / 32) / kBitsPerWord);
}

std::vector<std::string> mnemonic_encode(const Wordlist& wl, ByteView entropy)
{
    const int bits = static_cast<int>(entropy.size() * 8);
    const std::size_t words = mnemonic_word_count(bits);
    const Hash256 check = sha256()(entropy);

    // entropy || checksum as one bit string, read 11 bits at a time
    Bytes stream(entropy.begin(), entropy.end());
    stream.push_back(check[0]);
    auto bit_at = [&](std::size_t pos) { return (stream[pos / 8] >> (7 - pos % 8)) & 1u; };

    std::vector<std::string> out;
    out.reserve(words);
    for (std::size_t w = 0; w < words; ++w) {
        unsigned idx = 0;
        for (int b = 0; b < kBitsPerWord; ++b)
            idx = (idx << 1) | bit_at(w * kBitsPerWord + static_cast<std::size_t>(b));
        out.push_back(wl.word(idx));
    }
    return out;
}

Bytes mnemonic_decode(const Wordlist& wl, const std::vector<std::string>& words)
{
    const std::size_t total_bits = words.size() * kBitsPerWord;
    // total = bits + bits/32 = 33 * bits / 32
    if (total_bits % 33 != 0)
        throw ParseError("mnemonic word count " + std::to_string(words.size()) + " matches no supported size");
    const int bits = static_cast<int>(total_bits / 33 * 32);
    if (!mnemonic_supports_bits(bits))
        throw ParseError("mnemonic word count " + std::to_string(words.size()) + " matches no supported size");

    Bytes stream((total_bits + 7) / 8, 0);
    std::size_t pos = 0;
    for (const auto& w : words) {
        const int idx = wl.index_of(w);
        if (idx < 0)
            throw ParseError("unknown mnemonic word '" + w + "'");
        for (int b = kBitsPerWord - 1; b >= 0; --b, ++pos) {
            if ((idx >> b) & 1)
                stream[pos / 8] |= static_cast<std::uint8_t>(0x80u >> (pos % 8));
        }
    }

    Bytes entropy(stream.begin(), stream.begin() + bits / 8);
    const int checksum_bits = bits / 32;
    const std::uint8_t got = static_cast<std::uint8_t>(stream[static_cast<std::size_t>(bits / 8)] >> (8 - checksum_bits));
    const std::uint8_t want = static_cast<std::uint8_t>(sha256()(entropy)[0] >> (8 - checksum_bits));
    if (got != want)
        throw IntegrityError("mnemonic checksum mismatch");
    return entropy;
}

std::string join_words(const std::vector<std::string>& words)
{
    std::string out;
    for (const auto& w : words) {
        if (!out.empty())
            out.push_back(' ');
        out += w;
    }
    return out;
}

std::vector<std::string> split_words(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::vector<std::string> out;
    std::string w;
    while (in >> w)
        out.push_back(w);
    return out;
}

} // namespace smartotps
