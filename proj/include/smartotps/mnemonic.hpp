#pragma once

#include "smartotps/digest.hpp"

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace smartotps {

/// The 2048-word mnemonic list: one word per line, exactly 2048 lines.
class Wordlist {
public:
    static Wordlist load(const std::string& path);
    static Wordlist from_lines(const std::vector<std::string>& words);

    /// Path from $SMARTOTPS_WORDLIST, falling back to the bundled data/english.txt.
    static std::string default_path();
    static const Wordlist& standard();

    const std::string& word(std::size_t index) const { return words_.at(index); }
    /// Index of a word, or -1 when it is not in the list.
    int index_of(std::string_view word) const;

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, int> index_;
};

/// Entropy sizes the codec accepts: 128, 160, 192, 224 or 256 bits.
bool mnemonic_supports_bits(int bits);
std::size_t mnemonic_word_count(int bits);

std::vector<std::string> mnemonic_encode(const Wordlist& wl, ByteView entropy);
Bytes mnemonic_decode(const Wordlist& wl, const std::vector<std::string>& words);

inline std::vector<std::string> mnemonic_encode(const Wordlist& wl, const Digest& d)
{
    return mnemonic_encode(wl, d.bytes());
}
inline Digest mnemonic_decode_digest(const Wordlist& wl, const std::vector<std::string>& words)
{
    return Digest(mnemonic_decode(wl, words));
}

std::string join_words(const std::vector<std::string>& words);
std::vector<std::string> split_words(std::string_view text);

} // namespace smartotps
