#pragma once

#include "smartotps/digest.hpp"
#include "smartotps/params.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace smartotps {

/// Leaf export ("microSD card") file:
///
///     smartotps-leaves v1 S=<bits> N=<n> P=<p> NS=<ns> eta=<eta>
///     <leaf 0 as lowercase hex>
///     ...
struct LeafFile {
    int S = 128;
    std::uint64_t N = 0;
    std::uint32_t P = 1;
    std::uint64_t NS = 0;
    std::uint64_t eta = 0;
    std::vector<Digest> leaves;

    std::string serialize() const;
    static LeafFile parse(std::string_view text);

    void write(const std::string& path) const;
    static LeafFile read(const std::string& path);

    /// Throws ParseError when the header disagrees with `params` or the leaf count is wrong.
    void check_matches(const TreeParams& params) const;

    bool operator==(const LeafFile&) const = default;
};

} // namespace smartotps
