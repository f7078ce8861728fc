#pragma once

#include <cstdint>
#include <string>

namespace smartotps {

/// Scheme parameters. N OTPs per parent tree arranged as N/P chains of length P;
/// N_S OTPs per subtree; the contract caches the subtree layer at depth L_S.
struct TreeParams {
    int S = 128;                  ///< OTP / hash output bits
    std::uint64_t N = 16;         ///< OTPs per parent tree
    std::uint32_t P = 1;          ///< chain length (iteration layers)
    std::uint64_t NS = 16;        ///< OTPs per subtree
    int LS = 0;                   ///< depth of the cached sublayer inside a subtree
    std::uint32_t len_max = 16;   ///< bound on the root-replacement lists

    /// Throws DomainError when the relationships between the fields do not hold.
    void validate() const;

    std::uint64_t leaves() const { return N / P; }           ///< N/P
    std::uint64_t subtree_leaves() const { return NS / P; }  ///< N_S/P
    std::uint64_t subtrees() const { return N / NS; }
    int H() const;   ///< log2(N/P)
    int HS() const;  ///< log2(N_S/P)

    /// "S=128 N=16 P=2 NS=8 LS=1 LEN_MAX=16"
    std::string describe() const;
    /// Parses "S,N,P,NS,LS" as used on the command line.
    static TreeParams parse_csv(const std::string& text);

    bool operator==(const TreeParams&) const = default;
};

bool is_power_of_two(std::uint64_t v);
int log2_exact(std::uint64_t v);

// Index arithmetic shared by the authenticator, the client and the contract.
// All take an absolute operation id; only opID mod N matters.

/// Position of OTP_i in its chain: P - floor(((i mod N_S) P) / N_S) - 1.
std::uint32_t otp_chain_position(const TreeParams& p, std::uint64_t op_id);
/// Number of chain steps the verifier runs before the Merkle fold, minus one.
std::uint32_t verifier_chain_offset(const TreeParams& p, std::uint64_t op_id);
/// Chain (leaf) index of OTP_i within its parent tree.
std::uint64_t otp_chain_index(const TreeParams& p, std::uint64_t op_id);
/// Iteration layer of OTP_i, 1-based (layer 1 is consumed first).
std::uint32_t layer_of(const TreeParams& p, std::uint64_t op_id);
/// Subtree index delta of OTP_i inside its parent tree.
std::uint64_t subtree_of(const TreeParams& p, std::uint64_t op_id);
/// Parent tree generation eta of OTP_i.
std::uint64_t generation_of(const TreeParams& p, std::uint64_t op_id);

/// Last slot of a subtree, reserved for the next-subtree or new-root introduction.
bool is_reserved_slot(const TreeParams& p, std::uint64_t op_id);
bool is_parent_boundary(const TreeParams& p, std::uint64_t op_id);

} // namespace smartotps
