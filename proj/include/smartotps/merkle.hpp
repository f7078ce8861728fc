#pragma once

#include "smartotps/digest.hpp"
#include "smartotps/hash.hpp"
#include "smartotps/params.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace smartotps {

/// Authentication path, leaf-to-top. The least significant bit of each sibling
/// carries its parity: 1 when the sibling is the right child.
struct MerkleProof {
    std::vector<Digest> siblings;

    std::size_t size() const noexcept { return siblings.size(); }
    bool operator==(const MerkleProof&) const = default;
};

/// The 2^L_S cached nodes of one subtree, as stored by the contract.
struct SubtreeLayer {
    std::vector<Digest> nodes;
    std::uint64_t subtree_index = 0;

    bool operator==(const SubtreeLayer&) const = default;
};

/// Parent of two nodes. Child LSBs are cleared first: proofs reuse that bit for parity.
Digest merkle_combine(const Hasher& h, const Digest& left, const Digest& right);

/// Leaf of chain beta in generation eta: the chain element at position P.
Digest leaf_of_chain(const Hasher& h, const Seed& k, std::uint64_t beta, std::uint64_t eta, const TreeParams& p);

/// OTP of an absolute operation id in generation eta: chain element alpha of chain beta.
Digest otp_from_seed(const Hasher& h, const Seed& k, std::uint64_t eta, std::uint64_t op_id, const TreeParams& p);
/// All N/P leaves of generation eta, in index order.
std::vector<Digest> generate_leaves(const Hasher& h, const Seed& k, std::uint64_t eta, const TreeParams& p);

/// Pairwise reduction of a power-of-two node list to its root.
Digest reduce_mt(const Hasher& h, std::span<const Digest> nodes);

/// Proof for leaf idx that stops at the level holding 2^stop_depth nodes.
MerkleProof gen_proof(const Hasher& h, std::span<const Digest> leaves, std::uint64_t idx, int stop_depth = 0);

/// Folds a proof onto a node using the parity bits.
Digest fold_proof(const Hasher& h, Digest node, const MerkleProof& proof);

/// Parity word of a proof: bit i set when LSB(pi[i]) = 1.
std::uint64_t derive_idx(const MerkleProof& proof);
/// Same as derive_idx, restricted to the first H_S - L_S entries.
std::uint64_t derive_idx_in_cache(const MerkleProof& proof, const TreeParams& p);
/// Parity word a proof for `index` carries when it has `len` entries.
std::uint64_t parity_word(std::uint64_t index, int len);

/// Bit-clearing loop: keeps the low H_S - L_S bits of a subtree leaf index
/// (the leaf's position below its cached node).
std::uint64_t expected_idx_in_cache(std::uint64_t child_leaf_id, const TreeParams& p);
/// Closed form floor(child / 2^(H_S - L_S)): which cached node covers the leaf.
std::uint64_t cached_node_index(std::uint64_t child_leaf_id, const TreeParams& p);
/// Cached node identified from the loop result; equals cached_node_index.
std::uint64_t cached_node_from_cleared(std::uint64_t child_leaf_id, std::uint64_t cleared, const TreeParams& p);

/// Reconstructs the parent root from OTP_opID and a proof of length H.
Digest derive_root_hash(const Hasher& h, const Digest& otp, const MerkleProof& proof, std::uint64_t op_id,
                        const TreeParams& p);

/// Reconstructs the cached node covering OTP_opID from a proof of length H_S - L_S.
Digest derive_node_in_cache(const Hasher& h, const Digest& otp, const MerkleProof& proof, std::uint64_t op_id,
                            const TreeParams& p);

bool subtree_consistency(const Hasher& h, const Digest& sub_root, const MerkleProof& pi_sr, const Digest& parent_root);

/// Immutable tree snapshot over N/P leaves. levels()[0] holds the leaves and
/// levels().back() the root.
class MerkleTree {
public:
    MerkleTree(const Hasher& h, std::vector<Digest> leaves);

    const Digest& root() const { return levels_.back().front(); }
    int height() const { return static_cast<int>(levels_.size()) - 1; }
    const std::vector<Digest>& leaves() const { return levels_.front(); }
    /// Nodes at `depth` below the root (2^depth of them).
    const std::vector<Digest>& at_depth(int depth) const;

    MerkleProof proof(std::uint64_t leaf, int stop_depth = 0) const;
    /// Proof of the node at (depth, index) up to the root.
    MerkleProof node_proof(int depth, std::uint64_t index) const;

    /// Cached sublayer of subtree delta.
    SubtreeLayer cached_sublayer(std::uint64_t delta, const TreeParams& p) const;
    /// pi_sr: proof of subtree delta's root against the parent root.
    MerkleProof subtree_root_proof(std::uint64_t delta, const TreeParams& p) const;
    /// Proof of a leaf up to its cached node (length H_S - L_S).
    MerkleProof cache_proof(std::uint64_t leaf, const TreeParams& p) const;

private:
    std::vector<std::vector<Digest>> levels_;
};

} // namespace smartotps
