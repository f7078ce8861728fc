#include "smartotps/merkle.hpp"

#include "smartotps/errors.hpp"

#include <string>

namespace smartotps {

namespace {

std::vector<std::vector<Digest>> build_levels(const Hasher& h, std::vector<Digest> leaves)
{
    if (!is_power_of_two(leaves.size()))
        throw DomainError("Merkle node count must be a power of two, got " + std::to_string(leaves.size()));
    std::vector<std::vector<Digest>> levels;
    levels.push_back(std::move(leaves));
    while (levels.back().size() > 1) {
        const auto& below = levels.back();
        std::vector<Digest> above;
        above.reserve(below.size() / 2);
        for (std::size_t i = 0; i < below.size(); i += 2)
            above.push_back(merkle_combine(h, below[i], below[i + 1]));
        levels.push_back(std::move(above));
    }
    return levels;
}

MerkleProof proof_from_levels(const std::vector<std::vector<Digest>>& levels, int from_level, std::uint64_t index,
                              int count)
{
    MerkleProof proof;
    proof.siblings.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const auto& level = levels[static_cast<std::size_t>(from_level + i)];
        const std::uint64_t node = index >> i;
        const bool sibling_is_right = (node & 1u) == 0;
        proof.siblings.push_back(level[node ^ 1u].with_lsb(sibling_is_right));
    }
    return proof;
}

Digest resolve_chain(const Hasher& h, const Digest& otp, std::uint64_t op_id, const TreeParams& p)
{
    const std::uint32_t a = verifier_chain_offset(p, op_id);
    return chain_extend(h, otp, p.P - 1 - a, p.P);
}

} // namespace

Digest merkle_combine(const Hasher& h, const Digest& left, const Digest& right)
{
    return hash_pair(h, left.with_lsb(false), right.with_lsb(false));
}

Digest leaf_of_chain(const Hasher& h, const Seed& k, std::uint64_t beta, std::uint64_t eta, const TreeParams& p)
{
    if (beta >= p.leaves())
        throw DomainError("chain index " + std::to_string(beta) + " outside [0, N/P)");
    return chain_extend(h, prf(h, k, eta * p.leaves() + beta), 0, p.P);
}

Digest otp_from_seed(const Hasher& h, const Seed& k, std::uint64_t eta, std::uint64_t op_id, const TreeParams& p)
{
    return chain_extend(h, prf(h, k, eta * p.leaves() + otp_chain_index(p, op_id)), 0, otp_chain_position(p, op_id));
}

std::vector<Digest> generate_leaves(const Hasher& h, const Seed& k, std::uint64_t eta, const TreeParams& p)
{
    std::vector<Digest> out;
    out.reserve(p.leaves());
    for (std::uint64_t beta = 0; beta < p.leaves(); ++beta)
        out.push_back(leaf_of_chain(h, k, beta, eta, p));
    return out;
}

Digest reduce_mt(const Hasher& h, std::span<const Digest> nodes)
{
    if (!is_power_of_two(nodes.size()))
        throw DomainError("reduce_mt: node count must be a power of two, got " + std::to_string(nodes.size()));
    std::vector<Digest> work(nodes.begin(), nodes.end());
    for (std::size_t length = work.size(); length > 1; length /= 2) {
        for (std::size_t i = 0; i < length / 2; ++i)
            work[i] = merkle_combine(h, work[2 * i], work[2 * i + 1]);
    }
    return work.front();
}

MerkleProof gen_proof(const Hasher& h, std::span<const Digest> leaves, std::uint64_t idx, int stop_depth)
{
    if (idx >= leaves.size())
        throw DomainError("gen_proof: leaf index " + std::to_string(idx) + " out of range");
    const auto levels = build_levels(h, std::vector<Digest>(leaves.begin(), leaves.end()));
    const int height = static_cast<int>(levels.size()) - 1;
    if (stop_depth < 0 || stop_depth > height)
        throw DomainError("gen_proof: stop depth outside [0, height]");
    return proof_from_levels(levels, 0, idx, height - stop_depth);
}

Digest fold_proof(const Hasher& h, Digest node, const MerkleProof& proof)
{
    for (const auto& sibling : proof.siblings)
        node = sibling.lsb() ? merkle_combine(h, node, sibling) : merkle_combine(h, sibling, node);
    return node;
}

std::uint64_t derive_idx(const MerkleProof& proof)
{
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < proof.siblings.size(); ++i) {
        if (proof.siblings[i].lsb())
            idx |= std::uint64_t{1} << i;
    }
    return idx;
}

std::uint64_t derive_idx_in_cache(const MerkleProof& proof, const TreeParams& p)
{
    const auto len = static_cast<std::size_t>(p.HS() - p.LS);
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < len && i < proof.siblings.size(); ++i) {
        if (proof.siblings[i].lsb())
            idx |= std::uint64_t{1} << i;
    }
    return idx;
}

std::uint64_t parity_word(std::uint64_t index, int len)
{
    const std::uint64_t mask = len >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
    return ~index & mask;
}

std::uint64_t expected_idx_in_cache(std::uint64_t child_leaf_id, const TreeParams& p)
{
    constexpr std::uint64_t mask = 0xFFFFFFFFu;
    std::uint64_t ret = child_leaf_id;
    for (int i = p.HS() - p.LS; i < p.HS(); ++i) {
        const std::uint64_t bit_to_clear = std::uint64_t{1} << i;
        ret &= (mask ^ bit_to_clear);
    }
    return ret;
}

std::uint64_t cached_node_index(std::uint64_t child_leaf_id, const TreeParams& p)
{
    return (child_leaf_id % p.subtree_leaves()) >> (p.HS() - p.LS);
}

std::uint64_t cached_node_from_cleared(std::uint64_t child_leaf_id, std::uint64_t cleared, const TreeParams& p)
{
    return (child_leaf_id ^ cleared) >> (p.HS() - p.LS);
}

Digest derive_root_hash(const Hasher& h, const Digest& otp, const MerkleProof& proof, std::uint64_t op_id,
                        const TreeParams& p)
{
    const int height = p.H();
    if (proof.size() != static_cast<std::size_t>(height))
        throw ProofError("root proof must have " + std::to_string(height) + " entries, got " +
                         std::to_string(proof.size()));
    if (derive_idx(proof) != parity_word(otp_chain_index(p, op_id), height))
        throw ProofError("proof parity bits do not match operation " + std::to_string(op_id));
    return fold_proof(h, resolve_chain(h, otp, op_id, p), proof);
}

Digest derive_node_in_cache(const Hasher& h, const Digest& otp, const MerkleProof& proof, std::uint64_t op_id,
                            const TreeParams& p)
{
    const int len = p.HS() - p.LS;
    if (proof.size() != static_cast<std::size_t>(len))
        throw ProofError("cache proof must have " + std::to_string(len) + " entries, got " +
                         std::to_string(proof.size()));
    const std::uint64_t expected = expected_idx_in_cache(op_id % p.subtree_leaves(), p);
    if (derive_idx_in_cache(proof, p) != parity_word(expected, len))
        throw ProofError("proof parity bits do not match operation " + std::to_string(op_id));
    return fold_proof(h, resolve_chain(h, otp, op_id, p), proof);
}

bool subtree_consistency(const Hasher& h, const Digest& sub_root, const MerkleProof& pi_sr, const Digest& parent_root)
{
    return fold_proof(h, sub_root, pi_sr) == parent_root;
}

MerkleTree::MerkleTree(const Hasher& h, std::vector<Digest> leaves) : levels_(build_levels(h, std::move(leaves))) {}

const std::vector<Digest>& MerkleTree::at_depth(int depth) const
{
    if (depth < 0 || depth > height())
        throw DomainError("tree depth " + std::to_string(depth) + " out of range");
    return levels_[static_cast<std::size_t>(height() - depth)];
}

MerkleProof MerkleTree::proof(std::uint64_t leaf, int stop_depth) const
{
    if (leaf >= leaves().size())
        throw DomainError("leaf index " + std::to_string(leaf) + " out of range");
    if (stop_depth < 0 || stop_depth > height())
        throw DomainError("stop depth out of range");
    return proof_from_levels(levels_, 0, leaf, height() - stop_depth);
}

MerkleProof MerkleTree::node_proof(int depth, std::uint64_t index) const
{
    if (index >= at_depth(depth).size())
        throw DomainError("node index out of range");
    return proof_from_levels(levels_, height() - depth, index, depth);
}

SubtreeLayer MerkleTree::cached_sublayer(std::uint64_t delta, const TreeParams& p) const
{
    if (delta >= p.subtrees())
        throw DomainError("subtree index " + std::to_string(delta) + " out of range");
    const auto& level = at_depth(p.H() - p.HS() + p.LS);
    const std::uint64_t width = std::uint64_t{1} << p.LS;
    SubtreeLayer layer;
    layer.subtree_index = delta;
    layer.nodes.assign(level.begin() + static_cast<std::ptrdiff_t>(delta * width),
                       level.begin() + static_cast<std::ptrdiff_t>((delta + 1) * width));
    return layer;
}

MerkleProof MerkleTree::subtree_root_proof(std::uint64_t delta, const TreeParams& p) const
{
    return node_proof(p.H() - p.HS(), delta);
}

MerkleProof MerkleTree::cache_proof(std::uint64_t leaf, const TreeParams& p) const
{
    return proof(leaf, p.H() - p.HS() + p.LS);
}

} // namespace smartotps
