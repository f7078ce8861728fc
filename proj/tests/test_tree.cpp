#include "fixtures.hpp"
#include "oracles.hpp"

#include "smartotps/merkle.hpp"
#include "smartotps/params.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace smartotps;

namespace {

std::vector<Digest> random_leaves(std::size_t n, int bits, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Digest> out;
    for (std::size_t i = 0; i < n; ++i) {
        Bytes b(static_cast<std::size_t>(bits / 8));
        for (auto& x : b)
            x = static_cast<std::uint8_t>(rng());
        out.emplace_back(b);
    }
    return out;
}

} // namespace

TEST(Params, ParseAndValidate)
{
    const TreeParams p = TreeParams::parse_csv("136,64,4,16,1");
    EXPECT_EQ(p.S, 136);
    EXPECT_EQ(p.leaves(), 16u);
    EXPECT_EQ(p.H(), 4);
    EXPECT_EQ(p.HS(), 2);
    EXPECT_EQ(p.subtrees(), 4u);
    EXPECT_EQ(TreeParams::parse_csv("128,16,2,8,1,5").len_max, 5u);
    EXPECT_THROW(TreeParams::parse_csv("128,16,2"), ParseError);
    EXPECT_THROW(TreeParams::parse_csv("128,16,x,8,1"), ParseError);
    EXPECT_THROW(TreeParams::parse_csv("128,16,3,8,1"), DomainError);   // P not a power of two
    EXPECT_THROW(TreeParams::parse_csv("128,16,2,32,1"), DomainError);  // NS > N
    EXPECT_THROW(TreeParams::parse_csv("128,16,2,8,3"), DomainError);   // LS > HS
    EXPECT_THROW(TreeParams::parse_csv("130,16,2,8,1"), DomainError);   // S not byte aligned
}

TEST(IndexArithmetic, ChainPositionAndLayerAreComplementary)
{
    for (std::uint32_t P : {1u, 2u, 4u, 8u})
        for (std::uint64_t N = P; N <= 256; N *= 2)
            for (std::uint64_t NS = P; NS <= N; NS *= 2) {
                TreeParams p;
                p.N = N;
                p.P = P;
                p.NS = NS;
                for (std::uint64_t i = 0; i < 2 * N; ++i) {
                    EXPECT_EQ(otp_chain_position(p, i) + layer_of(p, i), P);
                    EXPECT_LT(otp_chain_index(p, i), p.leaves());
                }
            }
}

TEST(IndexArithmetic, LayersAreConsumedInOrderWithinASubtree)
{
    const auto p = fixture::params(128, 32, 4, 16, 0);
    std::uint32_t prev = 0;
    for (std::uint64_t i = 0; i < p.NS; ++i) {
        EXPECT_GE(layer_of(p, i), prev);
        prev = layer_of(p, i);
    }
    EXPECT_EQ(layer_of(p, 0), 1u);
    EXPECT_EQ(layer_of(p, p.NS - 1), p.P);
    // Every (chain, position) pair of a parent tree is used exactly once.
    std::set<std::pair<std::uint64_t, std::uint32_t>> seen;
    for (std::uint64_t i = 0; i < p.N; ++i)
        EXPECT_TRUE(seen.emplace(otp_chain_index(p, i), otp_chain_position(p, i)).second);
}

TEST(IndexArithmetic, BitClearingLoopEqualsClosedForm)
{
    for (int HS = 0; HS <= 8; ++HS)
        for (int LS = 0; LS <= HS; ++LS) {
            TreeParams p;
            p.N = std::uint64_t{1} << HS;
            p.NS = p.N;
            p.P = 1;
            p.LS = LS;
            for (std::uint64_t child = 0; child < p.NS; ++child) {
                const std::uint64_t cleared = expected_idx_in_cache(child, p);
                EXPECT_EQ(cleared, child % (std::uint64_t{1} << (HS - LS)));
                EXPECT_EQ(cached_node_from_cleared(child, cleared, p), cached_node_index(child, p));
                EXPECT_EQ(cached_node_index(child, p), child >> (HS - LS));
            }
        }
}

TEST(IndexArithmetic, ReservedSlots)
{
    const auto p = fixture::params(128, 16, 2, 8, 1);
    for (std::uint64_t i = 0; i < 48; ++i) {
        EXPECT_EQ(is_reserved_slot(p, i), i % 8 == 7) << i;
        EXPECT_EQ(is_parent_boundary(p, i), i % 16 == 15) << i;
        EXPECT_EQ(generation_of(p, i), i / 16);
        EXPECT_EQ(subtree_of(p, i), (i % 16) / 8);
    }
}

TEST(Merkle, AgreesWithRecursiveOracleUpTo64Leaves)
{
    for (int bits : {128, 136, 256}) {
        const Hasher h(bits);
        for (std::size_t n = 1; n <= 64; n *= 2) {
            const auto leaves = random_leaves(n, bits, n * 31 + static_cast<std::size_t>(bits));
            const Digest root = oracle::root(leaves, bits);
            EXPECT_EQ(reduce_mt(h, leaves), root);
            const MerkleTree tree(h, leaves);
            EXPECT_EQ(tree.root(), root);
            for (std::size_t i = 0; i < n; ++i) {
                const MerkleProof proof = gen_proof(h, leaves, i);
                const auto expected = oracle::path(leaves, i, bits);
                ASSERT_EQ(proof.size(), expected.size());
                for (std::size_t j = 0; j < expected.size(); ++j)
                    EXPECT_EQ(oracle::clear_lsb(proof.siblings[j]), oracle::clear_lsb(expected[j]));
                EXPECT_EQ(fold_proof(h, leaves[i], proof), root);
                EXPECT_EQ(derive_idx(proof), parity_word(i, static_cast<int>(proof.size())));
            }
        }
    }
}

TEST(Merkle, DeriveRootHashAgreesWithOracle)
{
    for (std::uint32_t P : {1u, 2u, 4u})
        for (std::uint64_t leaves = 1; leaves <= 64; leaves *= 2) {
            const auto p = fixture::params(128, leaves * P, P, leaves * P, 0);
            const Seed k = fixture::seed_from(leaves + P);
            const Hasher h(128);
            std::vector<Digest> leaf_values;
            for (std::uint32_t b = 0; b < leaves; ++b)
                leaf_values.push_back(oracle::chain(k, b, P, 128));
            EXPECT_EQ(generate_leaves(h, k, 0, p), leaf_values);
            const Digest root = oracle::root(leaf_values, 128);
            const MerkleTree tree(h, leaf_values);
            auto verifies = [&](const Digest& otp, std::uint64_t beta, std::uint64_t op) {
                try {
                    return derive_root_hash(h, otp, tree.proof(beta), op, p) == root;
                } catch (const ProofError&) {
                    return false;
                }
            };
            for (std::uint64_t i = 0; i < p.N; ++i) {
                const std::uint64_t beta = otp_chain_index(p, i);
                const Digest otp = oracle::chain(k, static_cast<std::uint32_t>(beta), otp_chain_position(p, i), 128);
                EXPECT_EQ(otp_from_seed(h, k, 0, i, p), otp);
                EXPECT_TRUE(verifies(otp, beta, i));
                for (std::uint64_t j = 0; j < p.N; ++j) {
                    if (j != i) {
                        EXPECT_FALSE(verifies(otp, beta, j)) << i << " as " << j;
                    }
                }
            }
        }
}

TEST(Merkle, ProofParityRejectsWrongPosition)
{
    const auto p = fixture::params(128, 16, 1, 16, 0);
    const Hasher h(128);
    const MerkleTree tree(h, random_leaves(16, 128, 1));
    const MerkleProof proof = tree.proof(5);
    EXPECT_THROW(derive_root_hash(h, tree.leaves()[5], proof, 6, p), ProofError);
    MerkleProof short_proof = proof;
    short_proof.siblings.pop_back();
    EXPECT_THROW(derive_root_hash(h, tree.leaves()[5], short_proof, 5, p), ProofError);
}

TEST(Merkle, LsbOfChildrenDoesNotChangeParent)
{
    const Hasher h(128);
    const auto leaves = random_leaves(2, 128, 9);
    EXPECT_EQ(merkle_combine(h, leaves[0], leaves[1]),
              merkle_combine(h, leaves[0].with_lsb(!leaves[0].lsb()), leaves[1].with_lsb(!leaves[1].lsb())));
    EXPECT_EQ(merkle_combine(h, leaves[0], leaves[1]), oracle::node(leaves[0], leaves[1], 128));
}

TEST(Merkle, CachedSublayerAndSubtreeProofs)
{
    for (int LS = 0; LS <= 2; ++LS) {
        const auto p = fixture::params(128, 64, 2, 16, LS);  // 32 leaves, subtrees of 8 leaves
        const Hasher h(128);
        const auto leaves = random_leaves(p.leaves(), 128, 100 + static_cast<std::uint64_t>(LS));
        const MerkleTree tree(h, leaves);
        for (std::uint64_t delta = 0; delta < p.subtrees(); ++delta) {
            const SubtreeLayer layer = tree.cached_sublayer(delta, p);
            ASSERT_EQ(layer.nodes.size(), std::size_t{1} << LS);
            for (std::size_t j = 0; j < layer.nodes.size(); ++j)
                EXPECT_EQ(layer.nodes[j],
                          oracle::node_at(leaves, p.H() - p.HS() + LS, (delta << LS) + j, 128));
            const MerkleProof pi_sr = tree.subtree_root_proof(delta, p);
            EXPECT_TRUE(subtree_consistency(h, reduce_mt(h, layer.nodes), pi_sr, tree.root()));
            EXPECT_EQ(derive_idx(pi_sr), parity_word(delta, p.H() - p.HS()));
            for (std::uint64_t local = 0; local < p.subtree_leaves(); ++local) {
                const std::uint64_t leaf = delta * p.subtree_leaves() + local;
                const MerkleProof cp = tree.cache_proof(leaf, p);
                EXPECT_EQ(fold_proof(h, leaves[leaf], cp), layer.nodes[cached_node_index(local, p)]);
            }
        }
    }
}
