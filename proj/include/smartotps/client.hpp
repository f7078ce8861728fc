#pragma once

#include "smartotps/digest.hpp"
#include "smartotps/hash.hpp"
#include "smartotps/leaf_file.hpp"
#include "smartotps/merkle.hpp"
#include "smartotps/params.hpp"
#include "smartotps/payload.hpp"

#include <string>
#include <vector>

namespace smartotps {

struct NewRootStages {
    NewRootStage1Call stage1;
    NewRootStage2Call stage2;
    NewRootStage3Call stage3;
};

/// The client party. Keeps the N/P leaves of the current generation and
/// recomputes every proof from them on demand.
class Client {
public:
    static constexpr std::uint32_t kDefaultConfirmationDepth = 12;

    /// Derives the leaves from k; k is not retained.
    static Client bootstrap_secure(const Seed& k, const TreeParams& params);
    static Client bootstrap_secure(const Seed& k, const TreeParams& params, const Hasher& h);
    static Client bootstrap_insecure(const LeafFile& file, const TreeParams& params);
    static Client bootstrap_insecure(const LeafFile& file, const TreeParams& params, const Hasher& h);

    const TreeParams& params() const noexcept { return params_; }
    const std::vector<Digest>& leaves() const noexcept { return leaves_; }
    const Digest& root() const noexcept { return root_; }
    std::uint64_t generation() const noexcept { return eta_; }
    std::uint64_t current_subtree() const noexcept { return delta_; }

    const Digest& contract_id() const noexcept { return contract_id_; }
    void set_contract_id(const Digest& id) { contract_id_ = id; }
    std::uint32_t confirmation_depth() const noexcept { return confirmation_depth_; }
    void set_confirmation_depth(std::uint32_t depth) { confirmation_depth_ = depth; }

    SubtreeLayer sublayer(std::uint64_t delta) const;
    MerkleProof subtree_root_proof(std::uint64_t delta) const;

    DeployCall build_deploy(const Bytes& owner_pk) const;
    InitOpCall build_init(OpType type, const AccountId& addr, std::uint64_t param) const;
    /// Proof of length H_S - L_S against the cached node of the current subtree.
    ConfirmOpCall build_confirm(std::uint64_t op_id, const Digest& otp) const;
    /// Sublayer of subtree delta+1 with a full-height OTP proof and pi_sr.
    NextSubtreeCall build_next_subtree(std::uint64_t op_id, const Digest& otp) const;
    NewRootStages build_new_root_stages(std::uint64_t op_id, const Digest& otp,
                                        const std::vector<Digest>& new_leaves) const;

    /// Bookkeeping once the contract has accepted the matching transaction.
    void advance_subtree();
    void install_generation(std::vector<Digest> new_leaves);

    /// Single-line JSON sidecar: contract id, eta, subtree, confirmation depth.
    std::string metadata_json() const;
    /// Writes <dir>/client.leaves and <dir>/client.json.
    void save(const std::string& dir) const;
    static Client load(const std::string& dir, const TreeParams& params);

    /// Leaves of generation eta computed from k (secure root replacement).
    static std::vector<Digest> leaves_from_seed(const Seed& k, std::uint64_t eta, const TreeParams& params);

private:
    Client(const TreeParams& params, const Hasher& h, std::vector<Digest> leaves, std::uint64_t eta);
    MerkleTree tree() const;
    void require_current(std::uint64_t op_id) const;

    TreeParams params_;
    Hasher hasher_;
    std::vector<Digest> leaves_;
    Digest root_;
    std::uint64_t eta_ = 0;
    std::uint64_t delta_ = 0;
    Digest contract_id_;
    std::uint32_t confirmation_depth_ = kDefaultConfirmationDepth;
};

} // namespace smartotps
