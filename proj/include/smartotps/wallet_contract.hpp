#pragma once

#include "smartotps/digest.hpp"
#include "smartotps/hash.hpp"
#include "smartotps/merkle.hpp"
#include "smartotps/params.hpp"
#include "smartotps/payload.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace smartotps {

struct OperationRecord {
    AccountId addr;
    std::uint64_t param = 0;
    bool pending = true;
    OpType type = OpType::Transfer;
    bool operator==(const OperationRecord&) const = default;
};

struct WalletState {
    Digest root;
    Bytes owner_pk;
    AccountId owner;
    Digest contract_id;
    std::uint64_t next_op_id = 0;
    std::map<std::uint64_t, OperationRecord> operations;
    SubtreeLayer current_sublayer;
    std::uint32_t current_layer = 1;
    std::vector<Digest> l1;
    std::vector<Digest> l2;
    std::uint64_t balance = 0;
    std::uint64_t daily_limit = 0;  ///< 0 = unlimited
    std::uint64_t spent_today = 0;
    std::uint64_t day_index = 0;
    AccountId last_resort_addr;
    std::uint64_t last_resort_timeout = 0;
    std::uint64_t last_activity = 0;
    bool destroyed = false;

    /// Deterministic text rendering used for state hashing and replay checks.
    std::string canonical() const;
    bool operator==(const WalletState&) const = default;
};

/// Primitive counts of one contract call.
struct CallMeter {
    HashCounter hashes;
    std::uint64_t storage_new = 0;
    std::uint64_t storage_update = 0;
    std::uint64_t storage_read = 0;
    std::uint64_t sig_verify = 0;
};

/// Everything the ledger supplies about the enclosing transaction.
struct CallContext {
    AccountId sender;
    std::uint64_t timestamp = 0;
    Bytes signing_bytes;
    std::optional<Bytes> signature;
};

struct CallEffects {
    std::vector<std::pair<AccountId, std::uint64_t>> credits;
    std::vector<std::string> events;
    std::optional<std::uint64_t> op_id;
};

/// Storage layout used for metering.
namespace storage_layout {
inline constexpr std::uint64_t kDeployScalarWords = 6;  // root, pk, contract id, nextOpID, layer, activity
inline constexpr std::uint64_t kOperationWords = 2;
} // namespace storage_layout

/// The wallet state machine. Every mutating call is atomic: on ContractRevert
/// the state is exactly as before the call.
class WalletContract {
public:
    static WalletContract deploy(const DeployCall& call, const CallContext& ctx, const Hasher& hasher,
                                 CallMeter& meter, CallEffects& effects);

    const TreeParams& params() const noexcept { return params_; }
    const WalletState& state() const noexcept { return state_; }
    const Digest& id() const noexcept { return state_.contract_id; }

    void fund(std::uint64_t amount, CallMeter& meter, CallEffects& effects);
    void init_op(const InitOpCall& call, const CallContext& ctx, CallMeter& meter, CallEffects& effects);
    void confirm_op(const ConfirmOpCall& call, const CallContext& ctx, CallMeter& meter, CallEffects& effects);
    void next_subtree(const NextSubtreeCall& call, const CallContext& ctx, CallMeter& meter, CallEffects& effects);
    void new_root_stage1(const NewRootStage1Call& call, const CallContext& ctx, CallMeter& meter,
                         CallEffects& effects);
    void new_root_stage2(const NewRootStage2Call& call, const CallContext& ctx, CallMeter& meter,
                         CallEffects& effects);
    void new_root_stage3(const NewRootStage3Call& call, const CallContext& ctx, CallMeter& meter,
                         CallEffects& effects);
    void send_to_last_resort(const CallContext& ctx, CallMeter& meter, CallEffects& effects);

    /// Current subtree index inside the parent tree.
    std::uint64_t current_subtree() const { return subtree_of(params_, state_.next_op_id); }
    std::uint64_t generation() const { return generation_of(params_, state_.next_op_id); }

private:
    WalletContract(const TreeParams& params, const Hasher& hasher) : params_(params), hasher_(hasher) {}

    template <class Fn>
    void transact(Fn&& fn);
    void require_alive() const;
    void require_owner_signature(const CallContext& ctx, CallMeter& meter) const;
    void check_subtree_position(const Hasher& h, const std::vector<Digest>& sublayer, const MerkleProof& pi_sr,
                                std::uint64_t delta, const Digest& root) const;
    void verify_cached_otp(const Hasher& h, const Digest& otp, const MerkleProof& proof, std::uint64_t op_id,
                           CallMeter& meter) const;

    TreeParams params_;
    Hasher hasher_;
    WalletState state_;
};

} // namespace smartotps
