#pragma once

#include "smartotps/hash.hpp"
#include "smartotps/payload.hpp"
#include "smartotps/wallet_contract.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smartotps {

using TxRef = std::uint64_t;
using BranchId = std::uint64_t;

struct Receipt {
    TxRef tx = 0;
    AccountId sender;
    std::string fn;
    bool ok = false;
    std::string error;
    std::vector<std::string> events;
    std::optional<std::uint64_t> op_id;
    std::optional<Digest> contract_id;
    CallMeter meter;
    std::uint64_t payload_bytes = 0;
    bool signed_call = false;
};

struct WorldState {
    std::map<AccountId, std::uint64_t> accounts;
    std::map<Digest, WalletContract> contracts;
    std::map<AccountId, std::uint64_t> next_nonce;

    /// Account balances plus wallet balances.
    std::uint64_t total_supply() const;
    std::string canonical() const;
    bool operator==(const WorldState& other) const { return canonical() == other.canonical(); }
};

struct Block {
    std::uint64_t id = 0;  ///< unique across all branches
    std::uint64_t height = 0;
    std::uint64_t timestamp = 0;
    std::vector<TxRef> txs;
    std::vector<Receipt> receipts;
    WorldState state;  ///< state after the block
};

/// Simulated chain with a fee-ordered mempool, fork branches and reorgs.
class Ledger {
public:
    struct Config {
        std::uint64_t genesis_timestamp = 1'600'000'000;
        std::uint64_t block_interval = 15;
        HashFunction hash = sha3_256();
    };
    using Observer = std::function<void(Ledger&, TxRef, const Transaction&)>;
    using BlockObserver = std::function<void(Ledger&, const Block&)>;

    explicit Ledger(std::map<AccountId, std::uint64_t> genesis_balances);
    Ledger(std::map<AccountId, std::uint64_t> genesis_balances, Config config);

    /// Adds to the public mempool; throws DomainError when the nonce was already used.
    TxRef submit(Transaction tx);
    /// Mines the public mempool onto the canonical head, then runs the block
    /// observers. Returns the head afterwards (an observer may have reorganized).
    const Block& mine_block(std::optional<std::uint64_t> delta = std::nullopt);
    /// Shifts the timestamp of the next mined block.
    void advance_time(std::uint64_t seconds) { time_offset_ += seconds; }

    BranchId fork(std::uint64_t from_height);
    TxRef submit_to_branch(BranchId branch, Transaction tx);
    const Block& mine_branch(BranchId branch, std::optional<std::uint64_t> delta = std::nullopt);
    /// Makes a strictly longer branch canonical and returns orphaned txs to the mempool.
    void reorg(BranchId branch);
    std::uint64_t branch_height(BranchId branch) const;

    std::uint64_t head_height() const { return canonical_.blocks.back().height; }
    const Block& head() const { return canonical_.blocks.back(); }
    const Block& block(std::uint64_t height) const;
    const WorldState& state() const { return head().state; }
    std::uint64_t next_timestamp() const;

    /// Blocks on top of the block holding tx; empty when tx is not on the canonical chain.
    std::optional<std::uint64_t> confirmations(TxRef tx) const;
    const Receipt* receipt(TxRef tx) const;
    bool pending(TxRef tx) const;
    const Transaction& transaction(TxRef tx) const;

    /// Nonce for the next submission from `sender`, counting queued txs.
    std::uint64_t next_nonce(const AccountId& sender) const;
    const WalletContract* contract(const Digest& id) const;
    std::uint64_t balance(const AccountId& account) const;

    void add_observer(Observer observer) { observers_.push_back(std::move(observer)); }
    void add_block_observer(BlockObserver observer) { block_observers_.push_back(std::move(observer)); }
    const std::vector<std::string>& event_log() const { return log_; }

    /// Re-verifies the signature of every successful signed call on the canonical chain.
    bool audit_signatures() const;
    Digest state_hash() const;
    const Config& config() const { return config_; }

private:
    struct Chain {
        std::vector<Block> blocks;
        std::vector<TxRef> mempool;
    };

    Receipt execute(WorldState& world, TxRef ref, std::uint64_t timestamp) const;
    const Block& mine_on(Chain& chain, std::optional<std::uint64_t> delta, const std::string& tag);
    TxRef record(Transaction tx);
    void check_nonce(const Chain& chain, const Transaction& tx) const;
    Chain& branch(BranchId id);
    const Chain& branch(BranchId id) const;
    void reindex();

    Config config_;
    Chain canonical_;
    std::map<BranchId, Chain> branches_;
    std::vector<Transaction> txs_;  ///< indexed by TxRef
    std::map<TxRef, std::pair<std::uint64_t, std::size_t>> index_;  ///< canonical tx -> (height, slot)
    std::vector<Observer> observers_;
    std::vector<BlockObserver> block_observers_;
    std::vector<std::string> log_;
    std::uint64_t time_offset_ = 0;
    std::uint64_t next_block_id_ = 1;
    BranchId next_branch_ = 1;
};

} // namespace smartotps
