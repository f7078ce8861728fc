#include "smartotps/errors.hpp"
#include "smartotps/ledger.hpp"

#include <gtest/gtest.h>

using namespace smartotps;

namespace {

Transaction pay(const AccountId& from, std::uint64_t nonce, const AccountId& to, std::uint64_t amount,
                std::uint64_t fee = 1)
{
    return Transaction{from, nonce, fee, PayCall{to, amount}, std::nullopt};
}

Ledger make()
{
    return Ledger({{"alice", 100}, {"bob", 50}, {"carol", 0}});
}

} // namespace

TEST(Ledger, MinesPaymentsAndConservesTokens)
{
    Ledger l = make();
    const TxRef a = l.submit(pay("alice", 0, "carol", 30));
    const TxRef b = l.submit(pay("bob", 0, "carol", 80));
    l.mine_block();
    EXPECT_TRUE(l.receipt(a)->ok);
    EXPECT_FALSE(l.receipt(b)->ok);
    EXPECT_EQ(l.balance("carol"), 30u);
    EXPECT_EQ(l.state().total_supply(), 150u);
    EXPECT_EQ(l.head_height(), 1u);
    EXPECT_EQ(l.head().timestamp, 1'600'000'015u);
}

TEST(Ledger, HigherFeeIsMinedFirstWithinNonceOrder)
{
    Ledger l = make();
    const TxRef low = l.submit(pay("bob", 0, "carol", 40, 1));
    const TxRef high = l.submit(pay("alice", 0, "carol", 10, 9));
    const TxRef next = l.submit(pay("bob", 1, "carol", 5, 50));
    l.mine_block();
    const auto& txs = l.head().txs;
    ASSERT_EQ(txs.size(), 3u);
    EXPECT_EQ(txs[0], high);
    EXPECT_EQ(txs[1], low);
    EXPECT_EQ(txs[2], next);
}

TEST(Ledger, NonceReuseIsRejected)
{
    Ledger l = make();
    l.submit(pay("alice", 0, "carol", 1));
    EXPECT_THROW(l.submit(pay("alice", 0, "carol", 2)), DomainError);
    EXPECT_EQ(l.next_nonce("alice"), 1u);
    l.mine_block();
    EXPECT_THROW(l.submit(pay("alice", 0, "carol", 2)), DomainError);
    EXPECT_EQ(l.next_nonce("alice"), 1u);
}

TEST(Ledger, ConfirmationsCountBlocksOnTop)
{
    Ledger l = make();
    const TxRef t = l.submit(pay("alice", 0, "carol", 1));
    EXPECT_FALSE(l.confirmations(t).has_value());
    EXPECT_TRUE(l.pending(t));
    l.mine_block();
    EXPECT_EQ(l.confirmations(t), 0u);
    for (int i = 0; i < 12; ++i)
        l.mine_block();
    EXPECT_EQ(l.confirmations(t), 12u);
}

TEST(Ledger, ReorgOrphansAndRequeues)
{
    Ledger l = make();
    l.mine_block();
    const TxRef t = l.submit(pay("alice", 0, "carol", 10));
    l.mine_block();
    ASSERT_EQ(l.confirmations(t), 0u);
    const BranchId b = l.fork(1);
    l.submit_to_branch(b, pay("bob", 0, "carol", 20));
    l.mine_branch(b);
    EXPECT_THROW(l.reorg(b), DomainError);
    l.mine_branch(b);
    l.reorg(b);
    EXPECT_FALSE(l.confirmations(t).has_value());
    EXPECT_TRUE(l.pending(t));
    EXPECT_EQ(l.balance("carol"), 20u);
    l.mine_block();
    EXPECT_EQ(l.balance("carol"), 30u);
    EXPECT_EQ(l.state().total_supply(), 150u);
    EXPECT_THROW(l.fork(l.head_height() + 1), DomainError);
    EXPECT_THROW(l.mine_branch(b), DomainError);
}

TEST(Ledger, StaleNonceIsDroppedAfterReorg)
{
    Ledger l = make();
    const TxRef t = l.submit(pay("alice", 0, "carol", 10));
    l.mine_block();
    const BranchId b = l.fork(0);
    l.submit_to_branch(b, pay("alice", 0, "bob", 10));
    l.mine_branch(b);
    l.mine_branch(b);
    l.reorg(b);
    EXPECT_TRUE(l.pending(t));
    l.mine_block();
    EXPECT_FALSE(l.pending(t));
    EXPECT_EQ(l.receipt(t), nullptr);
    EXPECT_EQ(l.balance("bob"), 60u);
    bool dropped = false;
    for (const auto& line : l.event_log())
        dropped = dropped || line.find("drop tx=" + std::to_string(t)) != std::string::npos;
    EXPECT_TRUE(dropped);
}

TEST(Ledger, ObserversSeeSubmissionsBeforeMining)
{
    Ledger l = make();
    std::vector<TxRef> seen;
    l.add_observer([&](Ledger& ledger, TxRef ref, const Transaction& tx) {
        seen.push_back(ref);
        if (tx.sender == "alice")
            ledger.submit(pay("bob", ledger.next_nonce("bob"), "carol", 1, tx.fee + 1));
    });
    const TxRef a = l.submit(pay("alice", 0, "carol", 1, 5));
    ASSERT_EQ(seen.size(), 2u);
    EXPECT_EQ(seen[0], a);
    l.mine_block();
    EXPECT_EQ(l.head().txs.front(), seen[1]);
}

TEST(Ledger, AdvanceTimeShiftsNextBlock)
{
    Ledger l = make();
    l.advance_time(100);
    EXPECT_EQ(l.next_timestamp(), 1'600'000'115u);
    l.mine_block();
    EXPECT_EQ(l.head().timestamp, 1'600'000'115u);
    l.mine_block();
    EXPECT_EQ(l.head().timestamp, 1'600'000'130u);
}

TEST(Ledger, IdenticalHistoriesHashIdentically)
{
    auto run = [] {
        Ledger l = make();
        l.submit(pay("alice", 0, "carol", 3, 2));
        l.submit(pay("bob", 0, "alice", 4, 7));
        l.mine_block();
        const BranchId b = l.fork(0);
        l.mine_branch(b);
        l.mine_branch(b);
        l.reorg(b);
        l.mine_block();
        return std::make_pair(l.state_hash(), l.event_log());
    };
    const auto a = run();
    const auto b = run();
    EXPECT_EQ(a.first, b.first);
    EXPECT_EQ(a.second, b.second);
}

TEST(Ledger, TransactionTextRoundTrip)
{
    const Transaction tx = pay("alice", 3, "bob", 9, 4);
    EXPECT_EQ(Transaction::decode(tx.encode()), tx);
}
