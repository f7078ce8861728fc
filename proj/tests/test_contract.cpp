#include "fixtures.hpp"

#include "smartotps/cost_model.hpp"

#include <gtest/gtest.h>

using namespace smartotps;
using fixture::Wallet;

namespace {

TreeParams base(int LS = 1)
{
    return fixture::params(128, 16, 2, 8, LS);
}

} // namespace

TEST(Contract, DeployRecordsRootAndIdentity)
{
    Wallet w(base());
    const auto& s = w.contract->state();
    EXPECT_EQ(s.root, w.client.root());
    EXPECT_EQ(s.next_op_id, 0u);
    EXPECT_EQ(s.current_layer, 1u);
    EXPECT_EQ(s.current_sublayer.nodes, w.client.sublayer(0).nodes);
    Bytes id = w.key.public_key();
    append(id, s.root.bytes());
    EXPECT_EQ(s.contract_id, w.h(id));
}

TEST(Contract, DeployRejectsInconsistentSublayer)
{
    Wallet w(base());
    CallMeter m;
    CallEffects e;
    DeployCall call = w.client.build_deploy(w.key.public_key());
    call.sublayer = w.client.sublayer(1).nodes;
    EXPECT_THROW(WalletContract::deploy(call, w.plain(), w.h, m, e), ContractRevert);
    call = w.client.build_deploy(w.key.public_key());
    call.sublayer = w.client.sublayer(1).nodes;
    call.pi_sr = w.client.subtree_root_proof(1);
    EXPECT_THROW(WalletContract::deploy(call, w.plain(), w.h, m, e), ContractRevert);
    call = w.client.build_deploy(w.key.public_key());
    call.sublayer.pop_back();
    EXPECT_THROW(WalletContract::deploy(call, w.plain(), w.h, m, e), ContractRevert);
}

TEST(Contract, InitRequiresOwnerSignature)
{
    Wallet w(base());
    const InitOpCall call = w.client.build_init(OpType::Transfer, "bob", 1);
    const SigningKey other = SigningKey::from_seed(fixture::key_seed_from(99));
    EXPECT_FALSE(w.attempt([&] { w.contract->init_op(call, w.signed_ctx(call, other), w.last_meter, w.last_effects); }));
    EXPECT_FALSE(w.attempt([&] { w.contract->init_op(call, w.plain(), w.last_meter, w.last_effects); }));
    CallContext ctx = w.signed_ctx(call, w.key);
    ctx.signing_bytes.push_back(0);
    EXPECT_FALSE(w.attempt([&] { w.contract->init_op(call, ctx, w.last_meter, w.last_effects); }));
    EXPECT_EQ(w.contract->state().next_op_id, 0u);
    EXPECT_TRUE(w.init().has_value());
}

TEST(Contract, RoundTripAndCrossPairing)
{
    for (int LS = 0; LS <= 2; ++LS) {
        Wallet w(base(LS));
        for (std::uint64_t delta = 0; delta < 2; ++delta) {
            const std::uint64_t first = delta * 8;
            std::vector<std::uint64_t> ops;
            for (std::uint64_t i = first; i < first + 7; ++i)
                ops.push_back(*w.init());
            // Every foreign OTP fails for every pending op, before and after each confirmation.
            for (std::uint64_t j : ops) {
                for (std::uint64_t i = first; i < first + 8; ++i) {
                    if (i == j)
                        continue;
                    EXPECT_FALSE(w.confirm_with(w.client.build_confirm(j, w.auth.get_otp(i))))
                        << "LS=" << LS << " otp " << i << " for op " << j;
                    ConfirmOpCall call = w.client.build_confirm(i, w.auth.get_otp(i));
                    call.op_id = j;
                    EXPECT_FALSE(w.confirm_with(call)) << "LS=" << LS << " proof of " << i << " for op " << j;
                }
                EXPECT_TRUE(w.confirm(j)) << "LS=" << LS << " op " << j;
                EXPECT_FALSE(w.confirm(j)) << "replay of op " << j;
            }
            if (delta == 0) {
                ASSERT_TRUE(w.next_subtree());
            }
        }
        EXPECT_EQ(w.contract->state().balance, 1'000'000u - 14u);
    }
}

TEST(Contract, SlidingWindowRejectsEarlierLayers)
{
    const TreeParams p = fixture::params(128, 16, 4, 16, 0);
    for (std::uint64_t skip_to = 1; skip_to < 15; ++skip_to) {
        Wallet w(p);
        std::vector<std::uint64_t> ops;
        for (std::uint64_t i = 0; i < 15; ++i)
            ops.push_back(*w.init());
        ASSERT_TRUE(w.confirm(skip_to));
        const std::uint32_t window = layer_of(p, skip_to);
        EXPECT_EQ(w.contract->state().current_layer, window);
        for (std::uint64_t i = 0; i < 15; ++i) {
            if (i == skip_to)
                continue;
            if (layer_of(p, i) < window) {
                EXPECT_FALSE(w.confirm(i)) << "op " << i << " below window " << window;
            }
        }
        // An OTP of the current window hashed forward into an earlier layer is public-derivable; it never confirms.
        const Hasher h(128);
        for (std::uint64_t i = 0; i < 15; ++i) {
            if (layer_of(p, i) >= window || i == skip_to)
                continue;
            const std::uint64_t same_chain = [&] {
                for (std::uint64_t j = 0; j < 16; ++j)
                    if (otp_chain_index(p, j) == otp_chain_index(p, i) && layer_of(p, j) >= window)
                        return j;
                return std::uint64_t{99};
            }();
            if (same_chain == 99)
                continue;
            const Digest derived = chain_extend(h, w.auth.get_otp(same_chain), otp_chain_position(p, same_chain),
                                                otp_chain_position(p, i));
            EXPECT_EQ(derived, w.auth.get_otp(i));
            EXPECT_FALSE(w.confirm_with(w.client.build_confirm(i, derived)));
        }
    }
}

TEST(Contract, ReservedSlotOnlyAcceptsSubtreeIntroduction)
{
    Wallet w(base());
    w.drain_subtree();
    EXPECT_EQ(w.contract->state().next_op_id, 7u);
    EXPECT_FALSE(w.init().has_value());
    const auto before = w.contract->state();
    NextSubtreeCall bad = w.client.build_next_subtree(7, w.auth.get_otp(6));
    EXPECT_FALSE(w.attempt([&] { w.contract->next_subtree(bad, w.plain(), w.last_meter, w.last_effects); }));
    bad = w.client.build_next_subtree(7, w.auth.get_otp(7));
    bad.sublayer = w.client.sublayer(0).nodes;
    bad.pi_sr = w.client.subtree_root_proof(0);
    EXPECT_FALSE(w.attempt([&] { w.contract->next_subtree(bad, w.plain(), w.last_meter, w.last_effects); }));
    EXPECT_EQ(w.contract->state(), before);
    EXPECT_TRUE(w.next_subtree());
    EXPECT_EQ(w.contract->current_subtree(), 1u);
    EXPECT_EQ(w.contract->state().current_layer, 1u);
    EXPECT_THROW(w.next_subtree(), ProtocolAbort);
}

TEST(Contract, PendingOpsOfRetiredSubtreeAreDead)
{
    Wallet w(base());
    const auto stale = *w.init();
    while (!is_reserved_slot(w.p, w.contract->state().next_op_id))
        w.init();
    ASSERT_TRUE(w.next_subtree());
    Client old = Client::bootstrap_secure(w.auth.display_seed(), w.p);
    old.set_contract_id(w.contract->id());
    EXPECT_FALSE(w.confirm_with(old.build_confirm(stale, w.auth.get_otp(stale))));
}

TEST(Contract, ParentRotationLifecycle)
{
    Wallet w(base());
    w.drain_subtree();
    ASSERT_TRUE(w.next_subtree());
    w.drain_subtree();
    ASSERT_EQ(w.contract->state().next_op_id, 15u);
    const Digest old_root = w.contract->state().root;
    const Digest old_otp = w.auth.get_otp(3);
    ASSERT_TRUE(w.rotate_root());
    EXPECT_NE(w.contract->state().root, old_root);
    EXPECT_EQ(w.contract->generation(), 1u);
    EXPECT_TRUE(w.contract->state().l1.empty());
    const auto id = *w.init();
    EXPECT_EQ(id, 16u);
    EXPECT_FALSE(w.confirm_with(w.client.build_confirm(id, old_otp)));
    EXPECT_TRUE(w.confirm(id));
}

TEST(Contract, StageThreeWithoutMatchChangesNothingButClearsOverflow)
{
    TreeParams p = base();
    p.len_max = 2;
    Wallet w(p);
    w.drain_subtree();
    ASSERT_TRUE(w.next_subtree());
    w.drain_subtree();
    const auto next = Client::leaves_from_seed(w.auth.display_seed(), 1, p);
    const auto stages = w.client.build_new_root_stages(15, w.auth.get_otp(15), next);
    ASSERT_TRUE(w.attempt([&] { w.contract->new_root_stage3(stages.stage3, w.plain(), w.last_meter, w.last_effects); }));
    EXPECT_EQ(w.last_effects.events.back(), "NewRootNoMatch");
    EXPECT_EQ(w.contract->state().next_op_id, 15u);
    for (int i = 0; i < 3; ++i)
        ASSERT_TRUE(w.attempt([&] {
            w.contract->new_root_stage1(stages.stage1, w.signed_ctx(stages.stage1, w.key), w.last_meter,
                                        w.last_effects);
        }));
    ASSERT_TRUE(w.attempt([&] { w.contract->new_root_stage3(stages.stage3, w.plain(), w.last_meter, w.last_effects); }));
    EXPECT_EQ(w.last_effects.events.back(), "NewRootListsCleared");
    EXPECT_TRUE(w.contract->state().l1.empty());
    EXPECT_TRUE(w.rotate_root());
}

TEST(Contract, DailyLimitAndSetters)
{
    Wallet w(base());
    auto run = [&](OpType t, const AccountId& a, std::uint64_t v) {
        const auto id = w.init(t, a, v);
        return id && w.confirm(*id);
    };
    ASSERT_TRUE(run(OpType::SetDailyLimit, "", 100));
    EXPECT_EQ(w.contract->state().daily_limit, 100u);
    EXPECT_TRUE(run(OpType::Transfer, "bob", 60));
    EXPECT_FALSE(run(OpType::Transfer, "bob", 50));
    w.now += 86400;
    EXPECT_TRUE(run(OpType::Transfer, "bob", 50));
    ASSERT_TRUE(run(OpType::SetLastResortTimeout, "", 1000));
    EXPECT_FALSE(w.init(OpType::SetLastResortAddress, "user", 0).has_value());
    ASSERT_TRUE(run(OpType::SetLastResortAddress, "carol", 0));
    EXPECT_EQ(w.contract->state().last_resort_addr, "carol");
}

TEST(Contract, TransferCannotExceedBalance)
{
    Wallet w(base());
    const auto id = *w.init(OpType::Transfer, "bob", 2'000'000);
    EXPECT_FALSE(w.confirm(id));
    EXPECT_TRUE(w.contract->state().operations.at(id).pending);
}

TEST(Contract, LastResortAfterInactivity)
{
    Wallet w(base());
    auto run = [&](OpType t, const AccountId& a, std::uint64_t v) {
        const auto id = w.init(t, a, v);
        return id && w.confirm(*id);
    };
    auto last_resort = [&] {
        return w.attempt([&] { w.contract->send_to_last_resort(w.plain(), w.last_meter, w.last_effects); });
    };
    EXPECT_FALSE(last_resort());
    ASSERT_TRUE(run(OpType::SetLastResortTimeout, "", 1000));
    ASSERT_TRUE(run(OpType::SetLastResortAddress, "carol", 0));
    w.now += 500;
    EXPECT_FALSE(last_resort());
    w.now += 600;
    ASSERT_TRUE(last_resort());
    ASSERT_EQ(w.last_effects.credits.size(), 1u);
    EXPECT_EQ(w.last_effects.credits[0], std::make_pair(AccountId("carol"), std::uint64_t{1'000'000}));
    EXPECT_TRUE(w.contract->state().destroyed);
    EXPECT_FALSE(w.init().has_value());
}

TEST(Contract, RevertedCallLeavesStateUntouched)
{
    Wallet w(base());
    const auto id = *w.init();
    const auto before = w.contract->state();
    EXPECT_FALSE(w.confirm_with(w.client.build_confirm(id, w.auth.get_otp(id + 1))));
    EXPECT_EQ(w.contract->state(), before);
}

TEST(Metering, ConfirmMatchesClosedForm)
{
    for (int HS = 0; HS <= 6; ++HS)
        for (std::uint32_t P : {1u, 2u, 4u, 8u})
            for (int LS = 0; LS <= HS; ++LS) {
                const std::uint64_t NS = (std::uint64_t{1} << HS) * P;
                if (NS < 2)
                    continue;
                const TreeParams p = fixture::params(128, NS, P, NS, LS);
                Wallet w(p);
                for (std::uint64_t i = 0; i + 1 < NS; ++i) {
                    const auto id = *w.init();
                    ASSERT_TRUE(w.confirm(id));
                    const PrimitiveCounts expected = confirm_transfer_counts(p, id);
                    EXPECT_EQ(w.last_meter.hashes.calls, expected.hash_calls) << p.describe() << " op " << id;
                    EXPECT_EQ(w.last_meter.hashes.calls,
                              static_cast<std::uint64_t>(layer_of(p, id)) + static_cast<std::uint64_t>(HS - LS));
                    EXPECT_EQ(w.last_meter.hashes.words, expected.hash_words);
                    EXPECT_EQ(w.last_meter.storage_read, expected.storage_read);
                    EXPECT_EQ(w.last_meter.storage_update, expected.storage_update);
                }
            }
}

TEST(Metering, FullCacheWithoutChainsNeedsOneHash)
{
    const TreeParams p = fixture::params(128, 16, 1, 16, 4);
    Wallet w(p);
    const auto id = *w.init();
    ASSERT_TRUE(w.confirm(id));
    EXPECT_EQ(w.last_meter.hashes.calls, 1u);
}

TEST(Metering, DeployStorageGrowsWithCacheDepth)
{
    std::uint64_t prev = 0;
    for (int LS = 0; LS <= 6; ++LS) {
        const TreeParams p = fixture::params(128, 64, 1, 64, LS);
        CallMeter m;
        CallEffects e;
        const Client c = Client::bootstrap_secure(fixture::seed_from(1), p);
        WalletContract::deploy(c.build_deploy(Bytes(32, 1)), CallContext{"user", 0, {}, {}}, Hasher(128), m, e);
        EXPECT_EQ(m.storage_new, deploy_counts(p).storage_new);
        EXPECT_EQ(m.storage_new, storage_layout::kDeployScalarWords + (std::uint64_t{1} << LS));
        EXPECT_EQ(m.hashes.calls, deploy_counts(p).hash_calls);
        EXPECT_EQ(m.hashes.words, deploy_counts(p).hash_words);
        EXPECT_GT(m.storage_new, prev);
        prev = m.storage_new;
    }
}
