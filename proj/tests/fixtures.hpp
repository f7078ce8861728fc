#pragma once

#include "smartotps/authenticator.hpp"
#include "smartotps/client.hpp"
#include "smartotps/errors.hpp"
#include "smartotps/signature.hpp"
#include "smartotps/wallet_contract.hpp"

#include <optional>
#include <random>

namespace fixture {

using namespace smartotps;

inline Seed seed_from(std::uint64_t n)
{
    std::mt19937_64 rng(n);
    Seed k;
    for (auto& b : k.bytes)
        b = static_cast<std::uint8_t>(rng());
    return k;
}

inline std::array<std::uint8_t, 32> key_seed_from(std::uint64_t n)
{
    std::mt19937_64 rng(n ^ 0x5eed);
    std::array<std::uint8_t, 32> s{};
    for (auto& b : s)
        b = static_cast<std::uint8_t>(rng());
    return s;
}

inline TreeParams params(int S, std::uint64_t N, std::uint32_t P, std::uint64_t NS, int LS)
{
    TreeParams p;
    p.S = S;
    p.N = N;
    p.P = P;
    p.NS = NS;
    p.LS = LS;
    p.validate();
    return p;
}

/// A deployed contract driven directly, without a ledger.
struct Wallet {
    TreeParams p;
    Hasher h;
    Authenticator auth;
    SigningKey key;
    Client client;
    std::optional<WalletContract> contract;
    std::uint64_t now = 1'600'000'000;
    CallMeter last_meter;
    CallEffects last_effects;

    explicit Wallet(const TreeParams& params, std::uint64_t seed = 7)
        : p(params),
          h(params.S),
          auth(seed_from(seed), params),
          key(SigningKey::from_seed(key_seed_from(seed))),
          client(Client::bootstrap_secure(seed_from(seed), params))
    {
        last_meter = {};
        last_effects = {};
        contract = WalletContract::deploy(client.build_deploy(key.public_key()), plain(), h, last_meter, last_effects);
        client.set_contract_id(contract->id());
        contract->fund(1'000'000, last_meter, last_effects);
    }

    CallContext plain() const { return CallContext{"user", now, {}, std::nullopt}; }

    CallContext signed_ctx(const Call& call, const SigningKey& with) const
    {
        Transaction tx{"user", 0, 1, call, std::nullopt};
        const Bytes msg = tx.signing_bytes();
        return CallContext{"user", now, msg, with.sign(msg)};
    }

    /// Runs a call, reporting whether it committed.
    template <class Fn>
    bool attempt(Fn&& fn)
    {
        last_meter = {};
        last_effects = {};
        try {
            fn();
            return true;
        } catch (const ContractRevert&) {
            return false;
        }
    }

    std::optional<std::uint64_t> init(OpType type = OpType::Transfer, const AccountId& to = "bob",
                                      std::uint64_t param = 1)
    {
        const InitOpCall call = client.build_init(type, to, param);
        std::optional<std::uint64_t> id;
        attempt([&] {
            contract->init_op(call, signed_ctx(call, key), last_meter, last_effects);
            id = last_effects.op_id;
        });
        return id;
    }

    bool confirm_with(const ConfirmOpCall& call)
    {
        return attempt([&] { contract->confirm_op(call, plain(), last_meter, last_effects); });
    }

    bool confirm(std::uint64_t op_id) { return confirm_with(client.build_confirm(op_id, auth.get_otp(op_id))); }

    bool next_subtree()
    {
        const std::uint64_t op = contract->state().next_op_id;
        const auto call = client.build_next_subtree(op, auth.get_otp(op));
        const bool ok = attempt([&] { contract->next_subtree(call, plain(), last_meter, last_effects); });
        if (ok)
            client.advance_subtree();
        return ok;
    }

    /// Fills the current subtree with confirmed transfers up to its reserved slot.
    void drain_subtree()
    {
        while (!is_reserved_slot(p, contract->state().next_op_id)) {
            const auto id = init();
            if (!id || !confirm(*id))
                throw std::runtime_error("drain failed");
        }
    }

    /// Full three-stage parent replacement with the user's own key.
    bool rotate_root()
    {
        const std::uint64_t op = contract->state().next_op_id;
        const auto next = Client::leaves_from_seed(auth.display_seed(), auth.generation() + 1, p);
        const auto stages = client.build_new_root_stages(op, auth.get_otp(op), next);
        bool ok = attempt([&] {
            contract->new_root_stage1(stages.stage1, signed_ctx(stages.stage1, key), last_meter, last_effects);
        });
        ok = ok && attempt([&] {
            contract->new_root_stage2(stages.stage2, signed_ctx(stages.stage2, key), last_meter, last_effects);
        });
        ok = ok && attempt([&] { contract->new_root_stage3(stages.stage3, plain(), last_meter, last_effects); });
        if (ok && contract->state().root == MerkleTree(h, next).root()) {
            auth.advance_generation();
            client.install_generation(next);
            return true;
        }
        return false;
    }
};

} // namespace fixture
