#include "smartotps/scenarios.hpp"

#include "smartotps/errors.hpp"
#include "smartotps/protocols.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace smartotps {

bool ScenarioResult::passed() const
{
    if (checks.empty())
        return false;
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return true;
}

std::string ScenarioResult::report() const
{
    std::ostringstream out;
    out << "scenario=" << name << '\n';
    for (const auto& c : checks)
        out << (c.passed ? "ok   " : "FAIL ") << c.description << '\n';
    out << "state_hash=" << state_hash << '\n';
    out << "result=" << (passed() ? "pass" : "fail") << '\n';
    return out.str();
}

namespace {

constexpr std::uint64_t kUserFunds = 1000;
constexpr std::uint64_t kAdversaryFee = 100;

TreeParams scenario_params()
{
    TreeParams p;
    p.S = 128;
    p.N = 16;
    p.P = 2;
    p.NS = 8;
    p.LS = 1;
    p.len_max = 16;
    return p;
}

std::map<AccountId, std::uint64_t> genesis()
{
    return {{"user", kUserFunds}, {"bob", 0}, {"mallory", 0}};
}

struct Keys {
    Seed k;
    std::array<std::uint8_t, 32> wallet{};
    std::array<std::uint8_t, 32> adversary{};
    Seed adversary_k;
    std::mt19937_64 rng;

    explicit Keys(std::uint64_t seed) : rng(seed)
    {
        fill(k.bytes);
        fill(wallet);
        fill(adversary);
        fill(adversary_k.bytes);
    }

    template <class Array>
    void fill(Array& a)
    {
        for (auto& b : a)
            b = static_cast<std::uint8_t>(rng() & 0xffu);
    }

    Digest random_digest(int bits)
    {
        Bytes b(static_cast<std::size_t>(bits / 8));
        for (auto& x : b)
            x = static_cast<std::uint8_t>(rng() & 0xffu);
        return Digest(std::move(b));
    }
};

class Checks {
public:
    explicit Checks(ScenarioResult& r) : r_(r) {}
    void operator()(const std::string& description, bool passed) { r_.checks.push_back({description, passed}); }

private:
    ScenarioResult& r_;
};

/// Sends transactions from the attacker's own account.
struct Adversary {
    Ledger& ledger;
    std::optional<SigningKey> key;
    AccountId account = "mallory";

    TxRef send(const Call& call, bool sign, std::uint64_t fee = kAdversaryFee)
    {
        Transaction tx{account, ledger.next_nonce(account), fee, call, std::nullopt};
        if (sign && key)
            tx.signature = key->sign(tx.signing_bytes());
        return ledger.submit(std::move(tx));
    }
};

SessionConfig session_config(Mode mode = Mode::Secure)
{
    SessionConfig cfg;
    cfg.params = scenario_params();
    cfg.bootstrap_mode = mode;
    return cfg;
}

Receipt mined(Ledger& ledger, TxRef tx)
{
    while (!ledger.receipt(tx)) {
        if (!ledger.pending(tx))
            throw ProtocolAbort("transaction " + std::to_string(tx) + " vanished");
        ledger.mine_block();
    }
    return *ledger.receipt(tx);
}

bool reverted(const Ledger& ledger, TxRef tx)
{
    const Receipt* r = ledger.receipt(tx);
    return r && !r->ok;
}

template <class Fn>
bool aborts(Fn&& fn)
{
    try {
        fn();
    } catch (const ProtocolAbort&) {
        return true;
    }
    return false;
}

Client public_client(Session& s)
{
    Client c = Client::bootstrap_insecure(s.authenticator().export_leaves(), s.config().params);
    c.set_contract_id(s.contract_id());
    return c;
}

void common_checks(Checks& check, const Ledger& ledger)
{
    check("tokens are conserved", ledger.state().total_supply() == kUserFunds);
    check("every accepted signed call verifies under PK_U", ledger.audit_signatures());
}

bool reveals_waited(const Session& s)
{
    for (const auto& r : s.reveals())
        if (r.init_depth < s.config().confirmation_depth)
            return false;
    return true;
}

ScenarioResult theorem1(std::uint64_t seed)
{
    ScenarioResult result{"theorem1", {}, {}, {}};
    Checks check(result);
    Keys keys(seed);
    Ledger ledger(genesis());
    Session s(ledger, session_config(), keys.k, keys.wallet);
    s.bootstrap();
    s.fund(100);
    check("user transfer before the theft confirms", s.run_operation(OpType::Transfer, "bob", 10).confirmed);

    Adversary adv{ledger, s.wallet().leak_key()};
    const Receipt init = mined(ledger, adv.send(InitOpCall{s.contract_id(), OpType::Transfer, "mallory", 50}, true));
    check("adversary holding SK_U can initiate an operation", init.ok && init.op_id.has_value());
    const std::uint64_t adv_op = init.op_id.value_or(0);

    Client pub = public_client(s);
    const Receipt guess = mined(ledger, adv.send(pub.build_confirm(adv_op, keys.random_digest(128)), false));
    check("a guessed OTP does not confirm the adversary's operation", !guess.ok);

    std::vector<TxRef> stolen;
    ledger.add_observer([&](Ledger&, TxRef, const Transaction& tx) {
        const auto* c = std::get_if<ConfirmOpCall>(&tx.call);
        if (tx.sender != "user" || !c)
            return;
        stolen.push_back(adv.send(pub.build_confirm(adv_op, c->otp), false));
        ConfirmOpCall replay = *c;
        replay.op_id = adv_op;
        stolen.push_back(adv.send(replay, false));
    });
    const auto user_op = s.run_operation(OpType::Transfer, "bob", 5);
    check("user operation confirms despite front-running", user_op.confirmed);
    bool all_reverted = !stolen.empty();
    for (TxRef t : stolen)
        all_reverted = all_reverted && reverted(ledger, t);
    check("intercepted OTP never confirms a different operation", all_reverted);
    check("adversary operation is still pending", s.contract().state().operations.at(adv_op).pending);
    check("mallory received nothing", ledger.balance("mallory") == 0);
    check("bob received exactly the confirmed transfers", ledger.balance("bob") == 15);
    check("wallet balance reduced only by confirmed transfers", s.contract().state().balance == 85);
    check("OTPs revealed only after 12 confirmations", reveals_waited(s));
    common_checks(check, ledger);
    result.state_hash = ledger.state_hash().hex();
    result.event_log = ledger.event_log();
    return result;
}

ScenarioResult theorem2(std::uint64_t seed)
{
    ScenarioResult result{"theorem2", {}, {}, {}};
    Checks check(result);
    Keys keys(seed);
    Ledger ledger(genesis());
    Session s(ledger, session_config(), keys.k, keys.wallet);
    s.bootstrap();
    s.fund(100);
    const TreeParams& p = s.config().params;
    Adversary adv{ledger, s.wallet().leak_key()};

    std::vector<TxRef> inits;
    for (std::uint64_t i = 0; i + 1 < p.NS; ++i)
        inits.push_back(adv.send(InitOpCall{s.contract_id(), OpType::Transfer, "mallory", 1}, true));
    bool all_ok = true;
    for (TxRef t : inits)
        all_ok = all_ok && mined(ledger, t).ok;
    check("adversary depletes all but the reserved slot of subtree 0", all_ok &&
                                                                         s.contract().state().next_op_id == p.NS - 1);
    const Receipt reserved =
        mined(ledger, adv.send(InitOpCall{s.contract_id(), OpType::Transfer, "mallory", 1}, true));
    check("initiation at the reserved slot reverts", !reserved.ok);

    Client pub = public_client(s);
    const Receipt guess = mined(ledger, adv.send(pub.build_next_subtree(p.NS - 1, keys.random_digest(128)), false));
    check("next subtree cannot be introduced without the OTP", !guess.ok);

    std::optional<TxRef> forged, copied;
    ledger.add_observer([&](Ledger&, TxRef, const Transaction& tx) {
        const auto* c = std::get_if<NextSubtreeCall>(&tx.call);
        if (tx.sender != "user" || !c || forged)
            return;
        NextSubtreeCall fake = *c;
        fake.sublayer = pub.sublayer(0).nodes;
        fake.pi_sr = pub.subtree_root_proof(0);
        forged = adv.send(fake, false, kAdversaryFee);
        copied = adv.send(*c, false, kAdversaryFee / 2);
    });
    const bool introduced = !aborts([&] { s.run_next_subtree(); });
    check("subtree introduction succeeds for the user", introduced);
    check("stolen OTP with a forged sublayer reverts", forged && reverted(ledger, *forged));
    check("stolen OTP can only install the valid next sublayer",
          s.contract().current_subtree() == 1 && s.contract().state().current_sublayer.nodes == pub.sublayer(1).nodes);
    check("user operation in subtree 1 confirms", s.run_operation(OpType::Transfer, "bob", 5).confirmed);
    bool stale = true;
    for (std::uint64_t i = 0; i + 1 < p.NS; ++i)
        stale = stale && s.contract().state().operations.at(i).pending;
    check("adversary operations of subtree 0 were never executed", stale);
    check("mallory received nothing", ledger.balance("mallory") == 0);
    check("bob received the confirmed transfer", ledger.balance("bob") == 5);
    common_checks(check, ledger);
    result.state_hash = ledger.state_hash().hex();
    result.event_log = ledger.event_log();
    return result;
}

ScenarioResult theorem3(std::uint64_t seed)
{
    ScenarioResult result{"theorem3", {}, {}, {}};
    Checks check(result);
    Keys keys(seed);
    Ledger ledger(genesis());
    Session s(ledger, session_config(), keys.k, keys.wallet);
    s.bootstrap();
    s.fund(100);
    const TreeParams& p = s.config().params;
    Adversary adv{ledger, s.wallet().leak_key()};

    auto deplete = [&] {
        std::vector<TxRef> txs;
        while (!is_reserved_slot(p, s.contract().state().next_op_id + txs.size()))
            txs.push_back(adv.send(InitOpCall{s.contract_id(), OpType::Transfer, "mallory", 1}, true));
        for (TxRef t : txs)
            mined(ledger, t);
    };
    deplete();
    s.run_next_subtree();
    deplete();
    check("parent tree is exhausted up to its last slot", s.contract().state().next_op_id == p.N - 1);

    const Hasher h(p.S);
    const MerkleTree adv_tree(h, generate_leaves(h, keys.adversary_k, 1, p));
    std::vector<TxRef> attack;
    ledger.add_observer([&](Ledger&, TxRef, const Transaction& tx) {
        const auto* c = std::get_if<NewRootStage3Call>(&tx.call);
        if (tx.sender != "user" || !c || !attack.empty())
            return;
        attack.push_back(adv.send(NewRootStage1Call{s.contract_id(), hash_pair(h, adv_tree.root(), c->otp)}, true));
        attack.push_back(adv.send(NewRootStage2Call{s.contract_id(), adv_tree.root()}, true));
        NewRootStage3Call mine = *c;
        mine.sublayer = adv_tree.cached_sublayer(0, p).nodes;
        mine.pi_sr = adv_tree.subtree_root_proof(0, p);
        attack.push_back(adv.send(mine, false));
    });
    const bool rotated = !aborts([&] { s.run_new_root(Mode::Secure); });
    check("user's new parent root is installed", rotated && s.contract().state().root == s.client().root());
    check("adversary root is not installed", s.contract().state().root != adv_tree.root());
    check("adversary appended its own list entries", attack.size() == 3 && !reverted(ledger, attack[0]) &&
                                                         !reverted(ledger, attack[1]));
    check("adversary stage 3 with the replayed OTP reverts", attack.size() == 3 && reverted(ledger, attack[2]));
    check("lists are cleared after the replacement", s.contract().state().l1.empty() && s.contract().state().l2.empty());
    const auto next = s.run_operation(OpType::Transfer, "bob", 7);
    check("operation of the new parent tree confirms", next.confirmed && next.op_id == p.N);
    check("mallory received nothing", ledger.balance("mallory") == 0);
    common_checks(check, ledger);
    result.state_hash = ledger.state_hash().hex();
    result.event_log = ledger.event_log();
    return result;
}

ScenarioResult theorem4(std::uint64_t seed)
{
    ScenarioResult result{"theorem4", {}, {}, {}};
    Checks check(result);
    Keys keys(seed);
    Ledger ledger(genesis());
    Session s(ledger, session_config(), keys.k, keys.wallet);
    s.bootstrap();
    s.fund(100);
    const auto signatures = s.wallet().signatures_made();
    const auto next_before = s.contract().state().next_op_id;

    s.tamper().redirect_recipient = "mallory";
    check("wallet display mismatch makes the user decline",
          aborts([&] { s.run_operation(OpType::Transfer, "bob", 10); }));
    check("nothing was signed", s.wallet().signatures_made() == signatures);
    check("no operation was initiated", s.contract().state().next_op_id == next_before);
    s.tamper().redirect_recipient.reset();
    check("user operation confirms once the client is clean", s.run_operation(OpType::Transfer, "bob", 10).confirmed);
    check("mallory received nothing", ledger.balance("mallory") == 0);
    check("bob received the intended transfer", ledger.balance("bob") == 10);
    common_checks(check, ledger);
    result.state_hash = ledger.state_hash().hex();
    result.event_log = ledger.event_log();
    return result;
}

ScenarioResult theorem5(std::uint64_t seed)
{
    ScenarioResult result{"theorem5", {}, {}, {}};
    Checks check(result);
    Keys keys(seed);

    Ledger forged_root(genesis());
    Session a(forged_root, session_config(Mode::Insecure), keys.k, keys.wallet);
    a.tamper().forged_root_seed = keys.adversary_k;
    check("forged root is caught by the display comparison", aborts([&] { a.bootstrap(); }));
    check("nothing deployed after the forged root", forged_root.state().contracts.empty());

    Ledger forged_pk(genesis());
    Session b(forged_pk, session_config(Mode::Insecure), keys.k, keys.wallet);
    b.tamper().forged_pk = SigningKey::from_seed(keys.adversary).public_key();
    check("forged PK_U is caught by the contract id comparison", aborts([&] { b.bootstrap(); }));
    check("nothing deployed after the forged key", forged_pk.state().contracts.empty());

    Ledger insecure(genesis());
    Session c(insecure, session_config(Mode::Insecure), keys.k, keys.wallet);
    c.bootstrap();
    Ledger secure(genesis());
    Session d(secure, session_config(Mode::Secure), keys.k, keys.wallet);
    d.bootstrap();
    check("honest insecure bootstrap equals the secure one",
          c.contract_id() == d.contract_id() && c.client().leaves() == d.client().leaves() &&
              c.contract().state() == d.contract().state());
    check("leaf export carries no OTP", [&] {
        const std::string exported = c.authenticator().export_leaves().serialize();
        for (std::uint64_t i = 0; i < c.config().params.N; ++i)
            if (exported.find(c.authenticator().get_otp(i).hex()) != std::string::npos)
                return false;
        return exported.find(keys.k.hex()) == std::string::npos;
    }());
    c.fund(100);
    check("operation after insecure bootstrap confirms", c.run_operation(OpType::Transfer, "bob", 10).confirmed);
    common_checks(check, insecure);
    result.state_hash = insecure.state_hash().hex();
    result.event_log = insecure.event_log();
    return result;
}

ScenarioResult theorem6(std::uint64_t seed)
{
    ScenarioResult result{"theorem6", {}, {}, {}};
    Checks check(result);
    Keys keys(seed);
    Ledger ledger(genesis());
    Session s(ledger, session_config(), keys.k, keys.wallet);
    s.bootstrap();
    s.fund(100);
    s.run_operation(OpType::Transfer, "bob", 10);

    const Authenticator stolen(keys.k, s.config().params);
    Client pub = public_client(s);
    const std::string before = s.contract().state().canonical();
    const auto balances = ledger.state().accounts;
    const std::uint64_t next = s.contract().state().next_op_id;

    Adversary own{ledger, SigningKey::from_seed(keys.adversary)};
    Adversary unsigned_adv{ledger, std::nullopt};
    std::vector<TxRef> attempts;
    attempts.push_back(own.send(InitOpCall{s.contract_id(), OpType::Transfer, "mallory", 50}, true));
    attempts.push_back(unsigned_adv.send(InitOpCall{s.contract_id(), OpType::Transfer, "mallory", 50}, false));
    attempts.push_back(own.send(pub.build_confirm(next, stolen.get_otp(next)), false));
    {
        NextSubtreeCall call;
        call.contract = s.contract_id();
        call.sublayer = pub.sublayer(1).nodes;
        call.otp = stolen.get_otp(next);
        call.pi_otp = MerkleTree(Hasher(128), pub.leaves()).proof(otp_chain_index(s.config().params, next));
        call.pi_sr = pub.subtree_root_proof(1);
        attempts.push_back(own.send(call, false));
    }
    attempts.push_back(own.send(NewRootStage1Call{s.contract_id(), keys.random_digest(128)}, true));
    attempts.push_back(own.send(LastResortCall{s.contract_id()}, false));
    bool all_reverted = true;
    for (TxRef t : attempts)
        all_reverted = all_reverted && !mined(ledger, t).ok;
    check("every attempt with the authenticator but without SK_U reverts", all_reverted);
    check("wallet state is unchanged", s.contract().state().canonical() == before);
    check("account balances are unchanged", ledger.state().accounts == balances);
    common_checks(check, ledger);
    result.state_hash = ledger.state_hash().hex();
    result.event_log = ledger.event_log();
    return result;
}

ScenarioResult depletion(std::uint64_t seed)
{
    ScenarioResult result{"depletion", {}, {}, {}};
    Checks check(result);
    Keys keys(seed);
    Ledger ledger(genesis());
    Session s(ledger, session_config(), keys.k, keys.wallet);
    s.bootstrap();
    s.fund(100);
    const TreeParams& p = s.config().params;

    auto drain_subtree = [&] {
        bool ok = true;
        while (!is_reserved_slot(p, s.contract().state().next_op_id))
            ok = s.run_operation(OpType::Transfer, "bob", 1).confirmed && ok;
        return ok;
    };
    check("all N_S - 1 operations of subtree 0 confirm", drain_subtree());
    check("initiation at the reserved slot is refused", aborts([&] {
              s.await_initiation(s.initiate(OpType::Transfer, "bob", 1));
          }));
    s.run_next_subtree();
    check("subtree 1 is active", s.contract().current_subtree() == 1 && s.client().current_subtree() == 1);
    check("all operations of subtree 1 confirm", drain_subtree());
    s.run_new_root(Mode::Insecure);
    check("parent tree generation 1 is active",
          s.contract().generation() == 1 && s.authenticator().generation() == 1 && s.client().generation() == 1);
    const auto next = s.run_operation(OpType::Transfer, "bob", 1);
    check("first operation of the new parent tree confirms", next.confirmed && next.op_id == p.N);
    check("bob received one token per confirmed transfer", ledger.balance("bob") == 2 * (p.NS - 1) + 1);
    check("OTPs revealed only after 12 confirmations", reveals_waited(s));
    common_checks(check, ledger);
    result.state_hash = ledger.state_hash().hex();
    result.event_log = ledger.event_log();
    return result;
}

ScenarioResult dos_pending(std::uint64_t seed)
{
    ScenarioResult result{"dos-pending", {}, {}, {}};
    Checks check(result);
    Keys keys(seed);
    Ledger ledger(genesis());
    Session s(ledger, session_config(), keys.k, keys.wallet);
    s.bootstrap();
    s.fund(100);
    Adversary adv{ledger, s.wallet().leak_key()};
    Client pub = public_client(s);

    std::vector<std::uint64_t> ops;
    for (int i = 0; i < 5; ++i) {
        const Receipt r =
            mined(ledger, adv.send(InitOpCall{s.contract_id(), OpType::Transfer, "mallory", 20}, true));
        if (r.ok && r.op_id)
            ops.push_back(*r.op_id);
    }
    check("adversary creates pending operations", ops.size() == 5);
    std::size_t consumed = 0;
    for (std::uint64_t op : ops)
        if (mined(ledger, adv.send(pub.build_confirm(op, keys.random_digest(128)), false)).ok)
            ++consumed;
    check("adversary confirms none of them", consumed == 0);
    const auto user_op = s.run_operation(OpType::Transfer, "bob", 10);
    check("user operation still confirms", user_op.confirmed);
    bool pending = true;
    for (std::uint64_t op : ops)
        pending = pending && s.contract().state().operations.at(op).pending;
    check("adversary operations stay pending", pending);
    check("mallory received nothing", ledger.balance("mallory") == 0);
    check("wallet paid only the user transfer", s.contract().state().balance == 90);
    common_checks(check, ledger);
    result.state_hash = ledger.state_hash().hex();
    result.event_log = ledger.event_log();
    return result;
}

struct ForkRun {
    std::uint64_t mallory = 0;
    bool user_confirmed = false;
    bool attacked = false;
    bool waited = false;
    bool conserved = false;
    std::string state_hash;
    std::vector<std::string> event_log;
};

/// The adversary holds SK_U and can reorganize at most kMaxReorg blocks.
ForkRun fork_replay_run(std::uint64_t seed, std::uint32_t depth)
{
    constexpr std::uint64_t kMaxReorg = 6;
    Keys keys(seed);
    Ledger ledger(genesis());
    SessionConfig cfg = session_config();
    cfg.confirmation_depth = depth;
    Session s(ledger, cfg, keys.k, keys.wallet);
    s.bootstrap();
    s.fund(100);

    const SigningKey stolen = s.wallet().leak_key();
    std::optional<BranchId> branch;
    std::uint64_t fork_point = 0;
    std::uint64_t branch_nonce = 0;
    std::optional<std::uint64_t> target_op;
    ForkRun run;

    auto branch_tx = [&](const Call& call, bool sign) {
        Transaction tx{"mallory", branch_nonce++, kAdversaryFee, call, std::nullopt};
        if (sign)
            tx.signature = stolen.sign(tx.signing_bytes());
        ledger.submit_to_branch(*branch, std::move(tx));
    };
    ledger.add_block_observer([&](Ledger& l, const Block& b) {
        if (branch)
            return;
        for (std::size_t i = 0; i < b.txs.size(); ++i) {
            const Transaction& tx = l.transaction(b.txs[i]);
            if (tx.sender != "user" || !std::holds_alternative<InitOpCall>(tx.call) || !b.receipts[i].ok)
                continue;
            fork_point = b.height - 1;
            branch = l.fork(fork_point);
            target_op = b.receipts[i].op_id;
            branch_tx(InitOpCall{s.contract_id(), OpType::Transfer, "mallory", 60}, true);
            l.mine_branch(*branch);
            return;
        }
    });
    ledger.add_observer([&](Ledger& l, TxRef, const Transaction& tx) {
        const auto* c = std::get_if<ConfirmOpCall>(&tx.call);
        if (run.attacked || !branch || tx.sender != "user" || !c || c->op_id != target_op)
            return;
        if (l.head_height() - fork_point > kMaxReorg)
            return;
        run.attacked = true;
        branch_tx(*c, false);
        while (l.branch_height(*branch) <= l.head_height())
            l.mine_branch(*branch);
        l.reorg(*branch);
    });

    try {
        run.user_confirmed = s.run_operation(OpType::Transfer, "bob", 10).confirmed;
    } catch (const ProtocolAbort&) {
        run.user_confirmed = false;
    }
    run.mallory = ledger.balance("mallory");
    run.waited = reveals_waited(s);
    run.conserved = ledger.state().total_supply() == kUserFunds;
    run.state_hash = ledger.state_hash().hex();
    run.event_log = ledger.event_log();
    return run;
}

ScenarioResult fork_replay(std::uint64_t seed)
{
    ScenarioResult result{"fork-replay", {}, {}, {}};
    Checks check(result);
    const ForkRun honest = fork_replay_run(seed, Client::kDefaultConfirmationDepth);
    check("client waiting 12 confirmations reveals its OTP beyond the fork window",
          !honest.attacked && honest.waited);
    check("user operation confirms", honest.user_confirmed);
    check("mallory received nothing", honest.mallory == 0);
    check("tokens are conserved", honest.conserved);
    const ForkRun hasty = fork_replay_run(seed, 0);
    check("control: a client revealing at depth 0 has its OTP replayed on a fork", hasty.attacked &&
                                                                                      hasty.mallory == 60);
    check("control: the user's own operation is lost", !hasty.user_confirmed);
    check("control: tokens are conserved", hasty.conserved);
    result.state_hash = honest.state_hash;
    result.event_log = honest.event_log;
    return result;
}

using Runner = std::function<ScenarioResult(std::uint64_t)>;

const std::map<std::string, Runner>& runners()
{
    static const std::map<std::string, Runner> table = {
        {"theorem1", theorem1},   {"theorem2", theorem2},       {"theorem3", theorem3},
        {"theorem4", theorem4},   {"theorem5", theorem5},       {"theorem6", theorem6},
        {"depletion", depletion}, {"dos-pending", dos_pending}, {"fork-replay", fork_replay},
    };
    return table;
}

} // namespace

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names = {"theorem1", "theorem2",  "theorem3",    "theorem4",   "theorem5",
                                                   "theorem6", "depletion", "dos-pending", "fork-replay"};
    return names;
}

ScenarioResult run_scenario(std::string_view name, std::uint64_t seed)
{
    auto it = runners().find(std::string(name));
    if (it == runners().end())
        throw DomainError("unknown scenario '" + std::string(name) + "'");
    return it->second(seed);
}

} // namespace smartotps
