#include "smartotps/script.hpp"

#include "smartotps/errors.hpp"
#include "smartotps/mnemonic.hpp"

#include <random>
#include <sstream>

namespace smartotps {

namespace {

std::vector<std::string> tokens(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

std::uint64_t number(const std::string& text)
{
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("expected a non-negative integer, got '" + text + "'");
    try {
        return std::stoull(text);
    } catch (const std::out_of_range&) {
        throw ParseError("integer '" + text + "' is too large");
    }
}

void arity(const std::vector<std::string>& t, std::size_t lo, std::size_t hi)
{
    if (t.size() - 1 < lo || t.size() - 1 > hi)
        throw ParseError("'" + t[0] + "' takes " +
                         (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                         " arguments");
}

std::string receipt_line(const std::string& what, const Receipt& r)
{
    std::string out = what + " tx=" + std::to_string(r.tx) + " status=" + (r.ok ? "ok" : "revert");
    if (r.op_id)
        out += " op_id=" + std::to_string(*r.op_id);
    if (!r.ok)
        out += " error=\"" + r.error + "\"";
    return out + "\n";
}

} // namespace

ScriptRunner::ScriptRunner()
{
    config_.params = TreeParams::parse_csv("128,16,2,8,1");
    execute("rng-seed 1");
}

Ledger& ScriptRunner::ledger()
{
    ensure_ledger();
    return *ledger_;
}

Session& ScriptRunner::session()
{
    if (!session_ || !session_->bootstrapped())
        throw ProtocolAbort("wallet has not been bootstrapped");
    return *session_;
}

void ScriptRunner::require_setup_phase(const std::string& command) const
{
    if (ledger_)
        throw ParseError("'" + command + "' must come before the first ledger command");
}

void ScriptRunner::ensure_ledger()
{
    if (ledger_)
        return;
    auto accounts = accounts_;
    if (accounts.empty())
        accounts[config_.account] = 1000;
    ledger_ = std::make_unique<Ledger>(std::move(accounts));
}

std::string ScriptRunner::expect(const std::vector<std::string>& t)
{
    if (t.size() < 3)
        throw ParseError("expect needs a subject and a value");
    std::uint64_t actual = 0;
    std::uint64_t wanted = 0;
    if (t[1] == "balance") {
        arity(t, 3, 3);
        actual = ledger().balance(t[2]);
        wanted = number(t[3]);
    } else if (t[1] == "wallet-balance") {
        arity(t, 2, 2);
        actual = session().contract().state().balance;
        wanted = number(t[2]);
    } else if (t[1] == "next-op-id") {
        arity(t, 2, 2);
        actual = session().contract().state().next_op_id;
        wanted = number(t[2]);
    } else {
        throw ParseError("unknown expectation '" + t[1] + "'");
    }
    if (actual != wanted)
        throw IntegrityError("expected " + t[1] + " " + std::to_string(wanted) + ", found " +
                             std::to_string(actual));
    return "expect " + t[1] + " ok\n";
}

std::string ScriptRunner::execute(const std::string& raw)
{
    const auto hash = raw.find('#');
    const auto t = tokens(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (t.empty())
        return {};
    const std::string& cmd = t[0];

    if (cmd == "params") {
        arity(t, 1, 1);
        require_setup_phase(cmd);
        config_.params = TreeParams::parse_csv(t[1]);
        return {};
    }
    if (cmd == "rng-seed") {
        arity(t, 1, 1);
        require_setup_phase(cmd);
        std::mt19937_64 rng(number(t[1]));
        for (auto& b : k_.bytes)
            b = static_cast<std::uint8_t>(rng() & 0xffu);
        for (auto& b : wallet_seed_)
            b = static_cast<std::uint8_t>(rng() & 0xffu);
        return {};
    }
    if (cmd == "seed") {
        arity(t, 1, 1);
        require_setup_phase(cmd);
        k_ = Seed::from_hex(t[1]);
        return {};
    }
    if (cmd == "wallet-seed") {
        arity(t, 1, 1);
        require_setup_phase(cmd);
        const Bytes b = from_hex(t[1]);
        if (b.size() != wallet_seed_.size())
            throw ParseError("wallet seed must be 32 bytes of hex");
        std::copy(b.begin(), b.end(), wallet_seed_.begin());
        return {};
    }
    if (cmd == "account") {
        arity(t, 2, 2);
        require_setup_phase(cmd);
        accounts_[t[1]] = number(t[2]);
        return {};
    }
    if (cmd == "depth") {
        arity(t, 1, 1);
        require_setup_phase(cmd);
        config_.confirmation_depth = static_cast<std::uint32_t>(number(t[1]));
        return {};
    }
    if (cmd == "display-limit") {
        arity(t, 1, 1);
        require_setup_phase(cmd);
        config_.display_limit = number(t[1]);
        return {};
    }

    if (cmd == "bootstrap") {
        arity(t, 1, 1);
        if (session_)
            throw ProtocolAbort("wallet is already bootstrapped");
        config_.bootstrap_mode = parse_mode(t[1]);
        ensure_ledger();
        auto s = std::make_unique<Session>(*ledger_, config_, k_, wallet_seed_);
        s->bootstrap();
        session_ = std::move(s);
        return "contract_id=" + session_->contract_id().hex() + "\n";
    }
    if (cmd == "fund") {
        arity(t, 1, 1);
        const Receipt r = session().fund(number(t[1]));
        return receipt_line("fund", r) + "wallet_balance=" + std::to_string(session().contract().state().balance) +
               "\n";
    }
    if (cmd == "init") {
        arity(t, 3, 3);
        Session& s = session();
        const std::uint64_t op = s.await_initiation(s.initiate(parse_op_type(t[1]), t[2], number(t[3])));
        return "op_id=" + std::to_string(op) + "\n";
    }
    if (cmd == "confirm") {
        arity(t, 1, 2);
        Session& s = session();
        std::optional<Digest> otp;
        if (t.size() == 3)
            otp = Digest::from_hex(t[2]);
        const Receipt r = s.mine_until_included(s.submit_confirmation(number(t[1]), otp));
        return receipt_line("confirm", r);
    }
    if (cmd == "op") {
        arity(t, 3, 3);
        const OperationOutcome o = session().run_operation(parse_op_type(t[1]), t[2], number(t[3]));
        return "op_id=" + std::to_string(o.op_id) + " status=" + (o.confirmed ? "ok" : "revert") +
               (o.confirmed ? "" : " error=\"" + o.error + "\"") + "\n";
    }
    if (cmd == "subtree-next") {
        arity(t, 0, 0);
        session().run_next_subtree();
        return "subtree=" + std::to_string(session().contract().current_subtree()) + "\n";
    }
    if (cmd == "root-rotate") {
        arity(t, 1, 1);
        session().run_new_root(parse_mode(t[1]));
        return "generation=" + std::to_string(session().contract().generation()) +
               " root=" + session().contract().state().root.hex() + "\n";
    }
    if (cmd == "otp") {
        arity(t, 1, 1);
        const Digest otp = session().authenticator().get_otp(number(t[1]));
        std::string out = "otp=" + otp.hex() + "\n";
        if (mnemonic_supports_bits(otp.bits()))
            out += "words=" + join_words(mnemonic_encode(Wordlist::standard(), otp)) + "\n";
        return out;
    }
    if (cmd == "last-resort") {
        arity(t, 0, 0);
        Session& s = session();
        Transaction tx{config_.account, ledger_->next_nonce(config_.account), config_.fee,
                       LastResortCall{s.contract_id()}, std::nullopt};
        return receipt_line("last-resort", s.mine_until_included(ledger_->submit(std::move(tx))));
    }
    if (cmd == "pay") {
        arity(t, 3, 3);
        ensure_ledger();
        Transaction tx{t[1], ledger_->next_nonce(t[1]), 1, PayCall{t[2], number(t[3])}, std::nullopt};
        const TxRef ref = ledger_->submit(std::move(tx));
        while (!ledger_->receipt(ref) && ledger_->pending(ref))
            ledger_->mine_block();
        if (!ledger_->receipt(ref))
            throw ProtocolAbort("payment left the mempool without being mined");
        return receipt_line("pay", *ledger_->receipt(ref));
    }
    if (cmd == "mine") {
        arity(t, 0, 1);
        ensure_ledger();
        const std::uint64_t n = t.size() == 2 ? number(t[1]) : 1;
        for (std::uint64_t i = 0; i < n; ++i)
            ledger_->mine_block();
        return "height=" + std::to_string(ledger_->head_height()) + "\n";
    }
    if (cmd == "advance-time") {
        arity(t, 1, 1);
        ensure_ledger();
        ledger_->advance_time(number(t[1]));
        return {};
    }
    if (cmd == "fork") {
        arity(t, 1, 1);
        ensure_ledger();
        return "branch=" + std::to_string(ledger_->fork(number(t[1]))) + "\n";
    }
    if (cmd == "mine-branch") {
        arity(t, 1, 2);
        ensure_ledger();
        const BranchId id = number(t[1]);
        const std::uint64_t n = t.size() == 3 ? number(t[2]) : 1;
        for (std::uint64_t i = 0; i < n; ++i)
            ledger_->mine_branch(id);
        return "branch=" + std::to_string(id) + " height=" + std::to_string(ledger_->branch_height(id)) + "\n";
    }
    if (cmd == "reorg") {
        arity(t, 1, 1);
        ensure_ledger();
        ledger_->reorg(number(t[1]));
        return "height=" + std::to_string(ledger_->head_height()) + "\n";
    }
    if (cmd == "expect")
        return expect(t);
    if (cmd == "state") {
        arity(t, 0, 0);
        ensure_ledger();
        return "height=" + std::to_string(ledger_->head_height()) + " state_hash=" + ledger_->state_hash().hex() +
               "\n";
    }
    if (cmd == "log") {
        arity(t, 0, 0);
        ensure_ledger();
        std::string out;
        for (const auto& l : ledger_->event_log())
            out += l + "\n";
        return out;
    }
    throw ParseError("unknown command '" + cmd + "'");
}

std::string ScriptRunner::run(std::istream& in)
{
    std::string out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        try {
            out += execute(line);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(n) + ": " + e.what());
        } catch (const DomainError& e) {
            throw DomainError("line " + std::to_string(n) + ": " + e.what());
        } catch (const ProtocolAbort& e) {
            throw ProtocolAbort("line " + std::to_string(n) + ": " + e.what());
        } catch (const IntegrityError& e) {
            throw IntegrityError("line " + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

} // namespace smartotps
