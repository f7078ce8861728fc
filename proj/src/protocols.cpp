#include "smartotps/protocols.hpp"

#include "smartotps/errors.hpp"

namespace smartotps {

std::string_view mode_name(Mode m)
{
    return m == Mode::Secure ? "secure" : "insecure";
}

Mode parse_mode(std::string_view text)
{
    if (text == "secure")
        return Mode::Secure;
    if (text == "insecure")
        return Mode::Insecure;
    throw ParseError("mode must be secure or insecure, got '" + std::string(text) + "'");
}

HardwareWallet::HardwareWallet(SigningKey key, std::size_t display_limit)
    : key_(std::move(key)), display_limit_(display_limit)
{
}

std::string HardwareWallet::render(const Call& call) const
{
    std::string text = encode_call(call);
    if (display_limit_ > 0 && text.size() > display_limit_)
        text.resize(display_limit_);
    return text;
}

bool HardwareWallet::sign(Transaction& tx, const Confirm& confirm)
{
    if (!confirm(render(tx.call)))
        return false;
    tx.signature = key_.sign(tx.signing_bytes());
    ++signatures_;
    return true;
}

bool UserModel::approve(const std::string& expected, const std::string& shown) const
{
    if (!compares_displays)
        return true;
    return expected.compare(0, shown.size(), shown) == 0 && shown.size() <= expected.size();
}

Digest UserModel::transfer(const Digest& value) const
{
    if (!route_mnemonic || !mnemonic_supports_bits(value.bits()))
        return value;
    const auto& wl = Wordlist::standard();
    return mnemonic_decode_digest(wl, split_words(join_words(mnemonic_encode(wl, value))));
}

Seed UserModel::transfer(const Seed& value) const
{
    if (!route_mnemonic)
        return value;
    const auto& wl = Wordlist::standard();
    const Bytes back = mnemonic_decode(wl, split_words(join_words(mnemonic_encode(wl, ByteView(value.bytes)))));
    Seed out;
    std::copy(back.begin(), back.end(), out.bytes.begin());
    return out;
}

Session::Session(Ledger& ledger, const SessionConfig& config, const Seed& k,
                 const std::array<std::uint8_t, 32>& wallet_seed)
    : ledger_(ledger),
      config_(config),
      authenticator_(k, config.params, Hasher(config.params.S, ledger.config().hash)),
      wallet_(SigningKey::from_seed(wallet_seed), config.display_limit)
{
    user_.route_mnemonic = config.route_mnemonic;
}

Client& Session::client()
{
    if (!client_)
        throw ProtocolAbort("wallet has not been bootstrapped");
    return *client_;
}

const Client& Session::client() const
{
    if (!client_)
        throw ProtocolAbort("wallet has not been bootstrapped");
    return *client_;
}

const WalletContract& Session::contract() const
{
    const auto* c = ledger_.contract(contract_id_);
    if (!c)
        throw ProtocolAbort("wallet contract is not on the canonical chain");
    return *c;
}

std::optional<TxRef> Session::init_tx_of(std::uint64_t op_id) const
{
    auto it = init_txs_.find(op_id);
    if (it == init_txs_.end())
        return std::nullopt;
    return it->second;
}

TxRef Session::submit_plain(const Call& call)
{
    Transaction tx{config_.account, ledger_.next_nonce(config_.account), config_.fee, call, std::nullopt};
    return ledger_.submit(std::move(tx));
}

TxRef Session::submit_signed(const Call& call, const Call& expected)
{
    Transaction tx{config_.account, ledger_.next_nonce(config_.account), config_.fee, call, std::nullopt};
    const std::string intended = wallet_.render(expected);
    if (!wallet_.sign(tx, [&](const std::string& shown) { return user_.approve(intended, shown); }))
        throw ProtocolAbort("user declined to sign: the wallet shows " + std::string(function_name(call)) +
                            " arguments that differ from the intended ones");
    return ledger_.submit(std::move(tx));
}

Receipt Session::mine_until_included(TxRef tx)
{
    for (;;) {
        if (const Receipt* r = ledger_.receipt(tx))
            return *r;
        if (!ledger_.pending(tx))
            throw ProtocolAbort("transaction " + std::to_string(tx) + " left the mempool without being mined");
        ledger_.mine_block();
    }
}

Receipt Session::await_depth(TxRef tx)
{
    bool seen = false;
    for (;;) {
        if (auto depth = ledger_.confirmations(tx)) {
            seen = true;
            if (*depth >= config_.confirmation_depth)
                return *ledger_.receipt(tx);
        } else {
            if (seen) {
                ++reorgs_detected_;
                seen = false;
            }
            if (!ledger_.pending(tx))
                throw ProtocolAbort("transaction " + std::to_string(tx) + " left the mempool without being mined");
        }
        ledger_.mine_block();
    }
}

void Session::bootstrap()
{
    if (client_)
        throw ProtocolAbort("wallet is already bootstrapped");
    const TreeParams& p = config_.params;
    const Hasher h = hasher();

    Client candidate = config_.bootstrap_mode == Mode::Secure
                           ? Client::bootstrap_secure(user_.transfer(authenticator_.display_seed()), p, h)
                           : Client::bootstrap_insecure(LeafFile::parse(authenticator_.export_leaves().serialize()),
                                                        p, h);
    if (tamper_.forged_root_seed)
        candidate = Client::bootstrap_secure(*tamper_.forged_root_seed, p, h);

    DeployCall call = candidate.build_deploy(wallet_.public_key());
    // The wallet shows R' and S^ID = h(PK_U || R') computed with its own key.
    Bytes id_input = wallet_.public_key();
    append(id_input, call.root.bytes());
    const Digest wallet_id = h(id_input);
    if (config_.bootstrap_mode == Mode::Insecure && user_.compares_displays &&
        call.root != authenticator_.display_root())
        throw ProtocolAbort("root on the wallet display differs from the authenticator display");

    if (tamper_.forged_pk)
        call.owner_pk = *tamper_.forged_pk;
    Bytes reported_input = call.owner_pk;
    append(reported_input, call.root.bytes());
    if (user_.compares_displays && h(reported_input) != wallet_id)
        throw ProtocolAbort("contract id reported by the client differs from the wallet display");

    const Receipt r = mine_until_included(submit_plain(call));
    if (!r.ok || !r.contract_id)
        throw ProtocolAbort("deployment reverted: " + r.error);
    contract_id_ = *r.contract_id;
    candidate.set_contract_id(contract_id_);
    candidate.set_confirmation_depth(config_.confirmation_depth);
    client_ = std::move(candidate);
}

Receipt Session::fund(std::uint64_t amount)
{
    return mine_until_included(submit_plain(FundCall{contract_id_, amount}));
}

TxRef Session::initiate(OpType type, const AccountId& addr, std::uint64_t param)
{
    const InitOpCall expected = client().build_init(type, addr, param);
    const InitOpCall built = client().build_init(type, tamper_.redirect_recipient.value_or(addr), param);
    return submit_signed(built, expected);
}

std::uint64_t Session::await_initiation(TxRef init_tx)
{
    const Receipt r = await_depth(init_tx);
    if (!r.ok || !r.op_id)
        throw ProtocolAbort("initiation reverted: " + r.error);
    init_txs_[*r.op_id] = init_tx;
    return *r.op_id;
}

TxRef Session::submit_confirmation(std::uint64_t op_id, std::optional<Digest> otp)
{
    RevealRecord record{op_id, 0};
    if (auto init = init_tx_of(op_id))
        record.init_depth = ledger_.confirmations(*init).value_or(0);
    const Digest value = otp ? *otp : user_.transfer(authenticator_.get_otp(op_id));
    const ConfirmOpCall call = client().build_confirm(op_id, value);
    reveals_.push_back(record);
    return submit_plain(call);
}

OperationOutcome Session::run_operation(OpType type, const AccountId& addr, std::uint64_t param)
{
    OperationOutcome out;
    out.init_tx = initiate(type, addr, param);
    out.op_id = await_initiation(out.init_tx);
    out.confirm_tx = submit_confirmation(out.op_id);
    const Receipt r = mine_until_included(out.confirm_tx);
    out.confirmed = r.ok;
    out.error = r.error;
    return out;
}

void Session::run_next_subtree()
{
    const std::uint64_t op_id = contract().state().next_op_id;
    const TreeParams& p = config_.params;
    if (!is_reserved_slot(p, op_id) || is_parent_boundary(p, op_id))
        throw ProtocolAbort("next subtree can only be introduced at the last slot of a subtree (nextOpID " +
                            std::to_string(op_id) + ")");
    const std::uint64_t target = client().current_subtree() + 1;
    const Digest otp = user_.transfer(authenticator_.get_otp(op_id));
    const Receipt r = mine_until_included(submit_plain(client().build_next_subtree(op_id, otp)));
    // Anyone who got hold of the OTP can only have installed the same, valid subtree.
    if (contract().current_subtree() != target)
        throw ProtocolAbort("next subtree was not installed: " + r.error);
    client().advance_subtree();
}

void Session::run_new_root(Mode mode)
{
    const TreeParams& p = config_.params;
    const std::uint64_t op_id = contract().state().next_op_id;
    if (!is_parent_boundary(p, op_id))
        throw ProtocolAbort("a new parent tree can only be introduced at the last slot (nextOpID " +
                            std::to_string(op_id) + ")");
    const Hasher h = hasher();
    const auto preview = authenticator_.new_parent_preview(op_id);

    Digest otp;
    std::vector<Digest> next_leaves;
    if (mode == Mode::Secure) {
        const Seed k = user_.transfer(authenticator_.display_seed());
        otp = otp_from_seed(h, k, client().generation(), op_id, p);
        next_leaves = generate_leaves(h, k, client().generation() + 1, p);
    } else {
        otp = user_.transfer(authenticator_.get_otp(op_id));
        const LeafFile file = LeafFile::parse(authenticator_.export_next_leaves().serialize());
        file.check_matches(p);
        next_leaves = file.leaves;
    }
    const NewRootStages stages = client().build_new_root_stages(op_id, otp, next_leaves);

    const TxRef t1 = submit_signed(stages.stage1, NewRootStage1Call{contract_id_, preview.root_and_otp});
    const Receipt r1 = await_depth(t1);
    if (!r1.ok)
        throw ProtocolAbort("stage 1 reverted: " + r1.error);
    const TxRef t2 = submit_signed(stages.stage2, NewRootStage2Call{contract_id_, preview.new_root});
    const Receipt r2 = await_depth(t2);
    if (!r2.ok)
        throw ProtocolAbort("stage 2 reverted: " + r2.error);

    const Receipt r3 = mine_until_included(submit_plain(stages.stage3));
    if (contract().state().root != preview.new_root)
        throw ProtocolAbort("new parent root was not installed: " + (r3.ok ? std::string("no match") : r3.error));
    authenticator_.advance_generation();
    client().install_generation(std::move(next_leaves));
}

} // namespace smartotps
