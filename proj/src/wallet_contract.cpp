#include "smartotps/wallet_contract.hpp"

#include "smartotps/errors.hpp"
#include "smartotps/signature.hpp"

#include <sstream>

namespace smartotps {

namespace {

constexpr std::uint64_t kSecondsPerDay = 86400;

void require(bool condition, const std::string& what)
{
    if (!condition)
        throw ContractRevert(what);
}

std::string hex_list(const std::vector<Digest>& list)
{
    std::string out;
    for (const auto& d : list)
        out += (out.empty() ? "" : ",") + d.hex();
    return out;
}

} // namespace

std::string WalletState::canonical() const
{
    std::ostringstream out;
    out << "root=" << root.hex() << "\nowner_pk=" << to_hex(owner_pk) << "\nowner=" << owner
        << "\ncontract_id=" << contract_id.hex() << "\nnext_op_id=" << next_op_id
        << "\nsublayer=" << current_sublayer.subtree_index << ':' << hex_list(current_sublayer.nodes)
        << "\ncurrent_layer=" << current_layer << "\nl1=" << hex_list(l1) << "\nl2=" << hex_list(l2)
        << "\nbalance=" << balance << "\ndaily_limit=" << daily_limit << "\nspent_today=" << spent_today
        << "\nday_index=" << day_index << "\nlast_resort_addr=" << last_resort_addr
        << "\nlast_resort_timeout=" << last_resort_timeout << "\nlast_activity=" << last_activity
        << "\ndestroyed=" << destroyed << '\n';
    for (const auto& [id, op] : operations)
        out << "op " << id << ' ' << op_type_name(op.type) << ' ' << op.addr << ' ' << op.param << ' '
            << (op.pending ? "pending" : "done") << '\n';
    return out.str();
}

template <class Fn>
void WalletContract::transact(Fn&& fn)
{
    WalletState next = state_;
    fn(next);
    state_ = std::move(next);
}

void WalletContract::require_alive() const
{
    require(!state_.destroyed, "wallet has been sent to its last resort address");
}

void WalletContract::require_owner_signature(const CallContext& ctx, CallMeter& meter) const
{
    require(ctx.signature.has_value(), "missing owner signature");
    ++meter.sig_verify;
    require(verify_signature(state_.owner_pk, ctx.signing_bytes, *ctx.signature), "invalid owner signature");
}

void WalletContract::check_subtree_position(const Hasher& h, const std::vector<Digest>& sublayer,
                                            const MerkleProof& pi_sr, std::uint64_t delta, const Digest& root) const
{
    require(sublayer.size() == (std::uint64_t{1} << params_.LS), "cached sublayer must hold 2^L_S nodes");
    const int depth = params_.H() - params_.HS();
    require(pi_sr.size() == static_cast<std::size_t>(depth), "subtree root proof has the wrong length");
    require(derive_idx(pi_sr) == parity_word(delta, depth),
            "subtree root proof is not for subtree " + std::to_string(delta));
    require(subtree_consistency(h, reduce_mt(h, sublayer), pi_sr, root), "cached sublayer is inconsistent with R");
}

void WalletContract::verify_cached_otp(const Hasher& h, const Digest& otp, const MerkleProof& proof,
                                       std::uint64_t op_id, CallMeter& meter) const
{
    require(otp.size() == static_cast<std::size_t>(params_.S / 8), "OTP has the wrong size");
    Digest node;
    try {
        node = derive_node_in_cache(h, otp, proof, op_id, params_);
    } catch (const ProofError& e) {
        throw ContractRevert(e.what());
    }
    const auto idx = cached_node_index(op_id % params_.subtree_leaves(), params_);
    ++meter.storage_read;
    require(node == state_.current_sublayer.nodes.at(idx), "OTP does not verify for operation " +
                                                               std::to_string(op_id));
}

WalletContract WalletContract::deploy(const DeployCall& call, const CallContext& ctx, const Hasher& hasher,
                                      CallMeter& meter, CallEffects& effects)
{
    try {
        call.params.validate();
    } catch (const DomainError& e) {
        throw ContractRevert(e.what());
    }
    require(hasher.bits() == call.params.S, "hash size does not match S");
    require(call.root.size() == static_cast<std::size_t>(call.params.S / 8), "root has the wrong size");
    WalletContract c(call.params, hasher);
    const Hasher h = hasher.counting(meter.hashes);
    c.check_subtree_position(h, call.sublayer, call.pi_sr, 0, call.root);

    Bytes id_input = call.owner_pk;
    append(id_input, call.root.bytes());
    c.state_.root = call.root;
    c.state_.owner_pk = call.owner_pk;
    c.state_.owner = ctx.sender;
    c.state_.contract_id = h(id_input);
    c.state_.current_sublayer = SubtreeLayer{call.sublayer, 0};
    c.state_.current_layer = 1;
    c.state_.last_activity = ctx.timestamp;
    meter.storage_new += storage_layout::kDeployScalarWords + call.sublayer.size();
    effects.events.push_back("Deployed(" + c.state_.contract_id.hex() + ")");
    return c;
}

void WalletContract::fund(std::uint64_t amount, CallMeter& meter, CallEffects& effects)
{
    require_alive();
    transact([&](WalletState& s) {
        ++meter.storage_read;
        ++meter.storage_update;
        s.balance += amount;
    });
    effects.events.push_back("Funded(" + std::to_string(amount) + ")");
}

void WalletContract::init_op(const InitOpCall& call, const CallContext& ctx, CallMeter& meter, CallEffects& effects)
{
    require_alive();
    require_owner_signature(ctx, meter);
    transact([&](WalletState& s) {
        ++meter.storage_read;
        require(!is_reserved_slot(params_, s.next_op_id),
                "slot " + std::to_string(s.next_op_id) + " is reserved for the next subtree or root");
        if (call.type == OpType::SetLastResortAddress)
            require(call.addr != s.owner, "last resort address must differ from the owner");
        const std::uint64_t id = s.next_op_id;
        s.operations[id] = OperationRecord{call.addr, call.param, true, call.type};
        ++s.next_op_id;
        meter.storage_new += storage_layout::kOperationWords;
        ++meter.storage_update;
        effects.op_id = id;
        effects.events.push_back("InitOp(" + std::to_string(id) + ")");
    });
}

void WalletContract::confirm_op(const ConfirmOpCall& call, const CallContext& ctx, CallMeter& meter,
                                CallEffects& effects)
{
    require_alive();
    transact([&](WalletState& s) {
        meter.storage_read += storage_layout::kOperationWords;
        auto it = s.operations.find(call.op_id);
        require(it != s.operations.end(), "operation " + std::to_string(call.op_id) + " does not exist");
        require(it->second.pending, "operation " + std::to_string(call.op_id) + " is not pending");
        ++meter.storage_read;
        require(call.op_id / params_.NS == s.next_op_id / params_.NS,
                "operation " + std::to_string(call.op_id) + " belongs to a retired subtree");
        ++meter.storage_read;
        const std::uint32_t layer = layer_of(params_, call.op_id);
        require(layer >= s.current_layer, "operation " + std::to_string(call.op_id) + " is in iteration layer " +
                                              std::to_string(layer) + ", window is at " +
                                              std::to_string(s.current_layer));
        verify_cached_otp(hasher_.counting(meter.hashes), call.otp, call.proof, call.op_id, meter);

        OperationRecord& op = it->second;
        switch (op.type) {
        case OpType::Transfer: {
            ++meter.storage_read;
            require(op.param <= s.balance, "transfer exceeds wallet balance");
            ++meter.storage_read;
            if (s.daily_limit > 0) {
                meter.storage_read += 2;
                const std::uint64_t day = ctx.timestamp / kSecondsPerDay;
                const std::uint64_t spent = day == s.day_index ? s.spent_today : 0;
                require(spent + op.param <= s.daily_limit, "transfer exceeds the daily limit");
                s.spent_today = spent + op.param;
                s.day_index = day;
                meter.storage_update += 2;
            }
            s.balance -= op.param;
            ++meter.storage_update;
            effects.credits.emplace_back(op.addr, op.param);
            break;
        }
        case OpType::SetDailyLimit:
            s.daily_limit = op.param;
            ++meter.storage_update;
            break;
        case OpType::SetLastResortTimeout:
            s.last_resort_timeout = op.param;
            ++meter.storage_update;
            break;
        case OpType::SetLastResortAddress:
            s.last_resort_addr = op.addr;
            ++meter.storage_update;
            break;
        }
        op.pending = false;
        s.current_layer = layer;
        s.last_activity = ctx.timestamp;
        meter.storage_update += 3;
        effects.events.push_back("ConfirmOp(" + std::to_string(call.op_id) + ")");
    });
}

void WalletContract::next_subtree(const NextSubtreeCall& call, const CallContext&, CallMeter& meter,
                                  CallEffects& effects)
{
    require_alive();
    transact([&](WalletState& s) {
        ++meter.storage_read;
        const std::uint64_t op_id = s.next_op_id;
        require(!is_parent_boundary(params_, op_id), "slot " + std::to_string(op_id) + " closes the parent tree");
        require(is_reserved_slot(params_, op_id), "slot " + std::to_string(op_id) + " does not end a subtree");
        require(call.sublayer.size() == s.current_sublayer.nodes.size(), "sublayer lengths differ");
        require(call.otp.size() == static_cast<std::size_t>(params_.S / 8), "OTP has the wrong size");
        const Hasher h = hasher_.counting(meter.hashes);
        ++meter.storage_read;
        try {
            require(derive_root_hash(h, call.otp, call.pi_otp, op_id, params_) == s.root,
                    "OTP does not verify against R");
        } catch (const ProofError& e) {
            throw ContractRevert(e.what());
        }
        const std::uint64_t next_delta = subtree_of(params_, op_id) + 1;
        check_subtree_position(h, call.sublayer, call.pi_sr, next_delta, s.root);
        s.current_sublayer = SubtreeLayer{call.sublayer, next_delta};
        ++s.next_op_id;
        s.current_layer = 1;
        meter.storage_update += call.sublayer.size() + 2;
        effects.events.push_back("NewSubtree(" + std::to_string(next_delta) + ")");
    });
}

void WalletContract::new_root_stage1(const NewRootStage1Call& call, const CallContext& ctx, CallMeter& meter,
                                     CallEffects& effects)
{
    require_alive();
    require_owner_signature(ctx, meter);
    transact([&](WalletState& s) {
        ++meter.storage_read;
        require(is_parent_boundary(params_, s.next_op_id), "not at the end of the parent tree");
        s.l1.push_back(call.root_and_otp);
        ++meter.storage_new;
        effects.events.push_back("NewRootHash1(" + call.root_and_otp.hex() + ")");
    });
}

void WalletContract::new_root_stage2(const NewRootStage2Call& call, const CallContext& ctx, CallMeter& meter,
                                     CallEffects& effects)
{
    require_alive();
    require_owner_signature(ctx, meter);
    transact([&](WalletState& s) {
        ++meter.storage_read;
        require(is_parent_boundary(params_, s.next_op_id), "not at the end of the parent tree");
        s.l2.push_back(call.new_root);
        ++meter.storage_new;
        effects.events.push_back("NewRootHash2(" + call.new_root.hex() + ")");
    });
}

void WalletContract::new_root_stage3(const NewRootStage3Call& call, const CallContext&, CallMeter& meter,
                                     CallEffects& effects)
{
    require_alive();
    transact([&](WalletState& s) {
        ++meter.storage_read;
        const std::uint64_t op_id = s.next_op_id;
        require(is_parent_boundary(params_, op_id), "not at the end of the parent tree");
        const Hasher h = hasher_.counting(meter.hashes);
        verify_cached_otp(h, call.otp, call.proof, op_id, meter);

        meter.storage_read += 2;
        if (s.l1.size() > params_.len_max || s.l2.size() > params_.len_max) {
            meter.storage_update += 2;
            s.l1.clear();
            s.l2.clear();
            effects.events.push_back("NewRootListsCleared");
            return;
        }
        for (const auto& candidate : s.l2) {
            ++meter.storage_read;
            const Digest bound = hash_pair(h, candidate, call.otp);
            for (const auto& entry : s.l1) {
                ++meter.storage_read;
                if (bound != entry)
                    continue;
                check_subtree_position(h, call.sublayer, call.pi_sr, 0, candidate);
                s.root = candidate;
                s.current_sublayer = SubtreeLayer{call.sublayer, 0};
                s.l1.clear();
                s.l2.clear();
                ++s.next_op_id;
                s.current_layer = 1;
                meter.storage_update += call.sublayer.size() + 5;
                effects.events.push_back("NewRootHash3(" + call.otp.hex() + ")");
                return;
            }
        }
        effects.events.push_back("NewRootNoMatch");
    });
}

void WalletContract::send_to_last_resort(const CallContext& ctx, CallMeter& meter, CallEffects& effects)
{
    require_alive();
    transact([&](WalletState& s) {
        meter.storage_read += 3;
        require(s.last_resort_timeout > 0, "no last resort timeout configured");
        require(!s.last_resort_addr.empty(), "no last resort address configured");
        require(ctx.timestamp > s.last_activity && ctx.timestamp - s.last_activity > s.last_resort_timeout,
                "last resort timeout has not elapsed");
        effects.credits.emplace_back(s.last_resort_addr, s.balance);
        s.balance = 0;
        s.destroyed = true;
        meter.storage_update += 2;
        effects.events.push_back("SentToLastResort(" + s.last_resort_addr + ")");
    });
}

} // namespace smartotps
