#include "smartotps/ledger.hpp"

#include "smartotps/errors.hpp"
#include "smartotps/signature.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace smartotps {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string describe_receipt(const Receipt& r)
{
    std::ostringstream out;
    out << "tx=" << r.tx << " sender=" << r.sender << " fn=" << r.fn;
    if (r.ok) {
        out << " status=ok";
        if (r.op_id)
            out << " op_id=" << *r.op_id;
        if (!r.events.empty()) {
            out << " events=";
            for (std::size_t i = 0; i < r.events.size(); ++i)
                out << (i ? ";" : "") << r.events[i];
        }
    } else {
        out << " status=revert error=\"" << r.error << '"';
    }
    return out.str();
}

const Digest& target_contract(const Call& call)
{
    static const Digest none;
    return std::visit(overloaded{
                          [](const DeployCall&) -> const Digest& { return none; },
                          [](const PayCall&) -> const Digest& { return none; },
                          [](const auto& c) -> const Digest& { return c.contract; },
                      },
                      call);
}

} // namespace

std::uint64_t WorldState::total_supply() const
{
    std::uint64_t total = 0;
    for (const auto& [_, v] : accounts)
        total += v;
    for (const auto& [_, c] : contracts)
        total += c.state().balance;
    return total;
}

std::string WorldState::canonical() const
{
    std::ostringstream out;
    for (const auto& [a, v] : accounts)
        out << "account " << a << ' ' << v << '\n';
    for (const auto& [a, n] : next_nonce)
        out << "nonce " << a << ' ' << n << '\n';
    for (const auto& [id, c] : contracts)
        out << "contract " << id.hex() << '\n' << c.state().canonical();
    return out.str();
}

Ledger::Ledger(std::map<AccountId, std::uint64_t> genesis_balances)
    : Ledger(std::move(genesis_balances), Config{})
{
}

Ledger::Ledger(std::map<AccountId, std::uint64_t> genesis_balances, Config config) : config_(std::move(config))
{
    Block genesis;
    genesis.id = next_block_id_++;
    genesis.height = 0;
    genesis.timestamp = config_.genesis_timestamp;
    genesis.state.accounts = std::move(genesis_balances);
    canonical_.blocks.push_back(std::move(genesis));
}

TxRef Ledger::record(Transaction tx)
{
    txs_.push_back(std::move(tx));
    return txs_.size() - 1;
}

void Ledger::check_nonce(const Chain& chain, const Transaction& tx) const
{
    const auto& nonces = chain.blocks.back().state.next_nonce;
    auto it = nonces.find(tx.sender);
    const std::uint64_t expected = it == nonces.end() ? 0 : it->second;
    if (tx.nonce < expected)
        throw DomainError("nonce " + std::to_string(tx.nonce) + " of " + tx.sender + " was already used");
    for (TxRef ref : chain.mempool) {
        if (txs_[ref].sender == tx.sender && txs_[ref].nonce == tx.nonce)
            throw DomainError("nonce " + std::to_string(tx.nonce) + " of " + tx.sender + " is already queued");
    }
}

TxRef Ledger::submit(Transaction tx)
{
    check_nonce(canonical_, tx);
    const TxRef ref = record(std::move(tx));
    canonical_.mempool.push_back(ref);
    const Transaction& stored = txs_[ref];
    log_.push_back("submit tx=" + std::to_string(ref) + " sender=" + stored.sender +
                   " nonce=" + std::to_string(stored.nonce) + " fee=" + std::to_string(stored.fee) +
                   " fn=" + std::string(function_name(stored.call)));
    const Transaction seen = txs_[ref];
    const auto observers = observers_;
    for (const auto& observer : observers)
        observer(*this, ref, seen);
    return ref;
}

TxRef Ledger::submit_to_branch(BranchId id, Transaction tx)
{
    Chain& chain = branch(id);
    check_nonce(chain, tx);
    const TxRef ref = record(std::move(tx));
    chain.mempool.push_back(ref);
    log_.push_back("submit branch=" + std::to_string(id) + " tx=" + std::to_string(ref) +
                   " sender=" + txs_[ref].sender + " fn=" + std::string(function_name(txs_[ref].call)));
    return ref;
}

Receipt Ledger::execute(WorldState& world, TxRef ref, std::uint64_t timestamp) const
{
    const Transaction& tx = txs_[ref];
    Receipt r;
    r.tx = ref;
    r.sender = tx.sender;
    r.fn = std::string(function_name(tx.call));
    r.payload_bytes = payload_bytes(tx.call);
    r.signed_call = tx.signature.has_value();
    ++world.next_nonce[tx.sender];

    CallContext ctx{tx.sender, timestamp, tx.signing_bytes(), tx.signature};
    CallEffects effects;
    auto contract_for = [&](const Digest& id) -> WalletContract& {
        auto it = world.contracts.find(id);
        if (it == world.contracts.end())
            throw ContractRevert("no contract " + id.hex());
        return it->second;
    };
    auto debit = [&](std::uint64_t amount) {
        auto it = world.accounts.find(tx.sender);
        if (it == world.accounts.end() || it->second < amount)
            throw ContractRevert("insufficient balance in account " + tx.sender);
        it->second -= amount;
    };

    try {
        std::visit(overloaded{
                       [&](const DeployCall& c) {
                           Hasher h(c.params.S, config_.hash);
                           auto contract = WalletContract::deploy(c, ctx, h, r.meter, effects);
                           if (world.contracts.count(contract.id()))
                               throw ContractRevert("contract " + contract.id().hex() + " already exists");
                           r.contract_id = contract.id();
                           world.contracts.emplace(contract.id(), std::move(contract));
                       },
                       [&](const FundCall& c) {
                           auto& contract = contract_for(c.contract);
                           auto it = world.accounts.find(tx.sender);
                           if (it == world.accounts.end() || it->second < c.amount)
                               throw ContractRevert("insufficient balance in account " + tx.sender);
                           contract.fund(c.amount, r.meter, effects);
                           it->second -= c.amount;
                       },
                       [&](const InitOpCall& c) { contract_for(c.contract).init_op(c, ctx, r.meter, effects); },
                       [&](const ConfirmOpCall& c) { contract_for(c.contract).confirm_op(c, ctx, r.meter, effects); },
                       [&](const NextSubtreeCall& c) {
                           contract_for(c.contract).next_subtree(c, ctx, r.meter, effects);
                       },
                       [&](const NewRootStage1Call& c) {
                           contract_for(c.contract).new_root_stage1(c, ctx, r.meter, effects);
                       },
                       [&](const NewRootStage2Call& c) {
                           contract_for(c.contract).new_root_stage2(c, ctx, r.meter, effects);
                       },
                       [&](const NewRootStage3Call& c) {
                           contract_for(c.contract).new_root_stage3(c, ctx, r.meter, effects);
                       },
                       [&](const LastResortCall& c) {
                           contract_for(c.contract).send_to_last_resort(ctx, r.meter, effects);
                       },
                       [&](const PayCall& c) {
                           debit(c.amount);
                           effects.credits.emplace_back(c.to, c.amount);
                       },
                   },
                   tx.call);
        for (const auto& [to, amount] : effects.credits)
            world.accounts[to] += amount;
        r.ok = true;
        r.events = std::move(effects.events);
        r.op_id = effects.op_id;
    } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
    }
    return r;
}

const Block& Ledger::mine_on(Chain& chain, std::optional<std::uint64_t> delta, const std::string& tag)
{
    const Block& parent = chain.blocks.back();
    Block b;
    b.id = next_block_id_++;
    b.height = parent.height + 1;
    b.timestamp = parent.timestamp + delta.value_or(config_.block_interval) + time_offset_;
    time_offset_ = 0;
    b.state = parent.state;

    std::vector<TxRef> remaining = chain.mempool;
    std::vector<std::string> lines;
    for (;;) {
        std::optional<std::size_t> best;
        std::vector<std::size_t> stale;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const Transaction& tx = txs_[remaining[i]];
            auto it = b.state.next_nonce.find(tx.sender);
            const std::uint64_t expected = it == b.state.next_nonce.end() ? 0 : it->second;
            if (tx.nonce < expected) {
                stale.push_back(i);
                continue;
            }
            if (tx.nonce != expected)
                continue;
            if (!best || tx.fee > txs_[remaining[*best]].fee ||
                (tx.fee == txs_[remaining[*best]].fee && remaining[i] < remaining[*best]))
                best = i;
        }
        for (auto it = stale.rbegin(); it != stale.rend(); ++it) {
            lines.push_back("drop tx=" + std::to_string(remaining[*it]) + " reason=stale-nonce");
            if (best && *best > *it)
                --*best;
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*it));
        }
        if (!best)
            break;
        const TxRef ref = remaining[*best];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*best));
        b.txs.push_back(ref);
        b.receipts.push_back(execute(b.state, ref, b.timestamp));
    }
    chain.mempool = std::move(remaining);

    log_.push_back("block" + tag + " height=" + std::to_string(b.height) + " ts=" + std::to_string(b.timestamp) +
                   " txs=" + std::to_string(b.txs.size()));
    for (auto& line : lines)
        log_.push_back(std::move(line));
    for (const auto& r : b.receipts)
        log_.push_back("  " + describe_receipt(r));
    chain.blocks.push_back(std::move(b));
    return chain.blocks.back();
}

const Block& Ledger::mine_block(std::optional<std::uint64_t> delta)
{
    const Block& b = mine_on(canonical_, delta, "");
    for (std::size_t i = 0; i < b.txs.size(); ++i)
        index_[b.txs[i]] = {b.height, i};
    const Block snapshot = b;
    const auto observers = block_observers_;
    for (const auto& observer : observers)
        observer(*this, snapshot);
    return head();
}

Ledger::Chain& Ledger::branch(BranchId id)
{
    auto it = branches_.find(id);
    if (it == branches_.end())
        throw DomainError("unknown branch " + std::to_string(id));
    return it->second;
}

const Ledger::Chain& Ledger::branch(BranchId id) const
{
    auto it = branches_.find(id);
    if (it == branches_.end())
        throw DomainError("unknown branch " + std::to_string(id));
    return it->second;
}

BranchId Ledger::fork(std::uint64_t from_height)
{
    if (from_height > head_height())
        throw DomainError("cannot fork above the head (" + std::to_string(head_height()) + ")");
    Chain chain;
    chain.blocks.assign(canonical_.blocks.begin(),
                        canonical_.blocks.begin() + static_cast<std::ptrdiff_t>(from_height + 1));
    const BranchId id = next_branch_++;
    branches_.emplace(id, std::move(chain));
    log_.push_back("fork branch=" + std::to_string(id) + " from=" + std::to_string(from_height));
    return id;
}

const Block& Ledger::mine_branch(BranchId id, std::optional<std::uint64_t> delta)
{
    return mine_on(branch(id), delta, " branch=" + std::to_string(id));
}

std::uint64_t Ledger::branch_height(BranchId id) const
{
    return branch(id).blocks.back().height;
}

void Ledger::reorg(BranchId id)
{
    Chain& incoming = branch(id);
    if (incoming.blocks.back().height <= head_height())
        throw DomainError("refusing reorg: branch " + std::to_string(id) + " is not longer than the canonical chain");

    std::size_t common = 0;
    while (common < canonical_.blocks.size() && common < incoming.blocks.size() &&
           canonical_.blocks[common].id == incoming.blocks[common].id)
        ++common;

    std::set<TxRef> on_branch;
    for (const auto& b : incoming.blocks)
        on_branch.insert(b.txs.begin(), b.txs.end());
    std::set<TxRef> pool;
    std::size_t orphaned = 0;
    for (std::size_t h = common; h < canonical_.blocks.size(); ++h) {
        for (TxRef ref : canonical_.blocks[h].txs) {
            if (!on_branch.count(ref)) {
                pool.insert(ref);
                ++orphaned;
            }
        }
    }
    for (TxRef ref : canonical_.mempool)
        if (!on_branch.count(ref))
            pool.insert(ref);
    for (TxRef ref : incoming.mempool)
        if (!on_branch.count(ref))
            pool.insert(ref);

    canonical_.blocks = std::move(incoming.blocks);
    canonical_.mempool.assign(pool.begin(), pool.end());
    branches_.erase(id);
    reindex();
    log_.push_back("reorg branch=" + std::to_string(id) + " head=" + std::to_string(head_height()) +
                   " orphaned=" + std::to_string(orphaned));
}

void Ledger::reindex()
{
    index_.clear();
    for (const auto& b : canonical_.blocks)
        for (std::size_t i = 0; i < b.txs.size(); ++i)
            index_[b.txs[i]] = {b.height, i};
}

const Block& Ledger::block(std::uint64_t height) const
{
    if (height > head_height())
        throw DomainError("no block at height " + std::to_string(height));
    return canonical_.blocks[height];
}

std::uint64_t Ledger::next_timestamp() const
{
    return head().timestamp + config_.block_interval + time_offset_;
}

std::optional<std::uint64_t> Ledger::confirmations(TxRef tx) const
{
    auto it = index_.find(tx);
    if (it == index_.end())
        return std::nullopt;
    return head_height() - it->second.first;
}

const Receipt* Ledger::receipt(TxRef tx) const
{
    auto it = index_.find(tx);
    if (it == index_.end())
        return nullptr;
    return &canonical_.blocks[it->second.first].receipts[it->second.second];
}

bool Ledger::pending(TxRef tx) const
{
    return std::find(canonical_.mempool.begin(), canonical_.mempool.end(), tx) != canonical_.mempool.end();
}

const Transaction& Ledger::transaction(TxRef tx) const
{
    if (tx >= txs_.size())
        throw DomainError("unknown transaction " + std::to_string(tx));
    return txs_[tx];
}

std::uint64_t Ledger::next_nonce(const AccountId& sender) const
{
    const auto& nonces = state().next_nonce;
    auto it = nonces.find(sender);
    std::uint64_t next = it == nonces.end() ? 0 : it->second;
    for (TxRef ref : canonical_.mempool)
        if (txs_[ref].sender == sender)
            next = std::max(next, txs_[ref].nonce + 1);
    return next;
}

const WalletContract* Ledger::contract(const Digest& id) const
{
    auto it = state().contracts.find(id);
    return it == state().contracts.end() ? nullptr : &it->second;
}

std::uint64_t Ledger::balance(const AccountId& account) const
{
    auto it = state().accounts.find(account);
    return it == state().accounts.end() ? 0 : it->second;
}

bool Ledger::audit_signatures() const
{
    for (const auto& b : canonical_.blocks) {
        for (std::size_t i = 0; i < b.txs.size(); ++i) {
            const Receipt& r = b.receipts[i];
            if (!r.ok || !(r.fn == "init_op" || r.fn == "new_root_stage1" || r.fn == "new_root_stage2"))
                continue;
            const Transaction& tx = txs_[b.txs[i]];
            auto it = b.state.contracts.find(target_contract(tx.call));
            if (it == b.state.contracts.end() || !tx.signature)
                return false;
            if (!verify_signature(it->second.state().owner_pk, tx.signing_bytes(), *tx.signature))
                return false;
        }
    }
    return true;
}

Digest Ledger::state_hash() const
{
    const Hasher h(256, config_.hash);
    std::string text = "height=" + std::to_string(head_height()) + "\nts=" + std::to_string(head().timestamp) +
                       "\n" + state().canonical();
    return h(ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

} // namespace smartotps
