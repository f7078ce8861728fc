#include "smartotps/payload.hpp"

#include "smartotps/errors.hpp"

#include <map>
#include <sstream>

namespace smartotps {

namespace {

constexpr std::uint64_t kWord = 32;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join_digests(const std::vector<Digest>& list)
{
    std::string out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i)
            out += ',';
        out += list[i].hex();
    }
    return out;
}

std::string params_csv(const TreeParams& p)
{
    return std::to_string(p.S) + ',' + std::to_string(p.N) + ',' + std::to_string(p.P) + ',' + std::to_string(p.NS) +
           ',' + std::to_string(p.LS) + ',' + std::to_string(p.len_max);
}

class Fields {
public:
    explicit Fields(std::string_view text)
    {
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError("payload line '" + line + "' is not key=value");
            auto key = line.substr(0, eq);
            if (values_.count(key))
                throw ParseError("duplicate payload key '" + key + "'");
            values_[key] = line.substr(eq + 1);
        }
    }

    const std::string& text(const std::string& key) const
    {
        auto it = values_.find(key);
        if (it == values_.end())
            throw ParseError("payload lacks '" + key + "'");
        return it->second;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::uint64_t number(const std::string& key) const
    {
        const auto& v = text(key);
        if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("payload field '" + key + "' is not a non-negative integer");
        try {
            return std::stoull(v);
        } catch (const std::out_of_range&) {
            throw ParseError("payload field '" + key + "' overflows");
        }
    }

    Digest digest(const std::string& key) const { return Digest::from_hex(text(key)); }

    std::vector<Digest> digests(const std::string& key) const
    {
        std::vector<Digest> out;
        std::stringstream in(text(key));
        std::string item;
        while (std::getline(in, item, ','))
            out.push_back(Digest::from_hex(item));
        return out;
    }

    MerkleProof proof(const std::string& key) const { return MerkleProof{digests(key)}; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace

std::string_view op_type_name(OpType t)
{
    switch (t) {
    case OpType::Transfer: return "TRANSFER";
    case OpType::SetDailyLimit: return "SET_DAILY_LIMIT";
    case OpType::SetLastResortTimeout: return "SET_LAST_RESORT_TIMEOUT";
    case OpType::SetLastResortAddress: return "SET_LAST_RESORT_ADDRESS";
    }
    return "?";
}

OpType parse_op_type(std::string_view name)
{
    if (name == "TRANSFER" || name == "transfer")
        return OpType::Transfer;
    if (name == "SET_DAILY_LIMIT" || name == "daily-limit")
        return OpType::SetDailyLimit;
    if (name == "SET_LAST_RESORT_TIMEOUT" || name == "lr-timeout")
        return OpType::SetLastResortTimeout;
    if (name == "SET_LAST_RESORT_ADDRESS" || name == "lr-address")
        return OpType::SetLastResortAddress;
    throw ParseError("unknown operation type '" + std::string(name) + "'");
}

std::string_view function_name(const Call& call)
{
    return std::visit(overloaded{
                          [](const DeployCall&) { return std::string_view("deploy"); },
                          [](const FundCall&) { return std::string_view("fund"); },
                          [](const InitOpCall&) { return std::string_view("init_op"); },
                          [](const ConfirmOpCall&) { return std::string_view("confirm_op"); },
                          [](const NextSubtreeCall&) { return std::string_view("next_subtree"); },
                          [](const NewRootStage1Call&) { return std::string_view("new_root_stage1"); },
                          [](const NewRootStage2Call&) { return std::string_view("new_root_stage2"); },
                          [](const NewRootStage3Call&) { return std::string_view("new_root_stage3"); },
                          [](const LastResortCall&) { return std::string_view("send_to_last_resort"); },
                          [](const PayCall&) { return std::string_view("pay"); },
                      },
                      call);
}

std::string encode_call(const Call& call)
{
    std::ostringstream out;
    out << "fn=" << function_name(call) << '\n';
    std::visit(overloaded{
                   [&](const DeployCall& c) {
                       out << "params=" << params_csv(c.params) << '\n'
                           << "root=" << c.root.hex() << '\n'
                           << "owner_pk=" << to_hex(c.owner_pk) << '\n'
                           << "sublayer=" << join_digests(c.sublayer) << '\n'
                           << "pi_sr=" << join_digests(c.pi_sr.siblings) << '\n';
                   },
                   [&](const FundCall& c) {
                       out << "contract=" << c.contract.hex() << '\n' << "amount=" << c.amount << '\n';
                   },
                   [&](const InitOpCall& c) {
                       out << "contract=" << c.contract.hex() << '\n'
                           << "type=" << op_type_name(c.type) << '\n'
                           << "addr=" << c.addr << '\n'
                           << "param=" << c.param << '\n';
                   },
                   [&](const ConfirmOpCall& c) {
                       out << "contract=" << c.contract.hex() << '\n'
                           << "op_id=" << c.op_id << '\n'
                           << "otp=" << c.otp.hex() << '\n'
                           << "proof=" << join_digests(c.proof.siblings) << '\n';
                   },
                   [&](const NextSubtreeCall& c) {
                       out << "contract=" << c.contract.hex() << '\n'
                           << "sublayer=" << join_digests(c.sublayer) << '\n'
                           << "otp=" << c.otp.hex() << '\n'
                           << "pi_otp=" << join_digests(c.pi_otp.siblings) << '\n'
                           << "pi_sr=" << join_digests(c.pi_sr.siblings) << '\n';
                   },
                   [&](const NewRootStage1Call& c) {
                       out << "contract=" << c.contract.hex() << '\n'
                           << "root_and_otp=" << c.root_and_otp.hex() << '\n';
                   },
                   [&](const NewRootStage2Call& c) {
                       out << "contract=" << c.contract.hex() << '\n' << "new_root=" << c.new_root.hex() << '\n';
                   },
                   [&](const NewRootStage3Call& c) {
                       out << "contract=" << c.contract.hex() << '\n'
                           << "otp=" << c.otp.hex() << '\n'
                           << "proof=" << join_digests(c.proof.siblings) << '\n'
                           << "sublayer=" << join_digests(c.sublayer) << '\n'
                           << "pi_sr=" << join_digests(c.pi_sr.siblings) << '\n';
                   },
                   [&](const LastResortCall& c) { out << "contract=" << c.contract.hex() << '\n'; },
                   [&](const PayCall& c) { out << "to=" << c.to << '\n' << "amount=" << c.amount << '\n'; },
               },
               call);
    return out.str();
}

Call decode_call(std::string_view text)
{
    const Fields f(text);
    const auto& fn = f.text("fn");
    if (fn == "deploy") {
        DeployCall c;
        c.params = TreeParams::parse_csv(f.text("params"));
        c.root = f.digest("root");
        c.owner_pk = from_hex(f.text("owner_pk"));
        c.sublayer = f.digests("sublayer");
        c.pi_sr = f.proof("pi_sr");
        return c;
    }
    if (fn == "fund")
        return FundCall{f.digest("contract"), f.number("amount")};
    if (fn == "init_op")
        return InitOpCall{f.digest("contract"), parse_op_type(f.text("type")), f.text("addr"), f.number("param")};
    if (fn == "confirm_op")
        return ConfirmOpCall{f.digest("contract"), f.number("op_id"), f.digest("otp"), f.proof("proof")};
    if (fn == "next_subtree")
        return NextSubtreeCall{f.digest("contract"), f.digests("sublayer"), f.digest("otp"), f.proof("pi_otp"),
                               f.proof("pi_sr")};
    if (fn == "new_root_stage1")
        return NewRootStage1Call{f.digest("contract"), f.digest("root_and_otp")};
    if (fn == "new_root_stage2")
        return NewRootStage2Call{f.digest("contract"), f.digest("new_root")};
    if (fn == "new_root_stage3")
        return NewRootStage3Call{f.digest("contract"), f.digest("otp"), f.proof("proof"), f.digests("sublayer"),
                                 f.proof("pi_sr")};
    if (fn == "send_to_last_resort")
        return LastResortCall{f.digest("contract")};
    if (fn == "pay")
        return PayCall{f.text("to"), f.number("amount")};
    throw ParseError("unknown function '" + fn + "'");
}

std::uint64_t payload_bytes(const Call& call)
{
    auto digests = [](const std::vector<Digest>& list) {
        std::uint64_t n = 0;
        for (const auto& d : list)
            n += d.size();
        return n;
    };
    return std::visit(overloaded{
                          [&](const DeployCall& c) {
                              return 5 * kWord + c.root.size() + kWord + digests(c.sublayer) +
                                     digests(c.pi_sr.siblings);
                          },
                          [&](const FundCall& c) { return c.contract.size() + kWord; },
                          [&](const InitOpCall& c) { return c.contract.size() + 3 * kWord; },
                          [&](const ConfirmOpCall& c) {
                              return c.contract.size() + kWord + c.otp.size() + digests(c.proof.siblings);
                          },
                          [&](const NextSubtreeCall& c) {
                              return c.contract.size() + digests(c.sublayer) + c.otp.size() +
                                     digests(c.pi_otp.siblings) + digests(c.pi_sr.siblings);
                          },
                          [&](const NewRootStage1Call& c) { return c.contract.size() + c.root_and_otp.size(); },
                          [&](const NewRootStage2Call& c) { return c.contract.size() + c.new_root.size(); },
                          [&](const NewRootStage3Call& c) {
                              return c.contract.size() + c.otp.size() + digests(c.proof.siblings) +
                                     digests(c.sublayer) + digests(c.pi_sr.siblings);
                          },
                          [&](const LastResortCall& c) { return static_cast<std::uint64_t>(c.contract.size()); },
                          [&](const PayCall&) { return 2 * kWord; },
                      },
                      call);
}

Bytes Transaction::signing_bytes() const
{
    Bytes out;
    append(out, std::string_view("smartotps-tx\n"));
    append(out, "sender=" + sender + "\nnonce=" + std::to_string(nonce) + "\nfee=" + std::to_string(fee) + "\n");
    append(out, encode_call(call));
    return out;
}

std::string Transaction::encode() const
{
    std::string out = "sender=" + sender + "\nnonce=" + std::to_string(nonce) + "\nfee=" + std::to_string(fee) + "\n";
    if (signature)
        out += "signature=" + to_hex(*signature) + "\n";
    out += encode_call(call);
    return out;
}

Transaction Transaction::decode(std::string_view text)
{
    const auto fn_at = text.find("fn=");
    if (fn_at == std::string_view::npos || (fn_at != 0 && text[fn_at - 1] != '\n'))
        throw ParseError("transaction lacks fn=");
    const Fields header(text.substr(0, fn_at));
    Transaction tx;
    tx.sender = header.text("sender");
    tx.nonce = header.number("nonce");
    tx.fee = header.number("fee");
    if (header.has("signature"))
        tx.signature = from_hex(header.text("signature"));
    tx.call = decode_call(text.substr(fn_at));
    return tx;
}

} // namespace smartotps
