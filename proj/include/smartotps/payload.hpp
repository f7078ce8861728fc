#pragma once

#include "smartotps/digest.hpp"
#include "smartotps/merkle.hpp"
#include "smartotps/params.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace smartotps {

using AccountId = std::string;

enum class OpType { Transfer, SetDailyLimit, SetLastResortTimeout, SetLastResortAddress };

std::string_view op_type_name(OpType t);  ///< TRANSFER, SET_DAILY_LIMIT, ...
OpType parse_op_type(std::string_view name);  ///< accepts the canonical names and the CLI aliases

struct DeployCall {
    TreeParams params;
    Digest root;
    Bytes owner_pk;
    std::vector<Digest> sublayer;
    MerkleProof pi_sr;
    bool operator==(const DeployCall&) const = default;
};

/// Moves `amount` from the sender's account into the wallet.
struct FundCall {
    Digest contract;
    std::uint64_t amount = 0;
    bool operator==(const FundCall&) const = default;
};

struct InitOpCall {
    Digest contract;
    OpType type = OpType::Transfer;
    AccountId addr;
    std::uint64_t param = 0;
    bool operator==(const InitOpCall&) const = default;
};

struct ConfirmOpCall {
    Digest contract;
    std::uint64_t op_id = 0;
    Digest otp;
    MerkleProof proof;
    bool operator==(const ConfirmOpCall&) const = default;
};

struct NextSubtreeCall {
    Digest contract;
    std::vector<Digest> sublayer;
    Digest otp;
    MerkleProof pi_otp;
    MerkleProof pi_sr;
    bool operator==(const NextSubtreeCall&) const = default;
};

struct NewRootStage1Call {
    Digest contract;
    Digest root_and_otp;
    bool operator==(const NewRootStage1Call&) const = default;
};

struct NewRootStage2Call {
    Digest contract;
    Digest new_root;
    bool operator==(const NewRootStage2Call&) const = default;
};

struct NewRootStage3Call {
    Digest contract;
    Digest otp;
    MerkleProof proof;
    std::vector<Digest> sublayer;
    MerkleProof pi_sr;
    bool operator==(const NewRootStage3Call&) const = default;
};

struct LastResortCall {
    Digest contract;
    bool operator==(const LastResortCall&) const = default;
};

/// Plain account-to-account transfer.
struct PayCall {
    AccountId to;
    std::uint64_t amount = 0;
    bool operator==(const PayCall&) const = default;
};

using Call = std::variant<DeployCall, FundCall, InitOpCall, ConfirmOpCall, NextSubtreeCall, NewRootStage1Call,
                          NewRootStage2Call, NewRootStage3Call, LastResortCall, PayCall>;

std::string_view function_name(const Call& call);

/// Canonical line-oriented key=value form; the first line is fn=<name>.
std::string encode_call(const Call& call);
Call decode_call(std::string_view text);

/// Calldata size used for metering: digests count S/8 bytes, integers,
/// addresses, keys and enum tags a 32-byte word each.
std::uint64_t payload_bytes(const Call& call);

struct Transaction {
    AccountId sender;
    std::uint64_t nonce = 0;
    std::uint64_t fee = 0;
    Call call;
    std::optional<Bytes> signature;

    /// Bytes covered by the signature: sender, nonce, fee and the encoded call.
    Bytes signing_bytes() const;
    std::string encode() const;
    static Transaction decode(std::string_view text);
    bool operator==(const Transaction&) const = default;
};

} // namespace smartotps
