#pragma once

#include "smartotps/authenticator.hpp"
#include "smartotps/client.hpp"
#include "smartotps/ledger.hpp"
#include "smartotps/mnemonic.hpp"
#include "smartotps/signature.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smartotps {

enum class Mode { Secure, Insecure };
std::string_view mode_name(Mode m);
Mode parse_mode(std::string_view text);

/// Signing device with a display. Signs only after the confirm callback
/// accepted what the screen showed. A non-zero display limit truncates the
/// screen to that many bytes.
class HardwareWallet {
public:
    using Confirm = std::function<bool(const std::string& shown)>;

    explicit HardwareWallet(SigningKey key, std::size_t display_limit = 0);

    const Bytes& public_key() const noexcept { return key_.public_key(); }
    std::size_t display_limit() const noexcept { return display_limit_; }
    void set_display_limit(std::size_t limit) { display_limit_ = limit; }

    std::string render(const Call& call) const;
    /// Returns false, leaving tx unsigned, when the user declines.
    bool sign(Transaction& tx, const Confirm& confirm);
    std::uint64_t signatures_made() const noexcept { return signatures_; }

    /// Attack hook: the key material an adversary obtains by stealing SK_U.
    const SigningKey& leak_key() const noexcept { return key_; }

private:
    SigningKey key_;
    std::size_t display_limit_;
    std::uint64_t signatures_ = 0;
};

/// The human in the loop.
struct UserModel {
    bool compares_displays = true;
    /// Air-gapped values travel as mnemonic words when the size allows it.
    bool route_mnemonic = true;

    /// Accepts when the screen shows a prefix of what the user expects.
    bool approve(const std::string& expected, const std::string& shown) const;
    Digest transfer(const Digest& value) const;
    Seed transfer(const Seed& value) const;
};

/// Malicious client behaviour injected by attack scenarios.
struct ClientTamper {
    std::optional<AccountId> redirect_recipient;
    std::optional<Seed> forged_root_seed;  ///< deploy a tree built from the attacker's seed
    std::optional<Bytes> forged_pk;        ///< swap PK_U after the wallet showed the deployment
};

struct SessionConfig {
    TreeParams params;
    Mode bootstrap_mode = Mode::Secure;
    AccountId account = "user";
    std::uint32_t confirmation_depth = Client::kDefaultConfirmationDepth;
    std::uint64_t fee = 1;
    std::size_t display_limit = 0;
    bool route_mnemonic = true;
};

struct OperationOutcome {
    std::uint64_t op_id = 0;
    TxRef init_tx = 0;
    TxRef confirm_tx = 0;
    bool confirmed = false;
    std::string error;
};

/// Depth of the initiation transaction at the moment an OTP was revealed.
struct RevealRecord {
    std::uint64_t op_id = 0;
    std::uint64_t init_depth = 0;
};

/// One user's wallet: authenticator, client, hardware wallet and user model
/// wired to a ledger. Every wait mines blocks on that ledger.
class Session {
public:
    Session(Ledger& ledger, const SessionConfig& config, const Seed& k,
            const std::array<std::uint8_t, 32>& wallet_seed);

    /// Bootstraps in the configured mode. Throws ProtocolAbort when the user's comparison fails.
    void bootstrap();
    Receipt fund(std::uint64_t amount);

    /// Operation stage 1: builds, shows and signs initOp, then submits it.
    TxRef initiate(OpType type, const AccountId& addr, std::uint64_t param);
    /// Mines until the initiation is confirmation_depth deep; returns its opID.
    std::uint64_t await_initiation(TxRef init_tx);
    /// Operation stage 2: reveals OTP_opID (or the supplied one) in a confirm transaction.
    TxRef submit_confirmation(std::uint64_t op_id, std::optional<Digest> otp = std::nullopt);
    /// Mines until tx is on the canonical chain and returns its receipt.
    Receipt mine_until_included(TxRef tx);
    OperationOutcome run_operation(OpType type, const AccountId& addr, std::uint64_t param);

    void run_next_subtree();
    void run_new_root(Mode mode);

    Ledger& ledger() noexcept { return ledger_; }
    Authenticator& authenticator() noexcept { return authenticator_; }
    Client& client();
    const Client& client() const;
    HardwareWallet& wallet() noexcept { return wallet_; }
    UserModel& user() noexcept { return user_; }
    ClientTamper& tamper() noexcept { return tamper_; }
    const SessionConfig& config() const noexcept { return config_; }
    const Digest& contract_id() const noexcept { return contract_id_; }
    const WalletContract& contract() const;
    bool bootstrapped() const noexcept { return client_.has_value(); }

    const std::vector<RevealRecord>& reveals() const noexcept { return reveals_; }
    std::uint64_t reorgs_detected() const noexcept { return reorgs_detected_; }
    std::optional<TxRef> init_tx_of(std::uint64_t op_id) const;

private:
    TxRef submit_signed(const Call& call, const Call& expected);
    TxRef submit_plain(const Call& call);
    Receipt await_depth(TxRef tx);
    Hasher hasher() const { return Hasher(config_.params.S, ledger_.config().hash); }

    Ledger& ledger_;
    SessionConfig config_;
    Authenticator authenticator_;
    HardwareWallet wallet_;
    UserModel user_;
    ClientTamper tamper_;
    std::optional<Client> client_;
    Digest contract_id_;
    std::map<std::uint64_t, TxRef> init_txs_;
    std::vector<RevealRecord> reveals_;
    std::uint64_t reorgs_detected_ = 0;
};

} // namespace smartotps
