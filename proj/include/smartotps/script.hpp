#pragma once

#include "smartotps/ledger.hpp"
#include "smartotps/protocols.hpp"

#include <array>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace smartotps {

/// Line-oriented scenario scripts driving one honest wallet on a simulated ledger.
///
///   params S,N,P,NS,LS[,LEN_MAX]     rng-seed <n>       seed <hex>      wallet-seed <hex>
///   account <name> <balance>         depth <n>          display-limit <n>
///   bootstrap secure|insecure        fund <amount>
///   init <type> <addr> <param>       confirm <opID> [otp-hex]
///   op <type> <addr> <param>         subtree-next       root-rotate secure|insecure
///   otp <opID>                       last-resort        pay <from> <to> <amount>
///   mine [n]    advance-time <s>     fork <height>      mine-branch <id> [n]    reorg <id>
///   expect balance <account> <v> | expect wallet-balance <v> | expect next-op-id <v>
///   state       log
///
/// Setup lines must precede the first command touching the ledger.
class ScriptRunner {
public:
    ScriptRunner();

    /// Runs one line and returns what it prints. Errors propagate as the library exceptions.
    std::string execute(const std::string& line);
    /// Runs every line; messages of failures are prefixed with "line N: ".
    std::string run(std::istream& in);

    bool has_ledger() const noexcept { return ledger_ != nullptr; }
    Ledger& ledger();
    Session& session();
    bool bootstrapped() const noexcept { return session_ && session_->bootstrapped(); }
    const TreeParams& params() const noexcept { return config_.params; }
    const Seed& seed() const noexcept { return k_; }

private:
    void require_setup_phase(const std::string& command) const;
    void ensure_ledger();
    std::string expect(const std::vector<std::string>& args);

    SessionConfig config_;
    Seed k_;
    std::array<std::uint8_t, 32> wallet_seed_{};
    std::map<AccountId, std::uint64_t> accounts_;
    std::unique_ptr<Ledger> ledger_;
    std::unique_ptr<Session> session_;
};

} // namespace smartotps
