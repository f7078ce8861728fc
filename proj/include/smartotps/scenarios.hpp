#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace smartotps {

struct ScenarioCheck {
    std::string description;
    bool passed = false;
};

struct ScenarioResult {
    std::string name;
    std::vector<ScenarioCheck> checks;
    std::string state_hash;  ///< hash of the final world state of the main run
    std::vector<std::string> event_log;  ///< ledger event log of the main run

    bool passed() const;
    /// "ok   <check>" / "FAIL <check>" lines followed by "result=pass|fail".
    std::string report() const;
};

/// theorem1 ... theorem6, depletion, dos-pending, fork-replay.
const std::vector<std::string>& scenario_names();

/// Runs a built-in adversary scenario. Every key and seed is drawn from `seed`.
/// Throws DomainError for an unknown name.
ScenarioResult run_scenario(std::string_view name, std::uint64_t seed = 1);

} // namespace smartotps
