#pragma once

#include "smartotps/ledger.hpp"
#include "smartotps/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace smartotps {

/// Unit prices of the metered primitives. The defaults are EVM-flavoured magnitudes.
struct CostTable {
    double hash_base = 36;
    double hash_word = 6;
    double storage_new = 20000;
    double storage_update = 5000;
    double storage_read = 200;
    double sig_verify = 3000;
    double tx_base = 21000;
    double payload_byte = 16;

    /// Throws DomainError on a negative price.
    void validate() const;
    /// Overrides defaults from "key=value,key=value" (keys as the field names).
    static CostTable parse(const std::string& text);
    std::string describe() const;
};

/// Primitive counts of one transaction.
struct PrimitiveCounts {
    std::uint64_t hash_calls = 0;
    std::uint64_t hash_words = 0;
    std::uint64_t storage_new = 0;
    std::uint64_t storage_update = 0;
    std::uint64_t storage_read = 0;
    std::uint64_t sig_verify = 0;
    std::uint64_t payload_bytes = 0;

    bool operator==(const PrimitiveCounts&) const = default;
};

PrimitiveCounts counts_of(const Receipt& receipt);
/// Sum of count x unit price plus the per-transaction base.
double call_cost(const PrimitiveCounts& counts, const CostTable& table);

// Closed forms of what the contract meters (daily limit unset).
PrimitiveCounts deploy_counts(const TreeParams& p);
PrimitiveCounts init_counts(const TreeParams& p);
PrimitiveCounts confirm_transfer_counts(const TreeParams& p, std::uint64_t op_id);
/// Mean chain + Merkle hash evaluations of a confirmation over all N slots.
double mean_confirm_hashes(const TreeParams& p);

struct CostReport {
    TreeParams params;
    double deploy = 0;
    double init_mean = 0;
    double confirm_mean = 0;
    double ot_cost = 0;  ///< mean init + confirm over N slots plus deploy / N
};

CostReport transfer_report(const TreeParams& p, const CostTable& table);
double transfer_cost(const TreeParams& p, const CostTable& table);

/// Per-slot costs measured by running the protocol on a simulated ledger.
struct MeteredRun {
    double deploy = 0;
    std::vector<std::optional<double>> init;     ///< indexed by opID; empty for reserved slots
    std::vector<std::optional<double>> confirm;
    std::vector<std::optional<PrimitiveCounts>> confirm_counts;
    PrimitiveCounts deploy_counts;
};

/// Deploys a wallet and executes a transfer in every non-reserved slot of the
/// first parent tree, introducing subtrees as needed.
MeteredRun meter_wallet(const TreeParams& p, const CostTable& table);

/// Parameter grid. Text form: "H=7..10;P=1,2;L=all" with optional "HS=" and "S=".
/// HS defaults to H and L defaults to every depth 0..HS.
struct SweepGrid {
    std::vector<int> H;
    std::vector<int> HS;
    std::vector<std::uint32_t> P;
    std::vector<int> L;
    int S = 128;

    static SweepGrid parse(const std::string& text);
};

/// Builds tree parameters with N = 2^H P and N_S = 2^HS P.
TreeParams params_for(int H, int HS, std::uint32_t P, int L, int S = 128);

std::vector<CostReport> sweep(const SweepGrid& grid, const CostTable& table);
inline constexpr const char* kSweepHeader = "H,HS,P,L,N,deploy,init_mean,confirm_mean,ot_cost";
std::string sweep_csv(const std::vector<CostReport>& rows);

/// Depth minimizing O^t_cost for the given shape (smallest on ties).
int optimal_depth(int H, int HS, std::uint32_t P, const CostTable& table, int S = 128);

/// Rolling average cost per transfer after n transfers, deployment included.
std::vector<double> rolling_average(const TreeParams& p, const CostTable& table);

/// First transfer count at which the rolling average of `cached` drops below
/// that of `uncached`. Searched over the N slots of one parent tree.
std::optional<std::uint64_t> crossover(const TreeParams& cached, const TreeParams& uncached,
                                       const CostTable& table);

} // namespace smartotps
