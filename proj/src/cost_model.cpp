#include "smartotps/cost_model.hpp"

#include "smartotps/errors.hpp"
#include "smartotps/protocols.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace smartotps {

namespace {

constexpr std::uint64_t kWord = 32;
constexpr std::uint64_t kPublicKeyBytes = 32;

std::uint64_t words(std::uint64_t bytes)
{
    return (bytes + kWord - 1) / kWord;
}

std::uint64_t digest_bytes(const TreeParams& p)
{
    return static_cast<std::uint64_t>(p.S / 8);
}

struct Field {
    const char* name;
    double CostTable::*member;
};

constexpr Field kFields[] = {
    {"hash_base", &CostTable::hash_base},       {"hash_word", &CostTable::hash_word},
    {"storage_new", &CostTable::storage_new},   {"storage_update", &CostTable::storage_update},
    {"storage_read", &CostTable::storage_read}, {"sig_verify", &CostTable::sig_verify},
    {"tx_base", &CostTable::tx_base},           {"payload_byte", &CostTable::payload_byte},
};

std::string fixed2(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

long long parse_int(const std::string& text)
{
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used == text.size())
            return v;
    } catch (const std::exception&) {
    }
    throw ParseError("expected an integer, got '" + text + "'");
}

/// "a..b", "a,b,c" or "all" (returned empty).
std::vector<long long> parse_values(const std::string& text)
{
    if (text == "all")
        return {};
    std::vector<long long> out;
    for (const auto& part : split(text, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_int(part));
            continue;
        }
        const long long lo = parse_int(part.substr(0, dots));
        const long long hi = parse_int(part.substr(dots + 2));
        if (hi < lo)
            throw ParseError("empty range '" + part + "'");
        for (long long v = lo; v <= hi; ++v)
            out.push_back(v);
    }
    if (out.empty())
        throw ParseError("no values in '" + text + "'");
    return out;
}

} // namespace

void CostTable::validate() const
{
    for (const auto& f : kFields)
        if (this->*f.member < 0)
            throw DomainError(std::string("cost ") + f.name + " is negative");
}

CostTable CostTable::parse(const std::string& text)
{
    CostTable t;
    for (const auto& item : split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("cost entry '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq);
        const auto* f = std::find_if(std::begin(kFields), std::end(kFields),
                                     [&](const Field& x) { return key == x.name; });
        if (f == std::end(kFields))
            throw ParseError("unknown cost key '" + key + "'");
        try {
            std::size_t used = 0;
            t.*(f->member) = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1)
                throw ParseError("");
        } catch (const std::exception&) {
            throw ParseError("cost '" + key + "' needs a number");
        }
    }
    t.validate();
    return t;
}

std::string CostTable::describe() const
{
    std::string out;
    for (const auto& f : kFields)
        out += (out.empty() ? "" : ",") + std::string(f.name) + "=" + fixed2(this->*f.member);
    return out;
}

PrimitiveCounts counts_of(const Receipt& r)
{
    PrimitiveCounts c;
    c.hash_calls = r.meter.hashes.calls;
    c.hash_words = r.meter.hashes.words;
    c.storage_new = r.meter.storage_new;
    c.storage_update = r.meter.storage_update;
    c.storage_read = r.meter.storage_read;
    c.sig_verify = r.meter.sig_verify;
    c.payload_bytes = r.payload_bytes;
    return c;
}

double call_cost(const PrimitiveCounts& c, const CostTable& t)
{
    return t.tx_base + t.hash_base * static_cast<double>(c.hash_calls) +
           t.hash_word * static_cast<double>(c.hash_words) + t.storage_new * static_cast<double>(c.storage_new) +
           t.storage_update * static_cast<double>(c.storage_update) +
           t.storage_read * static_cast<double>(c.storage_read) + t.sig_verify * static_cast<double>(c.sig_verify) +
           t.payload_byte * static_cast<double>(c.payload_bytes);
}

PrimitiveCounts deploy_counts(const TreeParams& p)
{
    const std::uint64_t b = digest_bytes(p);
    const std::uint64_t cache = std::uint64_t{1} << p.LS;
    const std::uint64_t pairs = cache - 1 + static_cast<std::uint64_t>(p.H() - p.HS());
    PrimitiveCounts c;
    c.hash_calls = pairs + 1;
    c.hash_words = pairs * words(2 * b) + words(kPublicKeyBytes + b);
    c.storage_new = storage_layout::kDeployScalarWords + cache;
    c.payload_bytes = 6 * kWord + b * (1 + cache + static_cast<std::uint64_t>(p.H() - p.HS()));
    return c;
}

PrimitiveCounts init_counts(const TreeParams& p)
{
    PrimitiveCounts c;
    c.sig_verify = 1;
    c.storage_read = 1;
    c.storage_new = storage_layout::kOperationWords;
    c.storage_update = 1;
    c.payload_bytes = digest_bytes(p) + 3 * kWord;
    return c;
}

PrimitiveCounts confirm_transfer_counts(const TreeParams& p, std::uint64_t op_id)
{
    const std::uint64_t b = digest_bytes(p);
    const std::uint64_t chain = verifier_chain_offset(p, op_id) + 1;
    const auto merkle = static_cast<std::uint64_t>(p.HS() - p.LS);
    PrimitiveCounts c;
    c.hash_calls = chain + merkle;
    c.hash_words = chain * words(4 + b) + merkle * words(2 * b);
    c.storage_read = storage_layout::kOperationWords + 5;
    c.storage_update = 4;
    c.payload_bytes = b + kWord + b + merkle * b;
    return c;
}

double mean_confirm_hashes(const TreeParams& p)
{
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < p.N; ++i)
        total += confirm_transfer_counts(p, i).hash_calls;
    return static_cast<double>(total) / static_cast<double>(p.N);
}

CostReport transfer_report(const TreeParams& p, const CostTable& t)
{
    p.validate();
    CostReport r;
    r.params = p;
    r.deploy = call_cost(deploy_counts(p), t);
    r.init_mean = call_cost(init_counts(p), t);
    double confirm_total = 0;
    for (std::uint64_t i = 0; i < p.N; ++i)
        confirm_total += call_cost(confirm_transfer_counts(p, i), t);
    r.confirm_mean = confirm_total / static_cast<double>(p.N);
    r.ot_cost = r.init_mean + r.confirm_mean + r.deploy / static_cast<double>(p.N);
    return r;
}

double transfer_cost(const TreeParams& p, const CostTable& t)
{
    return transfer_report(p, t).ot_cost;
}

MeteredRun meter_wallet(const TreeParams& p, const CostTable& t)
{
    p.validate();
    Ledger ledger({{"user", 1'000'000'000}, {"bob", 0}});
    SessionConfig cfg;
    cfg.params = p;
    cfg.confirmation_depth = 0;
    Seed k;
    std::array<std::uint8_t, 32> wallet{};
    for (std::size_t i = 0; i < k.bytes.size(); ++i)
        k.bytes[i] = static_cast<std::uint8_t>(0x11 * (i + 1));
    for (std::size_t i = 0; i < wallet.size(); ++i)
        wallet[i] = static_cast<std::uint8_t>(0xa0 + i);
    Session s(ledger, cfg, k, wallet);
    s.bootstrap();

    MeteredRun run;
    for (const auto& r : ledger.head().receipts)
        if (r.fn == "deploy" && r.ok) {
            run.deploy_counts = counts_of(r);
            run.deploy = call_cost(run.deploy_counts, t);
        }
    s.fund(p.N);
    run.init.resize(p.N);
    run.confirm.resize(p.N);
    run.confirm_counts.resize(p.N);
    for (std::uint64_t i = 0; i + 1 < p.N; ++i) {
        if (is_reserved_slot(p, i)) {
            s.run_next_subtree();
            continue;
        }
        const OperationOutcome o = s.run_operation(OpType::Transfer, "bob", 1);
        if (!o.confirmed || o.op_id != i)
            throw IntegrityError("metered transfer " + std::to_string(i) + " failed: " + o.error);
        run.init[i] = call_cost(counts_of(*ledger.receipt(o.init_tx)), t);
        run.confirm_counts[i] = counts_of(*ledger.receipt(o.confirm_tx));
        run.confirm[i] = call_cost(*run.confirm_counts[i], t);
    }
    return run;
}

SweepGrid SweepGrid::parse(const std::string& text)
{
    SweepGrid g;
    for (const auto& item : split(text, ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("grid entry '" + item + "' is not key=values");
        const std::string key = item.substr(0, eq);
        const auto values = parse_values(item.substr(eq + 1));
        auto as_int = [&](std::vector<int>& out) {
            for (auto v : values)
                out.push_back(static_cast<int>(v));
        };
        if (key == "H")
            as_int(g.H);
        else if (key == "HS")
            as_int(g.HS);
        else if (key == "L")
            as_int(g.L);
        else if (key == "P")
            for (auto v : values)
                g.P.push_back(static_cast<std::uint32_t>(v));
        else if (key == "S" && values.size() == 1)
            g.S = static_cast<int>(values.front());
        else
            throw ParseError("unknown grid key '" + key + "'");
    }
    if (g.H.empty())
        throw ParseError("grid needs H values");
    if (g.P.empty())
        g.P.push_back(1);
    return g;
}

TreeParams params_for(int H, int HS, std::uint32_t P, int L, int S)
{
    if (H < 0 || HS < 0 || HS > H || L < 0 || L > HS || H > 40)
        throw DomainError("need 0 <= L <= HS <= H <= 40");
    TreeParams p;
    p.S = S;
    p.P = P;
    p.N = (std::uint64_t{1} << H) * P;
    p.NS = (std::uint64_t{1} << HS) * P;
    p.LS = L;
    p.validate();
    return p;
}

std::vector<CostReport> sweep(const SweepGrid& grid, const CostTable& table)
{
    table.validate();
    std::vector<CostReport> rows;
    for (int H : grid.H)
        for (int HS : grid.HS.empty() ? std::vector<int>{H} : grid.HS) {
            if (HS > H)
                continue;
            for (std::uint32_t P : grid.P) {
                std::vector<int> depths = grid.L;
                if (depths.empty())
                    for (int l = 0; l <= HS; ++l)
                        depths.push_back(l);
                for (int L : depths)
                    if (L <= HS)
                        rows.push_back(transfer_report(params_for(H, HS, P, L, grid.S), table));
            }
        }
    return rows;
}

std::string sweep_csv(const std::vector<CostReport>& rows)
{
    std::ostringstream out;
    out << kSweepHeader << '\n';
    for (const auto& r : rows)
        out << r.params.H() << ',' << r.params.HS() << ',' << r.params.P << ',' << r.params.LS << ',' << r.params.N
            << ',' << fixed2(r.deploy) << ',' << fixed2(r.init_mean) << ',' << fixed2(r.confirm_mean) << ','
            << fixed2(r.ot_cost) << '\n';
    return out.str();
}

int optimal_depth(int H, int HS, std::uint32_t P, const CostTable& table, int S)
{
    int best = 0;
    double best_cost = transfer_cost(params_for(H, HS, P, 0, S), table);
    for (int L = 1; L <= HS; ++L) {
        const double c = transfer_cost(params_for(H, HS, P, L, S), table);
        if (c < best_cost) {
            best = L;
            best_cost = c;
        }
    }
    return best;
}

std::vector<double> rolling_average(const TreeParams& p, const CostTable& table)
{
    std::vector<double> out;
    out.reserve(p.N);
    double total = call_cost(deploy_counts(p), table);
    const double init = call_cost(init_counts(p), table);
    for (std::uint64_t i = 0; i < p.N; ++i) {
        total += init + call_cost(confirm_transfer_counts(p, i), table);
        out.push_back(total / static_cast<double>(i + 1));
    }
    return out;
}

std::optional<std::uint64_t> crossover(const TreeParams& cached, const TreeParams& uncached, const CostTable& table)
{
    if (cached.N != uncached.N)
        throw DomainError("crossover compares trees with the same number of OTPs");
    const auto a = rolling_average(cached, table);
    const auto b = rolling_average(uncached, table);
    for (std::size_t n = 0; n < a.size(); ++n)
        if (a[n] < b[n])
            return n + 1;
    return std::nullopt;
}

} // namespace smartotps
