#include "smartotps/params.hpp"

#include "smartotps/errors.hpp"

#include <sstream>
#include <vector>

namespace smartotps {

bool is_power_of_two(std::uint64_t v)
{
    return v != 0 && (v & (v - 1)) == 0;
}

int log2_exact(std::uint64_t v)
{
    if (!is_power_of_two(v))
        throw DomainError(std::to_string(v) + " is not a power of two");
    int r = 0;
    while (v > 1) {
        v >>= 1;
        ++r;
    }
    return r;
}

void TreeParams::validate() const
{
    auto fail = [this](const std::string& why) { throw DomainError("invalid parameters (" + describe() + "): " + why); };
    if (S < 128 || S > 256 || S % 8 != 0)
        fail("S must be a multiple of 8 in [128, 256]");
    if (P == 0 || N == 0 || NS == 0)
        fail("N, P and N_S must be positive");
    if (NS % P != 0)
        fail("P must divide N_S");
    if (N % NS != 0)
        fail("N_S must divide N");
    if (!is_power_of_two(N / P))
        fail("N/P must be a power of two");
    if (!is_power_of_two(NS / P))
        fail("N_S/P must be a power of two");
    if (!is_power_of_two(N / NS))
        fail("N/N_S must be a power of two");
    if (N > (std::uint64_t{1} << 32))
        fail("N is limited to 2^32 (32-bit PRF input)");
    if (LS < 0 || LS > HS())
        fail("L_S must lie in [0, H_S]");
    if (len_max < 1)
        fail("LEN_MAX must be at least 1");
}

int TreeParams::H() const
{
    return log2_exact(N / P);
}

int TreeParams::HS() const
{
    return log2_exact(NS / P);
}

std::string TreeParams::describe() const
{
    std::ostringstream out;
    out << "S=" << S << " N=" << N << " P=" << P << " NS=" << NS << " LS=" << LS << " LEN_MAX=" << len_max;
    return out.str();
}

TreeParams TreeParams::parse_csv(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        parts.push_back(item);
    if (parts.size() != 5 && parts.size() != 6)
        throw ParseError("expected parameters as S,N,P,NS,LS[,LEN_MAX], got '" + text + "'");
    TreeParams p;
    try {
        p.S = std::stoi(parts[0]);
        p.N = std::stoull(parts[1]);
        p.P = static_cast<std::uint32_t>(std::stoul(parts[2]));
        p.NS = std::stoull(parts[3]);
        p.LS = std::stoi(parts[4]);
        if (parts.size() == 6)
            p.len_max = static_cast<std::uint32_t>(std::stoul(parts[5]));
    } catch (const std::logic_error&) {
        throw ParseError("non-numeric parameter in '" + text + "'");
    }
    p.validate();
    return p;
}

std::uint32_t verifier_chain_offset(const TreeParams& p, std::uint64_t op_id)
{
    return static_cast<std::uint32_t>(((op_id % p.NS) * p.P) / p.NS);
}

std::uint32_t otp_chain_position(const TreeParams& p, std::uint64_t op_id)
{
    return p.P - verifier_chain_offset(p, op_id) - 1;
}

std::uint64_t otp_chain_index(const TreeParams& p, std::uint64_t op_id)
{
    const std::uint64_t i = op_id % p.N;
    return (i / p.NS) * p.subtree_leaves() + (i % p.subtree_leaves());
}

std::uint32_t layer_of(const TreeParams& p, std::uint64_t op_id)
{
    return verifier_chain_offset(p, op_id) + 1;
}

std::uint64_t subtree_of(const TreeParams& p, std::uint64_t op_id)
{
    return (op_id % p.N) / p.NS;
}

std::uint64_t generation_of(const TreeParams& p, std::uint64_t op_id)
{
    return op_id / p.N;
}

bool is_reserved_slot(const TreeParams& p, std::uint64_t op_id)
{
    return op_id % p.NS == p.NS - 1;
}

bool is_parent_boundary(const TreeParams& p, std::uint64_t op_id)
{
    return op_id % p.N == p.N - 1;
}

} // namespace smartotps
