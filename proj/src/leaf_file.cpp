#include "smartotps/leaf_file.hpp"

#include "smartotps/errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace smartotps {

namespace {

constexpr std::string_view kMagic = "smartotps-leaves";
constexpr std::string_view kVersion = "v1";

std::uint64_t header_number(const std::map<std::string, std::string>& fields, const std::string& key)
{
    auto it = fields.find(key);
    if (it == fields.end())
        throw ParseError("leaf file header lacks " + key);
    try {
        std::size_t used = 0;
        const auto v = std::stoull(it->second, &used);
        if (used != it->second.size())
            throw ParseError("leaf file header field " + key + " is not a number");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("leaf file header field " + key + " is not a number");
    }
}

} // namespace

std::string LeafFile::serialize() const
{
    std::ostringstream out;
    out << kMagic << ' ' << kVersion << " S=" << S << " N=" << N << " P=" << P << " NS=" << NS << " eta=" << eta
        << '\n';
    for (const auto& leaf : leaves)
        out << leaf.hex() << '\n';
    return out.str();
}

LeafFile LeafFile::parse(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("leaf file is empty");

    std::istringstream header(line);
    std::string magic, version;
    header >> magic >> version;
    if (magic != kMagic || version != kVersion)
        throw ParseError("not a smartotps-leaves v1 file");
    std::map<std::string, std::string> fields;
    std::string token;
    while (header >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw ParseError("malformed leaf file header token '" + token + "'");
        fields[token.substr(0, eq)] = token.substr(eq + 1);
    }

    LeafFile file;
    file.S = static_cast<int>(header_number(fields, "S"));
    file.N = header_number(fields, "N");
    file.P = static_cast<std::uint32_t>(header_number(fields, "P"));
    file.NS = header_number(fields, "NS");
    file.eta = header_number(fields, "eta");

    const std::size_t digest_hex = static_cast<std::size_t>(file.S / 4);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line.size() != digest_hex)
            throw ParseError("leaf line '" + line + "' does not hold an S-bit digest");
        for (char c : line) {
            if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')))
                throw ParseError("leaf line '" + line + "' is not lowercase hex");
        }
        file.leaves.push_back(Digest::from_hex(line));
    }
    if (file.P == 0 || file.leaves.size() != file.N / file.P)
        throw ParseError("leaf file holds " + std::to_string(file.leaves.size()) + " leaves, header implies " +
                         std::to_string(file.P == 0 ? 0 : file.N / file.P));
    return file;
}

void LeafFile::write(const std::string& path) const
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ParseError("cannot write leaf file '" + path + "'");
    out << serialize();
}

LeafFile LeafFile::read(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open leaf file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void LeafFile::check_matches(const TreeParams& params) const
{
    if (S != params.S || N != params.N || P != params.P || NS != params.NS)
        throw ParseError("leaf file header (S=" + std::to_string(S) + " N=" + std::to_string(N) +
                         " P=" + std::to_string(P) + " NS=" + std::to_string(NS) +
                         ") does not match parameters " + params.describe());
    if (leaves.size() != params.leaves())
        throw ParseError("leaf file holds the wrong number of leaves");
}

} // namespace smartotps
