#include "smartotps/client.hpp"

#include "smartotps/errors.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace smartotps {

Client::Client(const TreeParams& params, const Hasher& h, std::vector<Digest> leaves, std::uint64_t eta)
    : params_(params), hasher_(h), leaves_(std::move(leaves)), eta_(eta)
{
    params_.validate();
    if (leaves_.size() != params_.leaves())
        throw DomainError("client needs exactly N/P leaves");
    root_ = reduce_mt(hasher_, leaves_);
}

Client Client::bootstrap_secure(const Seed& k, const TreeParams& params)
{
    return bootstrap_secure(k, params, Hasher(params.S));
}

Client Client::bootstrap_secure(const Seed& k, const TreeParams& params, const Hasher& h)
{
    params.validate();
    return Client(params, h, generate_leaves(h, k, 0, params), 0);
}

Client Client::bootstrap_insecure(const LeafFile& file, const TreeParams& params)
{
    return bootstrap_insecure(file, params, Hasher(params.S));
}

Client Client::bootstrap_insecure(const LeafFile& file, const TreeParams& params, const Hasher& h)
{
    params.validate();
    file.check_matches(params);
    return Client(params, h, file.leaves, file.eta);
}

std::vector<Digest> Client::leaves_from_seed(const Seed& k, std::uint64_t eta, const TreeParams& params)
{
    return generate_leaves(Hasher(params.S), k, eta, params);
}

MerkleTree Client::tree() const
{
    return MerkleTree(hasher_, leaves_);
}

SubtreeLayer Client::sublayer(std::uint64_t delta) const
{
    return tree().cached_sublayer(delta, params_);
}

MerkleProof Client::subtree_root_proof(std::uint64_t delta) const
{
    return tree().subtree_root_proof(delta, params_);
}

DeployCall Client::build_deploy(const Bytes& owner_pk) const
{
    const auto t = tree();
    DeployCall call;
    call.params = params_;
    call.root = root_;
    call.owner_pk = owner_pk;
    call.sublayer = t.cached_sublayer(0, params_).nodes;
    call.pi_sr = t.subtree_root_proof(0, params_);
    return call;
}

InitOpCall Client::build_init(OpType type, const AccountId& addr, std::uint64_t param) const
{
    return InitOpCall{contract_id_, type, addr, param};
}

void Client::require_current(std::uint64_t op_id) const
{
    if (generation_of(params_, op_id) != eta_ || subtree_of(params_, op_id) != delta_)
        throw ProtocolAbort("operation " + std::to_string(op_id) + " is not in the current subtree (generation " +
                            std::to_string(eta_) + ", subtree " + std::to_string(delta_) + ")");
}

ConfirmOpCall Client::build_confirm(std::uint64_t op_id, const Digest& otp) const
{
    require_current(op_id);
    return ConfirmOpCall{contract_id_, op_id, otp, tree().cache_proof(otp_chain_index(params_, op_id), params_)};
}

NextSubtreeCall Client::build_next_subtree(std::uint64_t op_id, const Digest& otp) const
{
    require_current(op_id);
    if (!is_reserved_slot(params_, op_id) || is_parent_boundary(params_, op_id))
        throw ProtocolAbort("operation " + std::to_string(op_id) + " does not introduce a subtree");
    const auto t = tree();
    NextSubtreeCall call;
    call.contract = contract_id_;
    call.sublayer = t.cached_sublayer(delta_ + 1, params_).nodes;
    call.otp = otp;
    call.pi_otp = t.proof(otp_chain_index(params_, op_id));
    call.pi_sr = t.subtree_root_proof(delta_ + 1, params_);
    return call;
}

NewRootStages Client::build_new_root_stages(std::uint64_t op_id, const Digest& otp,
                                            const std::vector<Digest>& new_leaves) const
{
    require_current(op_id);
    if (!is_parent_boundary(params_, op_id))
        throw ProtocolAbort("operation " + std::to_string(op_id) + " does not close the parent tree");
    if (new_leaves.size() != params_.leaves())
        throw DomainError("new generation needs exactly N/P leaves");
    const MerkleTree next(hasher_, new_leaves);
    NewRootStages out;
    out.stage1 = NewRootStage1Call{contract_id_, hash_pair(hasher_, next.root(), otp)};
    out.stage2 = NewRootStage2Call{contract_id_, next.root()};
    out.stage3.contract = contract_id_;
    out.stage3.otp = otp;
    out.stage3.proof = tree().cache_proof(otp_chain_index(params_, op_id), params_);
    out.stage3.sublayer = next.cached_sublayer(0, params_).nodes;
    out.stage3.pi_sr = next.subtree_root_proof(0, params_);
    return out;
}

void Client::advance_subtree()
{
    if (delta_ + 1 >= params_.subtrees())
        throw ProtocolAbort("no further subtree in this parent tree");
    ++delta_;
}

void Client::install_generation(std::vector<Digest> new_leaves)
{
    if (new_leaves.size() != params_.leaves())
        throw DomainError("new generation needs exactly N/P leaves");
    leaves_ = std::move(new_leaves);
    root_ = reduce_mt(hasher_, leaves_);
    ++eta_;
    delta_ = 0;
}

std::string Client::metadata_json() const
{
    nlohmann::ordered_json j;
    j["contract_id"] = contract_id_.hex();
    j["eta"] = eta_;
    j["subtree"] = delta_;
    j["confirmation_depth"] = confirmation_depth_;
    j["params"] = params_.describe();
    return j.dump();
}

void Client::save(const std::string& dir) const
{
    std::filesystem::create_directories(dir);
    LeafFile file;
    file.S = params_.S;
    file.N = params_.N;
    file.P = params_.P;
    file.NS = params_.NS;
    file.eta = eta_;
    file.leaves = leaves_;
    file.write(dir + "/client.leaves");
    std::ofstream out(dir + "/client.json", std::ios::trunc);
    if (!out)
        throw ParseError("cannot write client metadata in '" + dir + "'");
    out << metadata_json() << '\n';
}

Client Client::load(const std::string& dir, const TreeParams& params)
{
    auto client = bootstrap_insecure(LeafFile::read(dir + "/client.leaves"), params);
    std::ifstream in(dir + "/client.json");
    if (!in)
        throw ParseError("cannot open client metadata in '" + dir + "'");
    std::string line;
    std::getline(in, line);
    try {
        const auto j = nlohmann::json::parse(line);
        if (j.at("params").get<std::string>() != params.describe())
            throw ParseError("client metadata was written for " + j.at("params").get<std::string>());
        client.contract_id_ = Digest::from_hex(j.at("contract_id").get<std::string>());
        client.delta_ = j.at("subtree").get<std::uint64_t>();
        client.confirmation_depth_ = j.at("confirmation_depth").get<std::uint32_t>();
        if (j.at("eta").get<std::uint64_t>() != client.eta_)
            throw ParseError("client metadata and leaf file disagree on eta");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed client metadata: ") + e.what());
    }
    return client;
}

} // namespace smartotps
