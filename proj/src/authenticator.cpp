#include "smartotps/authenticator.hpp"

#include "smartotps/errors.hpp"
#include "smartotps/merkle.hpp"

namespace smartotps {

Authenticator::Authenticator(const Seed& k, const TreeParams& params) : Authenticator(k, params, Hasher(params.S)) {}

Authenticator::Authenticator(const Seed& k, const TreeParams& params, Hasher hasher)
    : k_(k), params_(params), hasher_(std::move(hasher))
{
    params_.validate();
    if (hasher_.bits() != params_.S)
        throw DomainError("hasher output size does not match S");
}

Digest Authenticator::get_otp(std::uint64_t op_id) const
{
    if (generation_of(params_, op_id) != eta_)
        throw DomainError("operation " + std::to_string(op_id) + " is outside the current parent tree [" +
                          std::to_string(eta_ * params_.N) + ", " + std::to_string((eta_ + 1) * params_.N) + ")");
    return otp_from_seed(hasher_, k_, eta_, op_id, params_);
}

LeafFile Authenticator::leaves_for(std::uint64_t eta) const
{
    LeafFile file;
    file.S = params_.S;
    file.N = params_.N;
    file.P = params_.P;
    file.NS = params_.NS;
    file.eta = eta;
    file.leaves = generate_leaves(hasher_, k_, eta, params_);
    return file;
}

LeafFile Authenticator::export_leaves() const
{
    return leaves_for(eta_);
}

Digest Authenticator::display_root() const
{
    return reduce_mt(hasher_, leaves_for(eta_).leaves);
}

std::vector<std::string> Authenticator::display_seed_words(const Wordlist& wl) const
{
    return mnemonic_encode(wl, ByteView(k_.bytes));
}

Authenticator::NewParentPreview Authenticator::new_parent_preview(std::uint64_t op_id) const
{
    if (!is_parent_boundary(params_, op_id))
        throw ProtocolAbort("operation " + std::to_string(op_id) + " does not close the parent tree");
    NewParentPreview out;
    out.new_root = reduce_mt(hasher_, leaves_for(eta_ + 1).leaves);
    out.root_and_otp = hash_pair(hasher_, out.new_root, get_otp(op_id));
    return out;
}

LeafFile Authenticator::export_next_leaves() const
{
    return leaves_for(eta_ + 1);
}

} // namespace smartotps
