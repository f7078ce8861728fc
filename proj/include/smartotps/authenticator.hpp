#pragma once

#include "smartotps/digest.hpp"
#include "smartotps/hash.hpp"
#include "smartotps/leaf_file.hpp"
#include "smartotps/mnemonic.hpp"
#include "smartotps/params.hpp"

#include <string>
#include <vector>

namespace smartotps {

/// The air-gapped device. Holds k and the generation counter eta; the only
/// output that reveals k is display_seed().
class Authenticator {
public:
    Authenticator(const Seed& k, const TreeParams& params);
    Authenticator(const Seed& k, const TreeParams& params, Hasher hasher);

    const TreeParams& params() const noexcept { return params_; }
    std::uint64_t generation() const noexcept { return eta_; }

    /// OTP for an absolute operation id of the current generation.
    Digest get_otp(std::uint64_t op_id) const;

    LeafFile export_leaves() const;
    Digest display_root() const;

    Seed display_seed() const { return k_; }
    std::vector<std::string> display_seed_words(const Wordlist& wl) const;

    struct NewParentPreview {
        Digest new_root;
        Digest root_and_otp;  ///< h(R_new || OTP_opID)
    };
    /// R_new for generation eta+1 plus h(R_new || OTP_opID); opID must close the parent tree.
    NewParentPreview new_parent_preview(std::uint64_t op_id) const;
    /// Leaves of generation eta+1, for the insecure root replacement.
    LeafFile export_next_leaves() const;

    /// Called once a new parent root is installed on chain.
    void advance_generation() { ++eta_; }

private:
    LeafFile leaves_for(std::uint64_t eta) const;

    Seed k_;
    TreeParams params_;
    Hasher hasher_;
    std::uint64_t eta_ = 0;
};

} // namespace smartotps
