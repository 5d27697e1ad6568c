#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "kleinperm/decompose.hpp"
#include "kleinperm/module.hpp"

namespace kleinperm {

/// Finite exact complex P_l -> ... -> P_0 -> target -> 0 with explicit
/// matrices. terms[i] is P_i; maps[i] is d_{i+1}: P_{i+1} -> P_i; aug is the
/// augmentation P_0 -> target.
struct Resolution {
    KV4Module target;
    std::vector<KV4Module> terms;
    std::vector<ExactMatrix> maps;
    ExactMatrix aug;

    int length() const { return int(terms.size()) - 1; }
};

struct ExactnessReport {
    bool ok = true;
    int failed_position = -1;  // 0 = augmentation, i >= 1 = map d_i
    std::string detail;
};

/// Verifies surjectivity of the augmentation, im(d_{i+1}) = ker(d_i) at every
/// position, and injectivity of the top map. Returns the falsifying position
/// instead of throwing.
ExactnessReport check_exact(const Resolution& r);

struct ProjectiveCover {
    KV4Module cover;  // kV4^{head_dim(m)}
    ModuleMap map;
};

/// P = kV4^{head_dim(m)} with generator i mapped to the i-th head-basis
/// representative (non-pivot coordinates of the radical's RREF).
ProjectiveCover projective_cover(const KV4Module& m);

/// Kernel of the projective cover.
KV4Module heller(const KV4Module& m);

bool is_essential_surjection(const ModuleMap& phi);

/// 0 -> Omega(M') -> Omega(M) -> ker(phi) -> 0 for an essential surjection
/// phi: M' ->> M, built from the shared projective cover.
struct SnakeSequence {
    KV4Module omega_source;  // Omega(M')
    KV4Module omega_target;  // Omega(M)
    KV4Module kernel_module; // ker(phi)
    ModuleMap inclusion;     // Omega(M') -> Omega(M)
    ModuleMap projection;    // Omega(M) -> ker(phi)
};

SnakeSequence snake_sequence(const ModuleMap& phi);

struct ShortExactSequence {
    KV4Module sub, middle, quotient;
    ModuleMap inclusion;   // sub -> middle
    ModuleMap surjection;  // middle -> quotient
};

/// Splices a short exact sequence with a resolution of its kernel (via the
/// identification ident: inner.target -> outer.sub, an isomorphism).
Resolution splice(const ShortExactSequence& outer, const Resolution& inner, const ModuleMap& ident);

/// Degree-wise direct sum; resolves the direct sum of the targets.
Resolution sum_resolutions(const std::vector<Resolution>& rs);

/// Transports a resolution along an isomorphism of targets.
Resolution retarget(const Resolution& r, const ModuleMap& iso);

/// `kv4res v1` format.
void write_resolution(std::ostream& os, const Resolution& r);
Resolution read_resolution(std::istream& is);

} // namespace kleinperm
