#pragma once

#include <cstdint>

#include "kleinperm/catalogue.hpp"
#include "kleinperm/module.hpp"

namespace kleinperm {

/// Result of splitting a module into catalogue indecomposables. The change of
/// basis C satisfies C A C^{-1} = blockdiag(construct(labels[i]).A()) exactly
/// (same for B); the equality is verified before the value is returned, so a
/// Decomposition is its own certificate.
struct Decomposition {
    std::vector<IndecompLabel> labels;  // canonical order
    ExactMatrix change_of_basis;        // C
    std::vector<Subspace> block_spans;

    bool has_label(IndecompLabel::Kind kind) const;
};

/// Deterministic structural decomposition (free split-off, socle splitting,
/// pencil classification). The seed parameter is accepted for interface
/// stability; the algorithm uses no randomness.
Decomposition decompose(const KV4Module& m, std::uint64_t seed = 0);

/// The unique label with construct(label) isomorphic to m. Throws
/// NotIndecomposable when m splits.
IndecompLabel identify_indecomposable(const KV4Module& m);

bool is_isomorphic(const KV4Module& m1, const KV4Module& m2);

} // namespace kleinperm
