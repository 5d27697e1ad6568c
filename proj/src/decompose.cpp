#include "kleinperm/decompose.hpp"

#include <algorithm>

#include "pencil.hpp"

namespace kleinperm {

bool Decomposition::has_label(IndecompLabel::Kind kind) const {
    for (const IndecompLabel& l : labels)
        if (l.kind == kind) return true;
    return false;
}

Decomposition decompose(const KV4Module& m, std::uint64_t /*seed*/) {
    const FieldSpec f = m.field();
    const std::size_t d = m.dim();
    std::vector<detail::Block> blocks = detail::decompose_into_blocks(m);
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const detail::Block& a, const detail::Block& b) { return label_less(a.label, b.label); });

    std::vector<Vec> cols;
    cols.reserve(d);
    for (const detail::Block& b : blocks)
        for (const Vec& v : b.basis) cols.push_back(v);
    if (cols.size() != d) fail(Errc::Internal, "decomposition does not cover the module");
    ExactMatrix dmat = ExactMatrix::from_cols(f, cols, d);
    auto dinv = dmat.inverse();
    if (!dinv) fail(Errc::Internal, "decomposition basis is singular");

    // Certificate: conjugation carries (A, B) to the block-diagonal catalogue
    // forms exactly.
    ExactMatrix expect_a(f, d, d), expect_b(f, d, d);
    std::size_t off = 0;
    for (const detail::Block& b : blocks) {
        KV4Module blk = construct(b.label, f);
        for (std::size_t i = 0; i < blk.dim(); ++i)
            for (std::size_t j = 0; j < blk.dim(); ++j) {
                if (Elem v = blk.A().get(i, j)) expect_a.set(off + i, off + j, v);
                if (Elem v = blk.B().get(i, j)) expect_b.set(off + i, off + j, v);
            }
        off += blk.dim();
    }
    if (!(*dinv * m.A() * dmat == expect_a) || !(*dinv * m.B() * dmat == expect_b))
        fail(Errc::Internal, "decomposition certificate failed");

    Decomposition out;
    out.change_of_basis = std::move(*dinv);
    off = 0;
    for (detail::Block& b : blocks) {
        out.labels.push_back(b.label);
        out.block_spans.push_back(Subspace::from_vectors(f, b.basis, d));
        off += b.label.dim();
    }
    return out;
}

IndecompLabel identify_indecomposable(const KV4Module& m) {
    Decomposition dec = decompose(m);
    if (dec.labels.size() != 1)
        fail(Errc::NotIndecomposable,
             "module splits as " + labels_to_string(dec.labels));
    return dec.labels[0];
}

bool is_isomorphic(const KV4Module& m1, const KV4Module& m2) {
    if (!(m1.field() == m2.field())) fail(Errc::FieldMismatch, "is_isomorphic over mixed fields");
    if (m1.dim() != m2.dim()) return false;
    Decomposition d1 = decompose(m1);
    Decomposition d2 = decompose(m2);
    if (d1.labels.size() != d2.labels.size()) return false;
    for (std::size_t i = 0; i < d1.labels.size(); ++i)
        if (!(d1.labels[i] == d2.labels[i])) return false;
    return true;
}

} // namespace kleinperm
