#pragma once

// Shared helpers for the test suites: a seeded splitmix generator, random
// label multisets, and random invertible conjugations.

#include <cstdint>
#include <vector>

#include "kleinperm/catalogue.hpp"
#include "kleinperm/module.hpp"

namespace testutil {

using namespace kleinperm;

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

/// Invertible matrix as L * U * P with unitriangular L, U and a permutation.
inline ExactMatrix random_invertible(FieldSpec f, std::size_t n, Rng& rng) {
    ExactMatrix l = ExactMatrix::identity(f, n);
    ExactMatrix u = ExactMatrix::identity(f, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i > j) l.set(i, j, rng.next() & f.mask());
            if (i < j) u.set(i, j, rng.next() & f.mask());
        }
    ExactMatrix p(f, n, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    for (std::size_t i = 0; i < n; ++i) p.set(i, perm[i], 1);
    return l * u * p;
}

/// Conjugated copy g m g^{-1} of a module (labels dropped).
inline KV4Module conjugate(const KV4Module& m, const ExactMatrix& g) {
    auto gi = g.inverse();
    return KV4Module::make(m.field(), g * m.A() * *gi, g * m.B() * *gi);
}

/// Random multiset of catalogue labels with total dimension <= budget, drawn
/// from all six families (E-parameters from the given pool).
inline std::vector<IndecompLabel> random_labels(FieldSpec f, std::size_t budget, Rng& rng,
                                                const std::vector<FieldPoly>& poly_pool) {
    std::vector<IndecompLabel> out;
    std::size_t used = 0;
    while (used + 1 <= budget) {
        const std::size_t room = budget - used;
        IndecompLabel pick;
        switch (rng.below(6)) {
            case 0: pick = IndecompLabel::triv(); break;
            case 1:
                if (room < 4) continue;
                pick = IndecompLabel::reg();
                break;
            case 2: {
                if (room < 3) continue;
                int nmax = int((room - 1) / 2);
                pick = IndecompLabel::m(1 + int(rng.below(std::uint64_t(nmax))));
                break;
            }
            case 3: {
                if (room < 3) continue;
                int nmax = int((room - 1) / 2);
                pick = IndecompLabel::w(1 + int(rng.below(std::uint64_t(nmax))));
                break;
            }
            case 4: {
                const FieldPoly& p = poly_pool[rng.below(poly_pool.size())];
                const std::size_t unit = 2 * std::size_t(p.degree());
                if (room < unit) continue;
                int nmax = int(room / unit);
                pick = IndecompLabel::e(p, 1 + int(rng.below(std::uint64_t(nmax))));
                break;
            }
            default: {
                if (room < 2) continue;
                int nmax = int(room / 2);
                pick = IndecompLabel::einf(1 + int(rng.below(std::uint64_t(nmax))));
                break;
            }
        }
        out.push_back(pick);
        used += pick.dim();
        if (rng.below(4) == 0) break;  // occasionally stop early
    }
    (void)f;
    return out;
}

inline std::vector<FieldPoly> default_poly_pool(FieldSpec f) {
    return {FieldPoly::t(f), FieldPoly::linear(f, 1), FieldPoly::from_mask(f, 0x7),
            FieldPoly::from_mask(f, 0xB), FieldPoly::from_mask(f, 0xD)};
}

} // namespace testutil
