#include "pencil.hpp"

#include <algorithm>

namespace kleinperm::detail {

namespace {

[[noreturn]] void internal(const char* what) { fail(Errc::Internal, what); }

void check(bool cond, const char* what) {
    if (!cond) internal(what);
}

Vec row_times(const Vec& row, const ExactMatrix& m) {
    // functional composed with m: (row * m) as a row vector
    if (row.size() != m.rows()) fail(Errc::DimensionMismatch, "row_times shape");
    const FieldSpec f = m.field();
    Vec out(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (row[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Elem v = m.get(i, j);
            if (v) out[j] ^= fmul(f, row[i], v);
        }
    }
    return out;
}

Vec lift_through_f(const FieldSpec& f, const std::vector<Vec>& cols, const Vec& local) {
    check(cols.size() == local.size(), "lift size mismatch");
    if (cols.empty()) return Vec{};
    Vec out(cols[0].size(), 0);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (local[i] == 0) continue;
        for (std::size_t j = 0; j < out.size(); ++j)
            if (cols[i][j]) out[j] ^= fmul(f, local[i], cols[i][j]);
    }
    return out;
}

struct PencilView {
    FieldSpec field;
    ExactMatrix alpha, beta;   // p x q
    std::vector<Vec> ucols;    // current U-coordinates -> original module vectors
    std::vector<Vec> scols;    // current S-coordinates -> original module vectors

    std::size_t p() const { return alpha.rows(); }
    std::size_t q() const { return alpha.cols(); }
};

struct PencilBlock {
    IndecompLabel label;
    std::vector<Vec> uvecs;  // module coordinates
};

// K-chain for the minimal closed chain x_0..x_eps with alpha x_0 = 0,
// alpha x_{i+1} = beta x_i, beta x_eps = 0. Returns the chain or nothing.
std::optional<std::vector<Vec>> minimal_closed_chain(const ExactMatrix& alpha, const ExactMatrix& beta) {
    const FieldSpec f = alpha.field();
    const std::size_t q = alpha.cols();
    if (q == 0) return std::nullopt;
    const Subspace kerb = kernel(beta);
    std::vector<Subspace> ks;          // ks[j] = K_{j+1}
    ks.push_back(kernel(alpha));       // K_1
    for (std::size_t eps = 0; eps <= q; ++eps) {
        const Subspace& k = ks.back();
        Subspace hit = subspace_intersect(k, kerb);
        if (hit.dim() > 0) {
            if (eps == 0) internal("pencil has a common column kernel");
            std::vector<Vec> chain(eps + 1);
            chain[eps] = hit.basis_vector(0);
            for (std::size_t i = eps; i >= 1; --i) {
                // find x_{i-1} in K_i with beta x_{i-1} = alpha x_i
                const Subspace& ki = ks[i - 1];
                std::vector<Vec> cols;
                for (std::size_t r = 0; r < ki.dim(); ++r) cols.push_back(beta.apply(ki.basis_vector(r)));
                ExactMatrix bmat = ExactMatrix::from_cols(f, cols, beta.rows());
                auto c = bmat.solve(alpha.apply(chain[i]));
                check(c.has_value(), "chain back-substitution unsolvable");
                Vec cur(q, 0);
                for (std::size_t r = 0; r < ki.dim(); ++r)
                    if ((*c)[r])
                        for (std::size_t j = 0; j < q; ++j)
                            if (ki.basis_vector(r)[j]) cur[j] ^= fmul(f, (*c)[r], ki.basis_vector(r)[j]);
                chain[i - 1] = std::move(cur);
            }
            return chain;
        }
        Subspace next = preimage(alpha, map_subspace(beta, k));
        if (next.dim() == k.dim()) return std::nullopt;
        ks.push_back(std::move(next));
    }
    return std::nullopt;
}

// Restricts the pencil to complement subspaces (given by functional rows that
// must vanish). Returns the restricted view.
PencilView restrict_view(const PencilView& v, const std::vector<Vec>& ufun, const std::vector<Vec>& sfun) {
    const FieldSpec f = v.field;
    Subspace ukeep = kernel(ExactMatrix::from_rows(f, ufun, v.q()));
    Subspace skeep = kernel(ExactMatrix::from_rows(f, sfun, v.p()));
    PencilView out;
    out.field = f;
    const std::size_t q2 = ukeep.dim(), p2 = skeep.dim();
    out.alpha = ExactMatrix(f, p2, q2);
    out.beta = ExactMatrix(f, p2, q2);
    for (std::size_t j = 0; j < q2; ++j) {
        for (int which = 0; which < 2; ++which) {
            const ExactMatrix& m = which ? v.beta : v.alpha;
            auto coords = skeep.coordinates(m.apply(ukeep.basis_vector(j)));
            check(coords.has_value(), "complement is not pencil-stable");
            for (std::size_t i = 0; i < p2; ++i)
                (which ? out.beta : out.alpha).set(i, j, (*coords)[i]);
        }
    }
    for (std::size_t j = 0; j < q2; ++j) out.ucols.push_back(lift_through_f(f, v.ucols, ukeep.basis_vector(j)));
    for (std::size_t i = 0; i < p2; ++i) out.scols.push_back(lift_through_f(f, v.scols, skeep.basis_vector(i)));
    return out;
}

// Peels one wide block (a W string): chain is the block basis; the
// complement is cut out by retraction functionals solved for explicitly.
PencilBlock peel_wide(PencilView& v, const std::vector<Vec>& chain) {
    const FieldSpec f = v.field;
    const std::size_t eps = chain.size() - 1;
    check(eps >= 1, "wide chain of length 0");
    const std::size_t p = v.p(), q = v.q();

    PencilBlock blk;
    blk.label = IndecompLabel::w(int(eps));
    for (const Vec& x : chain) blk.uvecs.push_back(lift_through_f(f, v.ucols, x));

    if (eps + 1 == q) {
        check(eps == p, "wide block dimension bookkeeping");
        v = PencilView{f, ExactMatrix(f, 0, 0), ExactMatrix(f, 0, 0), {}, {}};
        return blk;
    }

    // Retraction functionals s_1..s_eps on S with s_i(v_j) = delta_ij and
    // s_i alpha = s_{i+1} beta; then r_0 = s_1 beta, r_i = s_i alpha cut the
    // complement out of U.
    std::vector<Vec> vchain;  // v_j = alpha x_j, j = 1..eps
    for (std::size_t j = 1; j <= eps; ++j) vchain.push_back(v.alpha.apply(chain[j]));

    const std::size_t vars = eps * p;
    const std::size_t rows = (eps - 1) * q + eps * eps;
    ExactMatrix sys(f, rows, vars);
    Vec rhs(rows, 0);
    std::size_t eq = 0;
    for (std::size_t i = 1; i + 1 <= eps; ++i) {
        // s_i alpha + s_{i+1} beta = 0 columnwise
        for (std::size_t c = 0; c < q; ++c, ++eq) {
            for (std::size_t r = 0; r < p; ++r) {
                if (Elem a = v.alpha.get(r, c)) sys.set(eq, (i - 1) * p + r, sys.get(eq, (i - 1) * p + r) ^ a);
                if (Elem b = v.beta.get(r, c)) sys.set(eq, i * p + r, sys.get(eq, i * p + r) ^ b);
            }
        }
    }
    for (std::size_t i = 1; i <= eps; ++i)
        for (std::size_t j = 1; j <= eps; ++j, ++eq) {
            for (std::size_t r = 0; r < p; ++r)
                if (Elem x = vchain[j - 1][r]) sys.set(eq, (i - 1) * p + r, x);
            rhs[eq] = (i == j) ? 1 : 0;
        }
    auto sol = sys.solve(rhs);
    check(sol.has_value(), "wide retraction unsolvable");
    std::vector<Vec> sfun;
    for (std::size_t i = 0; i < eps; ++i)
        sfun.push_back(Vec(sol->begin() + std::ptrdiff_t(i * p), sol->begin() + std::ptrdiff_t((i + 1) * p)));
    std::vector<Vec> ufun;
    ufun.push_back(row_times(sfun[0], v.beta));  // r_0
    for (std::size_t i = 0; i < eps; ++i) ufun.push_back(row_times(sfun[i], v.alpha));

    PencilView next = restrict_view(v, ufun, sfun);
    check(next.q() == q - (eps + 1) && next.p() == p - eps, "wide complement dims");
    v = std::move(next);
    return blk;
}

// Peels one tall block (an M string). The functional chain zeta cuts the
// complement; a section solve produces the block basis.
PencilBlock peel_tall(PencilView& v, const std::vector<Vec>& zeta) {
    const FieldSpec f = v.field;
    const std::size_t n = zeta.size() - 1;
    check(n >= 1, "tall chain of length 0 is a zero row");
    const std::size_t p = v.p(), q = v.q();

    // Section y_1..y_n: beta y_i = alpha y_{i+1}, and (zeta_j beta)(y_i) = delta_{j, n-i}.
    std::vector<Vec> eta(n);  // eta[j] = zeta_j * beta, j = 0..n-1
    for (std::size_t j = 0; j < n; ++j) eta[j] = row_times(zeta[j], v.beta);

    const std::size_t vars = n * q;
    const std::size_t rows = (n - 1) * p + n * n;
    ExactMatrix sys(f, rows, vars);
    Vec rhs(rows, 0);
    std::size_t eq = 0;
    for (std::size_t i = 1; i + 1 <= n; ++i) {
        // beta y_i + alpha y_{i+1} = 0 rowwise
        for (std::size_t r = 0; r < p; ++r, ++eq) {
            for (std::size_t c = 0; c < q; ++c) {
                if (Elem b = v.beta.get(r, c)) sys.set(eq, (i - 1) * q + c, sys.get(eq, (i - 1) * q + c) ^ b);
                if (Elem a = v.alpha.get(r, c)) sys.set(eq, i * q + c, sys.get(eq, i * q + c) ^ a);
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 1; i <= n; ++i, ++eq) {
            for (std::size_t c = 0; c < q; ++c)
                if (Elem x = eta[j][c]) sys.set(eq, (i - 1) * q + c, x);
            rhs[eq] = (j == n - i) ? 1 : 0;
        }
    auto sol = sys.solve(rhs);
    check(sol.has_value(), "tall section unsolvable");
    std::vector<Vec> ys;
    for (std::size_t i = 0; i < n; ++i)
        ys.push_back(Vec(sol->begin() + std::ptrdiff_t(i * q), sol->begin() + std::ptrdiff_t((i + 1) * q)));

    PencilBlock blk;
    blk.label = IndecompLabel::m(int(n));
    for (const Vec& y : ys) blk.uvecs.push_back(lift_through_f(f, v.ucols, y));

    if (n == q) {
        check(n + 1 == p, "tall block dimension bookkeeping");
        v = PencilView{f, ExactMatrix(f, 0, 0), ExactMatrix(f, 0, 0), {}, {}};
        return blk;
    }
    std::vector<Vec> sfun(zeta.begin(), zeta.end());
    PencilView next = restrict_view(v, eta, sfun);
    check(next.q() == q - n && next.p() == p - (n + 1), "tall complement dims");
    v = std::move(next);
    return blk;
}

Subspace stabilize_chain(const ExactMatrix& num, const ExactMatrix& den, Subspace start) {
    // start, then repeatedly preimage_num(den applied); used with start = ker
    // (growing) or start = full (shrinking).
    Subspace cur = std::move(start);
    while (true) {
        Subspace next = preimage(num, map_subspace(den, cur));
        if (next.dim() == cur.dim()) return cur;
        cur = std::move(next);
    }
}

void regular_part(const PencilView& v, std::vector<PencilBlock>& out) {
    const FieldSpec f = v.field;
    const std::size_t q = v.q();
    check(v.p() == q, "regular pencil must be square");
    if (q == 0) return;

    // Generalized eigenspace at infinity: grow from ker alpha through
    // alpha^{-1}(beta .). Finite part: shrink full space through beta^{-1}(alpha .).
    Subspace uinf = stabilize_chain(v.alpha, v.beta, kernel(v.alpha));
    Subspace ufin = stabilize_chain(v.beta, v.alpha, Subspace::full(f, q));
    check(uinf.dim() + ufin.dim() == q, "infinite/finite split dimensions");
    check(subspace_intersect(uinf, ufin).dim() == 0, "infinite/finite split not direct");

    auto restricted_operator = [&](const Subspace& usub, const ExactMatrix& top, const ExactMatrix& bottom) {
        // T = bottom|^{-1} . top restricted to usub: solve bottom's columns.
        const std::size_t k = usub.dim();
        std::vector<Vec> bot_cols;
        for (std::size_t j = 0; j < k; ++j) bot_cols.push_back(bottom.apply(usub.basis_vector(j)));
        ExactMatrix bot = ExactMatrix::from_cols(f, bot_cols, bottom.rows());
        ExactMatrix t(f, k, k);
        for (std::size_t j = 0; j < k; ++j) {
            auto c = bot.solve(top.apply(usub.basis_vector(j)));
            check(c.has_value(), "regular part operator not defined");
            for (std::size_t i = 0; i < k; ++i) t.set(i, j, (*c)[i]);
        }
        return t;
    };

    if (ufin.dim() > 0) {
        // alpha invertible here; T = alpha^{-1} beta, elementary divisor f^h -> E(f, h).
        ExactMatrix t = restricted_operator(ufin, v.beta, v.alpha);
        for (const CyclicChain& ch : cyclic_decomposition(t)) {
            PencilBlock blk;
            blk.label = IndecompLabel::e(ch.factor, ch.height);
            const int m = ch.height * ch.factor.degree();
            Vec cur = ch.generator;
            for (int i = 0; i < m; ++i) {
                Vec ucoord(q, 0);
                for (std::size_t r = 0; r < ufin.dim(); ++r)
                    if (cur[r])
                        for (std::size_t j = 0; j < q; ++j)
                            if (ufin.basis_vector(r)[j]) ucoord[j] ^= fmul(f, cur[r], ufin.basis_vector(r)[j]);
                blk.uvecs.push_back(lift_through_f(f, v.ucols, ucoord));
                cur = t.apply(cur);
            }
            out.push_back(std::move(blk));
        }
    }
    if (uinf.dim() > 0) {
        // beta invertible here; T = beta^{-1} alpha nilpotent, Jordan chain of
        // height h -> EInf(h), with u_i = T^{h-1-i} g.
        ExactMatrix t = restricted_operator(uinf, v.alpha, v.beta);
        for (const CyclicChain& ch : cyclic_decomposition(t)) {
            check(ch.factor == FieldPoly::t(f), "infinite part is not nilpotent");
            PencilBlock blk;
            blk.label = IndecompLabel::einf(ch.height);
            std::vector<Vec> descending;
            Vec cur = ch.generator;
            for (int i = 0; i < ch.height; ++i) {
                descending.push_back(cur);
                cur = t.apply(cur);
            }
            // descending[j] = T^j g; u_i = T^{h-1-i} g
            for (int i = 0; i < ch.height; ++i) {
                const Vec& local = descending[std::size_t(ch.height - 1 - i)];
                Vec ucoord(q, 0);
                for (std::size_t r = 0; r < uinf.dim(); ++r)
                    if (local[r])
                        for (std::size_t j = 0; j < q; ++j)
                            if (uinf.basis_vector(r)[j]) ucoord[j] ^= fmul(f, local[r], uinf.basis_vector(r)[j]);
                blk.uvecs.push_back(lift_through_f(f, v.ucols, ucoord));
            }
            out.push_back(std::move(blk));
        }
    }
}

std::vector<PencilBlock> decompose_pencil(FieldSpec f, ExactMatrix alpha, ExactMatrix beta) {
    std::vector<PencilBlock> out;
    PencilView v;
    v.field = f;
    v.alpha = std::move(alpha);
    v.beta = std::move(beta);
    for (std::size_t j = 0; j < v.q(); ++j) {
        Vec e(v.q(), 0);
        e[j] = 1;
        v.ucols.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < v.p(); ++i) {
        Vec e(v.p(), 0);
        e[i] = 1;
        v.scols.push_back(std::move(e));
    }
    while (true) {
        if (v.q() == 0 && v.p() == 0) break;
        check(v.q() > 0 && v.p() > 0, "pencil with dangling rows/columns");
        if (auto wide = minimal_closed_chain(v.alpha, v.beta)) {
            out.push_back(peel_wide(v, *wide));
            continue;
        }
        ExactMatrix at = v.alpha.transpose(), bt = v.beta.transpose();
        if (auto tall = minimal_closed_chain(at, bt)) {
            out.push_back(peel_tall(v, *tall));
            continue;
        }
        regular_part(v, out);
        break;
    }
    return out;
}

} // namespace

FieldPoly vector_order(const ExactMatrix& t, const Vec& v) {
    const FieldSpec f = t.field();
    const std::size_t n = t.rows();
    // Krylov rows augmented with combination-tracking tail.
    ExactMatrix work(f, 0, 0);
    std::vector<Vec> rows;
    Vec cur = v;
    for (std::size_t j = 0; j <= n; ++j) {
        Vec aug(n + n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) aug[i] = cur[i];
        aug[n + j] = 1;
        rows.push_back(aug);
        ExactMatrix m = ExactMatrix::from_rows(f, rows, n + n + 1);
        // reduce; a row whose left part vanished yields the order polynomial
        ExactMatrix red = m;
        red.rref_in_place();
        for (std::size_t r = 0; r < red.rows(); ++r) {
            bool left_zero = true;
            for (std::size_t c2 = 0; c2 < n && left_zero; ++c2)
                if (red.get(r, c2)) left_zero = false;
            if (!left_zero) continue;
            std::vector<Elem> coeffs;
            for (std::size_t c2 = 0; c2 <= j; ++c2) coeffs.push_back(red.get(r, n + c2));
            if (std::all_of(coeffs.begin(), coeffs.end(), [](Elem x) { return x == 0; })) continue;
            return FieldPoly(f, coeffs).monic();
        }
        cur = t.apply(cur);
    }
    fail(Errc::Internal, "vector_order found no annihilator");
}

FieldPoly min_poly(const ExactMatrix& t) {
    const FieldSpec f = t.field();
    const std::size_t n = t.rows();
    FieldPoly mu = FieldPoly::one(f);
    for (std::size_t i = 0; i < n; ++i) {
        if (mu.degree() == int(n)) break;
        Vec e(n, 0);
        e[i] = 1;
        FieldPoly g = vector_order(t, e);
        FieldPoly gc = poly_gcd(mu, g);
        mu = mu * (g / gc);
    }
    return mu.monic();
}

ExactMatrix eval_poly(const FieldPoly& g, const ExactMatrix& t) {
    const FieldSpec f = t.field();
    const std::size_t n = t.rows();
    ExactMatrix acc(f, n, n);
    for (int i = g.degree(); i >= 0; --i) {
        acc = acc * t;
        const Elem c = g.coeff(i);
        if (c)
            for (std::size_t d = 0; d < n; ++d) acc.set(d, d, acc.get(d, d) ^ c);
    }
    return acc;
}

namespace {

// Cyclic decomposition inside one primary component (min poly a power of f).
void primary_cyclic(const ExactMatrix& t, const FieldPoly& f_irr,
                    std::vector<std::pair<Vec, int>>& gens) {
    const FieldSpec f = t.field();
    const std::size_t n = t.rows();
    if (n == 0) return;
    const ExactMatrix ft = eval_poly(f_irr, t);

    // powers of f(T) for height queries
    std::vector<ExactMatrix> fpow{ExactMatrix::identity(f, n)};
    while (!fpow.back().is_zero()) fpow.push_back(fpow.back() * ft);
    const int s = int(fpow.size()) - 1;  // min poly exponent

    // first standard vector of maximal height
    Vec v;
    for (std::size_t i = 0; i < n && v.empty(); ++i) {
        Vec e(n, 0);
        e[i] = 1;
        if (!vec_is_zero(fpow[std::size_t(s - 1)].apply(e))) v = e;
    }
    check(!v.empty(), "primary component without a maximal-height vector");

    const int m = s * f_irr.degree();
    std::vector<Vec> krylov;
    Vec cur = v;
    for (int i = 0; i < m; ++i) {
        krylov.push_back(cur);
        cur = t.apply(cur);
    }
    Subspace z = Subspace::from_vectors(f, krylov, n);
    check(z.dim() == std::size_t(m), "cyclic subspace dimension");
    ExactMatrix kry_cols = ExactMatrix::from_cols(f, krylov, n);

    if (z.dim() == n) {
        gens.push_back({v, s});
        return;
    }

    // quotient by Z on non-pivot coordinates
    std::vector<bool> is_pivot(n, false);
    for (std::size_t pcol : z.pivots()) is_pivot[pcol] = true;
    std::vector<std::size_t> rep;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) rep.push_back(j);
    const std::size_t nq = rep.size();
    auto project = [&](const Vec& x) {
        Vec red = z.reduce(x);
        Vec out(nq, 0);
        for (std::size_t i = 0; i < nq; ++i) out[i] = red[rep[i]];
        return out;
    };
    ExactMatrix tq(f, nq, nq);
    for (std::size_t j = 0; j < nq; ++j) {
        Vec unit(n, 0);
        unit[rep[j]] = 1;
        Vec img = project(t.apply(unit));
        for (std::size_t i = 0; i < nq; ++i) tq.set(i, j, img[i]);
    }
    std::vector<std::pair<Vec, int>> sub;
    primary_cyclic(tq, f_irr, sub);

    gens.push_back({v, s});
    for (auto& [gbar, h] : sub) {
        // lift and correct so the lift has order exactly f^h
        Vec w(n, 0);
        for (std::size_t i = 0; i < nq; ++i) w[rep[i]] = gbar[i];
        Vec zpart = fpow[std::size_t(h)].apply(w);
        auto coords = kry_cols.solve(zpart);
        check(coords.has_value(), "quotient lift lands outside the cyclic subspace");
        FieldPoly g(f, *coords);
        FieldPoly fh = poly_power(f_irr, unsigned(h));
        auto [quo, rem] = g.divmod(fh);
        check(rem.is_zero(), "lift correction is not divisible");
        Vec corr = eval_poly(quo, t).apply(v);
        for (std::size_t i = 0; i < n; ++i) w[i] ^= corr[i];
        check(vec_is_zero(fpow[std::size_t(h)].apply(w)), "corrected lift has wrong order");
        gens.push_back({w, h});
    }
}

} // namespace

std::vector<CyclicChain> cyclic_decomposition(const ExactMatrix& t) {
    const FieldSpec f = t.field();
    const std::size_t n = t.rows();
    std::vector<CyclicChain> out;
    if (n == 0) return out;
    FieldPoly mu = min_poly(t);
    auto factors = poly_factor(mu);
    std::size_t total = 0;
    for (const auto& [fi, si] : factors) {
        ExactMatrix proj = eval_poly(poly_power(fi, unsigned(si)), t);
        Subspace comp = kernel(proj);
        // restrict t to the primary component
        const std::size_t k = comp.dim();
        ExactMatrix tr(f, k, k);
        for (std::size_t j = 0; j < k; ++j) {
            auto c = comp.coordinates(t.apply(comp.basis_vector(j)));
            check(c.has_value(), "primary component not invariant");
            for (std::size_t i = 0; i < k; ++i) tr.set(i, j, (*c)[i]);
        }
        std::vector<std::pair<Vec, int>> gens;
        primary_cyclic(tr, fi, gens);
        std::sort(gens.begin(), gens.end(),
                  [](const auto& a, const auto& b) { return a.second > b.second; });
        for (auto& [g, h] : gens) {
            CyclicChain ch;
            ch.factor = fi;
            ch.height = h;
            Vec amb(n, 0);
            for (std::size_t r = 0; r < k; ++r)
                if (g[r])
                    for (std::size_t j = 0; j < n; ++j)
                        if (comp.basis_vector(r)[j]) amb[j] ^= fmul(f, g[r], comp.basis_vector(r)[j]);
            ch.generator = std::move(amb);
            total += std::size_t(h * fi.degree());
            out.push_back(std::move(ch));
        }
    }
    check(total == n, "cyclic decomposition dimension mismatch");
    return out;
}

std::vector<Block> decompose_into_blocks(const KV4Module& m) {
    const FieldSpec f = m.field();
    const std::size_t d = m.dim();
    std::vector<Block> blocks;
    if (d == 0) return blocks;

    // 1. Free summands: rank of AB counts them; each pivot column generates
    //    a free block, and the complement is cut out by the retraction built
    //    from functionals pairing against the socle components.
    ExactMatrix ab = m.A() * m.B();
    {
        ExactMatrix r = ab;
        std::vector<std::size_t> pivots;
        {
            ExactMatrix rr = ab;
            // pivot columns of AB in column space: use rref of AB
            pivots = rr.rref_in_place();
        }
        if (!pivots.empty()) {
            const std::size_t rk = pivots.size();
            std::vector<Vec> gens;
            for (std::size_t c : pivots) {
                Vec e(d, 0);
                e[c] = 1;
                gens.push_back(std::move(e));
            }
            std::vector<Vec> fbasis;  // w, Aw, Bw, ABw per generator
            for (const Vec& w : gens) {
                fbasis.push_back(w);
                fbasis.push_back(m.A().apply(w));
                fbasis.push_back(m.B().apply(w));
                fbasis.push_back(ab.apply(w));
            }
            ExactMatrix g = ExactMatrix::from_cols(f, fbasis, d);
            check(g.rank() == 4 * rk, "free generators are not independent");
            // mu_i: vanish on all free basis vectors except AB w_i -> 1
            ExactMatrix gt = g.transpose();
            std::vector<Vec> cutters;
            for (std::size_t i = 0; i < rk; ++i) {
                Vec rhs(4 * rk, 0);
                rhs[4 * i + 3] = 1;
                auto mu = gt.solve(rhs);
                check(mu.has_value(), "free retraction unsolvable");
                cutters.push_back(*mu);
                cutters.push_back(row_times(*mu, m.A()));
                cutters.push_back(row_times(*mu, m.B()));
                cutters.push_back(row_times(*mu, ab));
            }
            Subspace comp = kernel(ExactMatrix::from_rows(f, cutters, d));
            check(comp.dim() == d - 4 * rk, "free complement dimension");
            for (std::size_t i = 0; i < rk; ++i) {
                Block b;
                b.label = IndecompLabel::reg();
                b.basis = {fbasis[4 * i], fbasis[4 * i + 1], fbasis[4 * i + 2], fbasis[4 * i + 3]};
                blocks.push_back(std::move(b));
            }
            SubmoduleResult sub = submodule_on(m, comp);
            std::vector<Block> rest = decompose_into_blocks(sub.module);
            for (Block& b : rest) {
                for (Vec& v : b.basis) v = sub.inclusion.matrix.apply(v);
                blocks.push_back(std::move(b));
            }
            return blocks;
        }
    }

    // 2. Projective-free: rad is contained in soc; socle vectors outside the
    //    radical split off as trivial summands.
    check(ab.is_zero(), "projective-free part still has AB != 0");
    Subspace soc = socle(m);
    Subspace rad = radical(m);
    check(rad.dim() <= soc.dim() && soc.contains(rad), "radical not inside socle");
    {
        Subspace grow = rad;
        for (std::size_t i = 0; i < soc.dim(); ++i) {
            Vec cand = soc.basis_vector(i);
            if (grow.contains(cand)) continue;
            grow = subspace_sum(grow, Subspace::from_vectors(f, {cand}, d));
            Block b;
            b.label = IndecompLabel::triv();
            b.basis = {cand};
            blocks.push_back(std::move(b));
        }
        check(grow.dim() == soc.dim(), "trivial split-off incomplete");
    }

    // 3. Core pencil on complement-of-socle coordinates against the radical.
    std::vector<std::size_t> urep;
    {
        std::vector<bool> is_pivot(d, false);
        for (std::size_t pcol : soc.pivots()) is_pivot[pcol] = true;
        for (std::size_t j = 0; j < d; ++j)
            if (!is_pivot[j]) urep.push_back(j);
    }
    const std::size_t q = urep.size();
    const std::size_t p = rad.dim();
    if (q == 0) {
        check(p == 0, "radical without generators above it");
        return blocks;
    }
    ExactMatrix alpha(f, p, q), beta(f, p, q);
    std::vector<Vec> ucols;
    for (std::size_t j = 0; j < q; ++j) {
        Vec unit(d, 0);
        unit[urep[j]] = 1;
        auto ac = rad.coordinates(m.A().apply(unit));
        auto bc = rad.coordinates(m.B().apply(unit));
        check(ac.has_value() && bc.has_value(), "action does not land in the radical");
        for (std::size_t i = 0; i < p; ++i) {
            alpha.set(i, j, (*ac)[i]);
            beta.set(i, j, (*bc)[i]);
        }
        ucols.push_back(std::move(unit));
    }

    for (PencilBlock& pb : decompose_pencil(f, alpha, beta)) {
        Block b;
        b.label = pb.label;
        std::vector<Vec> us;
        for (const Vec& uq : pb.uvecs) {
            Vec vmod(d, 0);
            for (std::size_t j = 0; j < q; ++j)
                if (uq[j])
                    for (std::size_t r = 0; r < d; ++r)
                        if (ucols[j][r]) vmod[r] ^= fmul(f, uq[j], ucols[j][r]);
            us.push_back(std::move(vmod));
        }
        // v-row from the module action so the block matrices are exact
        using Kind = IndecompLabel::Kind;
        std::vector<Vec> vs;
        switch (pb.label.kind) {
            case Kind::W:
                for (std::size_t i = 1; i < us.size(); ++i) vs.push_back(m.A().apply(us[i]));
                break;
            case Kind::M:
                vs.push_back(m.A().apply(us[0]));
                for (const Vec& y : us) vs.push_back(m.B().apply(y));
                break;
            case Kind::E:
                for (const Vec& u : us) vs.push_back(m.A().apply(u));
                break;
            case Kind::EInf:
                for (const Vec& u : us) vs.push_back(m.B().apply(u));
                break;
            default:
                internal("unexpected pencil block kind");
        }
        b.basis = std::move(us);
        for (Vec& vv : vs) b.basis.push_back(std::move(vv));
        check(b.basis.size() == pb.label.dim(), "block basis size mismatch");
        blocks.push_back(std::move(b));
    }
    return blocks;
}

} // namespace kleinperm::detail
