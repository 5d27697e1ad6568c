#include "kleinperm/matrix.hpp"

#include <algorithm>
#include <cstring>

namespace kleinperm {

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(Errc::DimensionMismatch, "vector length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] ^ b[i];
    return r;
}

bool vec_is_zero(const Vec& v) {
    for (Elem x : v)
        if (x != 0) return false;
    return true;
}

ExactMatrix::ExactMatrix(FieldSpec f, std::size_t rows, std::size_t cols)
    : f_(f), r_(rows), c_(cols), bits_(f.degree), epw_(64 / std::size_t(f.degree)),
      wpr_((cols + 64 / std::size_t(f.degree) - 1) / (64 / std::size_t(f.degree))),
      w_(rows * wpr_, 0) {}

ExactMatrix ExactMatrix::identity(FieldSpec f, std::size_t n) {
    ExactMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

ExactMatrix ExactMatrix::from_rows(FieldSpec f, const std::vector<Vec>& rows, std::size_t cols) {
    ExactMatrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

ExactMatrix ExactMatrix::from_cols(FieldSpec f, const std::vector<Vec>& cols, std::size_t rows) {
    ExactMatrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) fail(Errc::DimensionMismatch, "column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
    }
    return m;
}

Elem ExactMatrix::get(std::size_t r, std::size_t c) const {
    const std::uint64_t word = w_[r * wpr_ + c / epw_];
    return (word >> ((c % epw_) * std::size_t(bits_))) & f_.mask();
}

void ExactMatrix::set(std::size_t r, std::size_t c, Elem v) {
    std::uint64_t& word = w_[r * wpr_ + c / epw_];
    const std::size_t shift = (c % epw_) * std::size_t(bits_);
    word = (word & ~(f_.mask() << shift)) | ((v & f_.mask()) << shift);
}

Vec ExactMatrix::row(std::size_t r) const {
    Vec v(c_);
    for (std::size_t j = 0; j < c_; ++j) v[j] = get(r, j);
    return v;
}

Vec ExactMatrix::col(std::size_t c) const {
    Vec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = get(i, c);
    return v;
}

void ExactMatrix::set_row(std::size_t r, const Vec& v) {
    if (v.size() != c_) fail(Errc::DimensionMismatch, "row length mismatch");
    for (std::size_t j = 0; j < c_; ++j) set(r, j, v[j]);
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    return f_ == o.f_ && r_ == o.r_ && c_ == o.c_ && w_ == o.w_;
}

bool ExactMatrix::is_zero() const {
    for (std::uint64_t w : w_)
        if (w) return false;
    return true;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_ || !(f_ == o.f_)) fail(Errc::DimensionMismatch, "matrix shape mismatch in +");
    ExactMatrix m = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) m.w_[i] ^= o.w_[i];
    return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (c_ != o.r_ || !(f_ == o.f_)) fail(Errc::DimensionMismatch, "matrix shape mismatch in *");
    ExactMatrix m(f_, r_, o.c_);
    if (bits_ == 1) {
        for (std::size_t i = 0; i < r_; ++i) {
            std::uint64_t* dst = &m.w_[i * m.wpr_];
            for (std::size_t k = 0; k < c_; ++k) {
                if (get(i, k)) {
                    const std::uint64_t* src = &o.w_[k * o.wpr_];
                    for (std::size_t w = 0; w < o.wpr_; ++w) dst[w] ^= src[w];
                }
            }
        }
    } else {
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const Elem a = get(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.c_; ++j) {
                    const Elem b = o.get(k, j);
                    if (b) m.set(i, j, m.get(i, j) ^ fmul(f_, a, b));
                }
            }
    }
    return m;
}

Vec ExactMatrix::apply(const Vec& x) const {
    if (x.size() != c_) fail(Errc::DimensionMismatch, "vector length mismatch in apply");
    Vec y(r_, 0);
    for (std::size_t i = 0; i < r_; ++i) {
        Elem acc = 0;
        for (std::size_t j = 0; j < c_; ++j) {
            const Elem a = get(i, j);
            if (a && x[j]) acc ^= fmul(f_, a, x[j]);
        }
        y[i] = acc;
    }
    return y;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix m(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) {
            const Elem v = get(i, j);
            if (v) m.set(j, i, v);
        }
    return m;
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& right) const {
    if (r_ != right.r_) fail(Errc::DimensionMismatch, "hstack row mismatch");
    ExactMatrix m(f_, r_, c_ + right.c_);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < c_; ++j) m.set(i, j, get(i, j));
        for (std::size_t j = 0; j < right.c_; ++j) m.set(i, c_ + j, right.get(i, j));
    }
    return m;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& below) const {
    if (c_ != below.c_) fail(Errc::DimensionMismatch, "vstack col mismatch");
    ExactMatrix m(f_, r_ + below.r_, c_);
    std::copy(w_.begin(), w_.end(), m.w_.begin());
    std::copy(below.w_.begin(), below.w_.end(), m.w_.begin() + std::ptrdiff_t(r_ * wpr_));
    return m;
}

ExactMatrix ExactMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    ExactMatrix m(f_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m.set(i, j, get(r0 + i, c0 + j));
    return m;
}

void ExactMatrix::row_xor(std::size_t dst, std::size_t src) {
    std::uint64_t* d = &w_[dst * wpr_];
    const std::uint64_t* s = &w_[src * wpr_];
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void ExactMatrix::row_addmul(std::size_t dst, std::size_t src, Elem factor) {
    if (factor == 0) return;
    if (factor == 1) {
        row_xor(dst, src);
        return;
    }
    for (std::size_t j = 0; j < c_; ++j) {
        const Elem s = get(src, j);
        if (s) set(dst, j, get(dst, j) ^ fmul(f_, factor, s));
    }
}

void ExactMatrix::row_scale(std::size_t r, Elem factor) {
    if (factor == 1) return;
    for (std::size_t j = 0; j < c_; ++j) {
        const Elem v = get(r, j);
        if (v) set(r, j, fmul(f_, factor, v));
    }
}

void ExactMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < wpr_; ++w) std::swap(w_[a * wpr_ + w], w_[b * wpr_ + w]);
}

std::vector<std::size_t> ExactMatrix::rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t cur = 0;
    for (std::size_t col = 0; col < c_ && cur < r_; ++col) {
        std::size_t p = cur;
        while (p < r_ && get(p, col) == 0) ++p;
        if (p == r_) continue;
        swap_rows(p, cur);
        const Elem inv = finv(f_, get(cur, col));
        row_scale(cur, inv);
        for (std::size_t r = 0; r < r_; ++r) {
            if (r == cur) continue;
            const Elem v = get(r, col);
            if (v) row_addmul(r, cur, v);
        }
        pivots.push_back(col);
        ++cur;
    }
    return pivots;
}

std::size_t ExactMatrix::rank() const {
    ExactMatrix m = *this;
    return m.rref_in_place().size();
}

std::optional<ExactMatrix> ExactMatrix::inverse() const {
    if (r_ != c_) return std::nullopt;
    ExactMatrix aug = hstack(identity(f_, r_));
    auto pivots = aug.rref_in_place();
    if (pivots.size() != r_) return std::nullopt;
    for (std::size_t i = 0; i < r_; ++i)
        if (pivots[i] != i) return std::nullopt;
    return aug.submatrix(0, c_, r_, r_);
}

std::optional<Vec> ExactMatrix::solve(const Vec& rhs) const {
    if (rhs.size() != r_) fail(Errc::DimensionMismatch, "rhs length mismatch in solve");
    ExactMatrix aug(f_, r_, c_ + 1);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < c_; ++j) aug.set(i, j, get(i, j));
        aug.set(i, c_, rhs[i]);
    }
    auto pivots = aug.rref_in_place();
    if (!pivots.empty() && pivots.back() == c_) return std::nullopt;  // inconsistent
    Vec x(c_, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.get(i, c_);
    return x;
}

ExactMatrix ExactMatrix::kernel_basis() const {
    ExactMatrix m = *this;
    auto pivots = m.rref_in_place();
    std::vector<bool> is_pivot(c_, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < c_; ++j) {
        if (is_pivot[j]) continue;
        Vec v(c_, 0);
        v[j] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            const Elem val = m.get(i, j);
            if (val && pivots[i] < c_) v[pivots[i]] = val;  // char 2: -v = v
        }
        basis.push_back(std::move(v));
    }
    return from_rows(f_, basis, c_);
}

Subspace Subspace::zero(FieldSpec f, std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = ExactMatrix(f, 0, ambient);
    return s;
}

Subspace Subspace::full(FieldSpec f, std::size_t ambient) {
    return from_rows(ExactMatrix::identity(f, ambient));
}

Subspace Subspace::from_rows(const ExactMatrix& rows) {
    ExactMatrix m = rows;
    auto pivots = m.rref_in_place();
    Subspace s;
    s.ambient_ = rows.cols();
    s.basis_ = m.submatrix(0, 0, pivots.size(), rows.cols());
    s.pivots_ = std::move(pivots);
    return s;
}

Subspace Subspace::from_vectors(FieldSpec f, const std::vector<Vec>& vs, std::size_t ambient) {
    return from_rows(ExactMatrix::from_rows(f, vs, ambient));
}

Vec Subspace::reduce(const Vec& v) const {
    if (v.size() != ambient_) fail(Errc::AmbientMismatch, "vector/ambient mismatch");
    Vec r = v;
    const FieldSpec f = basis_.field();
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Elem c = r[pivots_[i]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < ambient_; ++j) {
            const Elem b = basis_.get(i, j);
            if (b) r[j] ^= fmul(f, c, b);
        }
    }
    return r;
}

bool Subspace::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
    if (ambient_ != o.ambient_) fail(Errc::AmbientMismatch, "subspace ambient mismatch");
    for (std::size_t i = 0; i < o.dim(); ++i)
        if (!contains(o.basis_.row(i))) return false;
    return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    Vec r = v;
    Vec coords(dim(), 0);
    const FieldSpec f = basis_.field();
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Elem c = r[pivots_[i]];
        if (c == 0) continue;
        coords[i] = c;
        for (std::size_t j = 0; j < ambient_; ++j) {
            const Elem b = basis_.get(i, j);
            if (b) r[j] ^= fmul(f, c, b);
        }
    }
    if (!vec_is_zero(r)) return std::nullopt;
    return coords;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient()) fail(Errc::AmbientMismatch, "subspace_sum ambient mismatch");
    return Subspace::from_rows(u.basis().vstack(v.basis()));
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient()) fail(Errc::AmbientMismatch, "subspace_intersect ambient mismatch");
    const FieldSpec f = u.basis().field();
    const std::size_t d = u.ambient();
    // Zassenhaus: rows [U | U] and [V | 0]; rows of the echelon form with zero
    // left half have right half spanning the intersection.
    ExactMatrix z(f, u.dim() + v.dim(), 2 * d);
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Elem x = u.basis().get(i, j);
            if (x) {
                z.set(i, j, x);
                z.set(i, d + j, x);
            }
        }
    for (std::size_t i = 0; i < v.dim(); ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Elem x = v.basis().get(i, j);
            if (x) z.set(u.dim() + i, j, x);
        }
    z.rref_in_place();
    std::vector<Vec> inter;
    for (std::size_t i = 0; i < z.rows(); ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < d && left_zero; ++j)
            if (z.get(i, j)) left_zero = false;
        if (!left_zero) continue;
        Vec r(d);
        bool nonzero = false;
        for (std::size_t j = 0; j < d; ++j) {
            r[j] = z.get(i, d + j);
            nonzero |= (r[j] != 0);
        }
        if (nonzero) inter.push_back(std::move(r));
    }
    return Subspace::from_vectors(f, inter, d);
}

Subspace image(const ExactMatrix& m) { return Subspace::from_rows(m.transpose()); }

Subspace kernel(const ExactMatrix& m) { return Subspace::from_rows(m.kernel_basis()); }

ExactMatrix annihilator(const Subspace& s) {
    // Functionals lambda with lambda . v = 0 for all v in s: kernel of basis(s).
    return s.basis().kernel_basis();
}

Subspace preimage(const ExactMatrix& m, const Subspace& s) {
    if (m.rows() != s.ambient()) fail(Errc::DimensionMismatch, "preimage shape mismatch");
    ExactMatrix ann = annihilator(s);
    return kernel(ann * m);
}

Subspace map_subspace(const ExactMatrix& m, const Subspace& s) {
    if (m.cols() != s.ambient()) fail(Errc::DimensionMismatch, "map_subspace shape mismatch");
    std::vector<Vec> imgs;
    for (std::size_t i = 0; i < s.dim(); ++i) imgs.push_back(m.apply(s.basis_vector(i)));
    return Subspace::from_vectors(m.field(), imgs, m.rows());
}

} // namespace kleinperm
