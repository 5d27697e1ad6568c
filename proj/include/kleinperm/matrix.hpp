#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kleinperm/field.hpp"

namespace kleinperm {

using Vec = std::vector<Elem>;

Vec vec_add(const Vec& a, const Vec& b);
bool vec_is_zero(const Vec& v);

/// Dense matrix over GF(2^e). Rows are packed words, e bits per entry, so
/// row addition is a word-wise XOR for any e (characteristic 2). Over GF(2)
/// elimination and multiplication run word-parallel.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(FieldSpec f, std::size_t rows, std::size_t cols);

    static ExactMatrix identity(FieldSpec f, std::size_t n);
    static ExactMatrix from_rows(FieldSpec f, const std::vector<Vec>& rows, std::size_t cols);
    static ExactMatrix from_cols(FieldSpec f, const std::vector<Vec>& cols, std::size_t rows);

    const FieldSpec& field() const { return f_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Elem get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Elem v);

    Vec row(std::size_t r) const;
    Vec col(std::size_t c) const;
    void set_row(std::size_t r, const Vec& v);

    bool operator==(const ExactMatrix& o) const;
    bool is_zero() const;

    ExactMatrix operator+(const ExactMatrix& o) const;
    ExactMatrix operator*(const ExactMatrix& o) const;
    Vec apply(const Vec& x) const;  // matrix * column vector

    ExactMatrix transpose() const;
    ExactMatrix hstack(const ExactMatrix& right) const;
    ExactMatrix vstack(const ExactMatrix& below) const;
    ExactMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    /// In-place row-reduction to RREF. Deterministic: leftmost pivot, first
    /// nonzero row below the cursor. Returns pivot column indices.
    std::vector<std::size_t> rref_in_place();

    std::size_t rank() const;
    std::optional<ExactMatrix> inverse() const;
    std::optional<Vec> solve(const Vec& rhs) const;  // any solution of A x = rhs
    ExactMatrix kernel_basis() const;                // rows span the right null space

    // internal row kernels (exposed for elimination-style algorithms)
    void row_xor(std::size_t dst, std::size_t src);
    void row_addmul(std::size_t dst, std::size_t src, Elem factor);
    void row_scale(std::size_t r, Elem factor);
    void swap_rows(std::size_t a, std::size_t b);

private:
    FieldSpec f_;
    std::size_t r_ = 0, c_ = 0;
    int bits_ = 1;          // bits per entry
    std::size_t epw_ = 64;  // entries per word
    std::size_t wpr_ = 0;   // words per row
    std::vector<std::uint64_t> w_;
};

/// Subspace of k^ambient in canonical form: basis rows in RREF with strictly
/// increasing pivots. Equality of subspaces is matrix equality.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(FieldSpec f, std::size_t ambient);
    static Subspace full(FieldSpec f, std::size_t ambient);
    static Subspace from_rows(const ExactMatrix& rows);
    static Subspace from_vectors(FieldSpec f, const std::vector<Vec>& vs, std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const ExactMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& o) const;
    /// v reduced modulo the subspace (pivot coordinates eliminated).
    Vec reduce(const Vec& v) const;
    /// Coordinates of v in the RREF basis; nullopt when v is outside.
    std::optional<Vec> coordinates(const Vec& v) const;

private:
    std::size_t ambient_ = 0;
    ExactMatrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);  // Zassenhaus

Subspace image(const ExactMatrix& m);        // column space
Subspace kernel(const ExactMatrix& m);       // right null space
/// Functionals vanishing on s, as rows of a matrix.
ExactMatrix annihilator(const Subspace& s);
/// {x : m x in s}
Subspace preimage(const ExactMatrix& m, const Subspace& s);
/// Row space of (basis of s) * m^T, i.e. m applied to the subspace.
Subspace map_subspace(const ExactMatrix& m, const Subspace& s);

} // namespace kleinperm
