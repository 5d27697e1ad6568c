#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kleinperm/matrix.hpp"

namespace kleinperm {

/// Generators of the augmentation ideal of k[a,b]/(a^2,b^2).
enum class Gen { A, B, APlusB };

/// A module over k[a,b]/(a^2,b^2): a pair of commuting square-zero matrices.
/// Vectors are columns; A and B act on the left. The zero module (dim 0) is a
/// valid value. basis_labels, when present, name the diagram nodes.
class KV4Module {
public:
    KV4Module() : field_(FieldSpec{}), a_(field_, 0, 0), b_(field_, 0, 0) {}

    /// Validates A^2 = B^2 = 0 and AB = BA; throws RelationViolation naming
    /// the failed relation.
    static KV4Module make(FieldSpec field, ExactMatrix a, ExactMatrix b,
                          std::vector<std::string> labels = {});
    static KV4Module zero(FieldSpec field) { return make(field, ExactMatrix(field, 0, 0), ExactMatrix(field, 0, 0)); }

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return a_.rows(); }
    const ExactMatrix& A() const { return a_; }
    const ExactMatrix& B() const { return b_; }
    ExactMatrix action(Gen g) const;
    const std::vector<std::string>& labels() const { return labels_; }
    std::string label_of(std::size_t i) const;

    bool operator==(const KV4Module& o) const { return field_ == o.field_ && a_ == o.a_ && b_ == o.b_; }

private:
    KV4Module(FieldSpec f, ExactMatrix a, ExactMatrix b, std::vector<std::string> labels)
        : field_(f), a_(std::move(a)), b_(std::move(b)), labels_(std::move(labels)) {}

    FieldSpec field_;
    ExactMatrix a_, b_;
    std::vector<std::string> labels_;
};

/// Equivariant map between modules; matrix is target.dim x source.dim.
struct ModuleMap {
    KV4Module source;
    KV4Module target;
    ExactMatrix matrix;

    /// Validates the intertwining relations; throws NotEquivariant.
    static ModuleMap make(KV4Module src, KV4Module tgt, ExactMatrix m);
    /// Skips validation for maps correct by construction.
    static ModuleMap unchecked(KV4Module src, KV4Module tgt, ExactMatrix m);

    bool is_injective() const { return matrix.rank() == source.dim(); }
    bool is_surjective() const { return matrix.rank() == target.dim(); }
};

struct DirectSum {
    KV4Module module;
    std::vector<ModuleMap> inclusions;
    std::vector<ModuleMap> projections;
    std::vector<std::size_t> offsets;  // coordinate offset of each summand
};

DirectSum direct_sum(const std::vector<KV4Module>& ms);

/// Dual module: actions transpose (a = sigma + e is fixed by inversion in
/// characteristic 2, so the dual action of a is A^T).
KV4Module dual(const KV4Module& m);
ModuleMap map_dual(const ModuleMap& phi);

Subspace element_kernel(const KV4Module& m, Gen g);
/// ker(a) + ker(a+b) + ker(b)
Subspace ker_sum(const KV4Module& m);
/// im(A) + im(B)
Subspace radical(const KV4Module& m);
/// ker(A) intersect ker(B)
Subspace socle(const KV4Module& m);
std::size_t head_dim(const KV4Module& m);

struct SubmoduleResult {
    KV4Module module;
    ModuleMap inclusion;
    Subspace span;
};

/// Smallest A,B-stable subspace containing the vectors, with induced action.
SubmoduleResult submodule_generated(const KV4Module& m, const std::vector<Vec>& vectors);
/// Module structure on an A,B-stable subspace (throws NotStable otherwise).
SubmoduleResult submodule_on(const KV4Module& m, const Subspace& s);

struct QuotientResult {
    KV4Module module;
    ModuleMap projection;
};

/// Quotient by a stable subspace; coordinates are the non-pivot positions of
/// the subspace's RREF basis.
QuotientResult quotient(const KV4Module& m, const Subspace& s);

struct KernelResult {
    KV4Module module;
    ModuleMap inclusion;
};

KernelResult map_kernel(const ModuleMap& phi);
Subspace map_image(const ModuleMap& phi);

/// Basis of Hom_{kV4}(m, n), by solving X A_m = A_n X and X B_m = B_n X.
std::vector<ModuleMap> hom_space(const KV4Module& m, const KV4Module& n);

/// `kv4mod v1` text format; bit-exact round trip.
void write_module(std::ostream& os, const KV4Module& m);
KV4Module read_module(std::istream& is);
std::string module_to_string(const KV4Module& m);
KV4Module module_from_string(const std::string& text);

} // namespace kleinperm
