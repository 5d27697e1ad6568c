#pragma once

#include <string>
#include <vector>

#include "kleinperm/module.hpp"

namespace kleinperm {

/// Classification value for an indecomposable: the trivial module, the
/// regular module, the odd-dimensional families M(n)/W(n) of dimension 2n+1,
/// the even-dimensional family E(f, n) for f monic irreducible, or EInf(n)
/// for the parameter at infinity.
struct IndecompLabel {
    enum class Kind { Triv, Reg, M, W, E, EInf };

    Kind kind = Kind::Triv;
    int n = 0;     // family index (M/W/E/EInf)
    FieldPoly f;   // E only: monic irreducible

    static IndecompLabel triv() { return {Kind::Triv, 0, {}}; }
    static IndecompLabel reg() { return {Kind::Reg, 0, {}}; }
    static IndecompLabel m(int n) { return {Kind::M, n, {}}; }
    static IndecompLabel w(int n) { return {Kind::W, n, {}}; }
    static IndecompLabel e(FieldPoly f, int n) { return {Kind::E, n, std::move(f)}; }
    static IndecompLabel einf(int n) { return {Kind::EInf, n, {}}; }

    std::size_t dim() const;
    bool operator==(const IndecompLabel& o) const;

    /// `k`, `kV4`, `M<2n+1>`, `W<2n+1>`, `E[<poly>,<n>]`, `Einf[<n>]`
    std::string to_string() const;
    static IndecompLabel parse(const std::string& text, FieldSpec field);
};

/// Canonical ordering: Triv < Reg < M < W < E < EInf, then n, then f.
int label_compare(const IndecompLabel& a, const IndecompLabel& b);
bool label_less(const IndecompLabel& a, const IndecompLabel& b);
std::string labels_to_string(const std::vector<IndecompLabel>& ls);

/// Builds the module of a label with its diagram basis: u-row before v-row,
/// each ascending by index.
KV4Module construct(const IndecompLabel& label, FieldSpec field);

/// Index of u_i / v_i in the standard basis of construct(label).
std::size_t u_index(const IndecompLabel& label, int i);
std::size_t v_index(const IndecompLabel& label, int i);

/// The five indecomposable permutation modules: k, E_t, E_{t+1}, E_inf, kV4.
std::vector<std::pair<IndecompLabel, KV4Module>> perm_indecomposables(FieldSpec field);
std::vector<IndecompLabel> perm_indecomposable_labels(FieldSpec field);

/// One generator image of a first-syzygy recipe: the generator of summand
/// `summand` of P0 maps to sum of coeff * (basis vector of the target).
struct GenImage {
    std::size_t summand;
    std::vector<std::pair<Elem, std::size_t>> target;  // (coeff, basis index)
};

/// First stage of the minimal resolution of a label: P0 (as summand labels)
/// and the generator images, as given case by case in the source sequences.
struct ResolutionRecipe {
    IndecompLabel target;
    std::vector<IndecompLabel> p0;
    std::vector<GenImage> images;
    int expected_length = 0;  // 0, 1 or 2
};

ResolutionRecipe resolution_recipe(const IndecompLabel& label, FieldSpec field);

/// Theorem value of ppdim for an indecomposable label (0, 1 or 2).
int ppdim_table_value(const IndecompLabel& label);

} // namespace kleinperm
