#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kleinperm/homalg.hpp"

namespace kleinperm {

constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t(1) << 22;

/// The permutation module test: all summands among k, E_t, E_{t+1}, E_inf, kV4.
bool is_permutation(const KV4Module& m, Decomposition* witness = nullptr);
/// No regular (= free = projective) summand.
bool is_projective_free(const KV4Module& m);

/// Minimal permutation resolution of a catalogue label, built from the
/// explicit generator-image recipes; length-2 cases splice degree-wise W3
/// resolutions onto the first-syzygy sequence.
Resolution build_resolution(const IndecompLabel& label, FieldSpec field);

/// Resolution of an arbitrary module: decompose, resolve the block form
/// degree-wise, transport along the change of basis.
Resolution resolve_module(const KV4Module& m);

/// The three even-dimensional permutation kinds.
enum class EKind { Et, Et1, EInf };
const char* ekind_name(EKind k);
IndecompLabel ekind_label(EKind k, FieldSpec field);

struct ESubmodule {
    Subspace span;
    ModuleMap embedding;  // construct(kind) -> m, columns (w, image of w)
};

/// All 2-dimensional stable subspaces isomorphic to the kind: w runs over
/// ker(x) outside the socle for the kind's defining generator x, paired with
/// its image under the complementary generator. Errors when |ker(x)| exceeds
/// the vector budget.
std::vector<ESubmodule> e_submodules(const KV4Module& m, EKind kind,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

/// Predicted dim of ker(a)+ker(a+b)+ker(b) for a non-projective family label.
/// W(1) returns the computed span dimension 3 (the listed spanning set is
/// dependent at n = 1).
std::size_t kersum_span_expected(const IndecompLabel& label);

/// Evidence that no length-one permutation resolution exists: every candidate
/// kernel-of-essential-surjection shape (a quotient of Omega by a direct sum
/// of E-kind submodules) keeps a summand outside the submodule-of-
/// projective-free-permutation list.
struct LowerCertificate {
    IndecompLabel label;
    std::vector<IndecompLabel> omega_labels;

    struct FamilyStat {
        std::string module_desc;   // decomposition of the module inspected
        EKind kind;
        std::size_t line_reps = 0;         // representatives modulo socle translates
        std::uint64_t family_size = 0;     // distinct subspaces
        bool forced_line = true;           // all members share a common line
        std::size_t transvections_checked = 0;
    };
    struct ChainQuotient {
        std::vector<EKind> kinds;          // quotient by one member of each kind, in order
        std::vector<IndecompLabel> quotient_labels;
        std::vector<IndecompLabel> disallowed;  // summands outside the allowed list
    };

    std::vector<FamilyStat> families;
    std::vector<ChainQuotient> chains;
    bool complete = false;   // structural checks all passed
    bool certified = false;  // complete and every chain quotient has a disallowed summand

    std::string to_text() const;
};

/// Allowed indecomposable submodules of projective-free permutation modules:
/// k, E_t, E_{t+1}, E_inf, M_3, M_5.
bool is_allowed_submodule_label(const IndecompLabel& l, FieldSpec field);

LowerCertificate certify_lower(const IndecompLabel& label, FieldSpec field,
                               std::uint64_t budget = kDefaultEnumerationBudget);

struct PpdimResult {
    int lower = 0;
    int upper = 0;
    bool exact = true;
    bool open_question_flag = false;
    Resolution upper_witness;
    Decomposition decomposition;
    std::optional<LowerCertificate> lower_certificate;

    int value() const;  // requires exact
    std::string value_string() const;
};

PpdimResult ppdim_indecomposable(const IndecompLabel& label, FieldSpec field,
                                 std::uint64_t budget = kDefaultEnumerationBudget);
PpdimResult ppdim(const KV4Module& m, std::uint64_t budget = kDefaultEnumerationBudget);

} // namespace kleinperm
