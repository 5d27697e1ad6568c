#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kleinperm/errors.hpp"

namespace kleinperm {

/// Element of GF(2^e), stored as the low e bits of a word (bit i = coefficient
/// of t^i of the residue class). Addition is XOR in any characteristic-2 field.
using Elem = std::uint64_t;

class FieldPoly;

/// Description of GF(2^e). For e = 1 the modulus is unused. All element
/// operations are free functions taking the spec; elements themselves are raw
/// words so matrices can pack them densely.
struct FieldSpec {
    int degree = 1;               // e
    std::uint64_t modulus = 0;    // bitmask of the defining polynomial, bit i = coeff of t^i

    bool operator==(const FieldSpec& o) const = default;

    std::uint64_t order() const { return std::uint64_t(1) << degree; }
    Elem mask() const { return (degree == 64) ? ~Elem(0) : ((Elem(1) << degree) - 1); }
};

constexpr int kMaxExtensionDegree = 32;
constexpr int kBuiltinIrreducibleMaxDegree = 16;

/// Smallest-bitmask irreducible of the given degree over GF(2) (fixed table,
/// 2 <= degree <= 16).
std::uint64_t builtin_irreducible(int degree);

/// Irreducibility of a GF(2) polynomial given as a bitmask (Rabin's test).
bool gf2_poly_irreducible(std::uint64_t poly);

/// Parses `gf2` or `gf2^e:<hex>` where the hex value is the coefficient
/// bitmask of the modulus (bit i = coefficient of t^i).
FieldSpec field_parse(const std::string& spec);
std::string field_to_string(const FieldSpec& f);

inline Elem fadd(Elem a, Elem b) { return a ^ b; }
Elem fmul(const FieldSpec& f, Elem a, Elem b);
Elem fpow(const FieldSpec& f, Elem a, std::uint64_t n);
Elem finv(const FieldSpec& f, Elem a);

/// Univariate polynomial over GF(2^e). Coefficient vector is normalized: the
/// leading coefficient is nonzero unless the polynomial is zero (empty).
class FieldPoly {
public:
    FieldPoly() = default;
    explicit FieldPoly(FieldSpec f) : field_(f) {}
    FieldPoly(FieldSpec f, std::vector<Elem> coeffs);

    static FieldPoly zero(FieldSpec f) { return FieldPoly(f); }
    static FieldPoly one(FieldSpec f) { return FieldPoly(f, {1}); }
    static FieldPoly t(FieldSpec f) { return FieldPoly(f, {0, 1}); }
    /// t + c
    static FieldPoly linear(FieldSpec f, Elem c) { return FieldPoly(f, {c, 1}); }
    /// From a GF(2) coefficient bitmask (entries lifted into the field).
    static FieldPoly from_mask(FieldSpec f, std::uint64_t mask);

    const FieldSpec& field() const { return field_; }
    int degree() const { return int(c_.size()) - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Elem coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[std::size_t(i)] : 0; }
    const std::vector<Elem>& coeffs() const { return c_; }

    bool operator==(const FieldPoly& o) const { return c_ == o.c_; }

    FieldPoly operator+(const FieldPoly& o) const;
    FieldPoly operator*(const FieldPoly& o) const;
    /// (quotient, remainder); divisor must be nonzero.
    std::pair<FieldPoly, FieldPoly> divmod(const FieldPoly& d) const;
    FieldPoly operator%(const FieldPoly& d) const { return divmod(d).second; }
    FieldPoly operator/(const FieldPoly& d) const { return divmod(d).first; }

    FieldPoly monic() const;
    FieldPoly derivative() const;
    Elem eval(Elem x) const;

    /// In t-notation, e.g. `t^2+t+1`.
    std::string to_string() const;
    static FieldPoly parse(FieldSpec f, const std::string& text);

private:
    void normalize();

    FieldSpec field_;
    std::vector<Elem> c_;
};

FieldSpec field_make(int degree, std::optional<FieldPoly> modulus = std::nullopt);

FieldPoly poly_gcd(FieldPoly a, FieldPoly b);
FieldPoly poly_power(const FieldPoly& f, unsigned n);
FieldPoly poly_powmod(const FieldPoly& base, std::uint64_t n, const FieldPoly& mod);
bool poly_irreducible(const FieldPoly& f);

/// Monic irreducible factors with multiplicities, sorted canonically.
std::vector<std::pair<FieldPoly, int>> poly_factor(const FieldPoly& f);

/// Canonical polynomial order: by degree, then coefficient words from the top.
int poly_compare(const FieldPoly& a, const FieldPoly& b);

/// gamma_i = sum_{j<=i} alpha_j for the coefficient list (alpha_0..alpha_{n-1})
/// of (t+1)^n; the last entry is always 1 in characteristic 2.
std::vector<Elem> gamma_prefix_sums(const std::vector<Elem>& f_power_coeffs);

} // namespace kleinperm
