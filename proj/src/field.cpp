#include "kleinperm/field.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

namespace kleinperm {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ReducibleModulus: return "ReducibleModulus";
        case Errc::ReducibleF: return "ReducibleF";
        case Errc::FNotMonic: return "FNotMonic";
        case Errc::RelationViolation: return "RelationViolation";
        case Errc::FieldMismatch: return "FieldMismatch";
        case Errc::AmbientMismatch: return "AmbientMismatch";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotStable: return "NotStable";
        case Errc::NotEquivariant: return "NotEquivariant";
        case Errc::NotEssential: return "NotEssential";
        case Errc::NotIndecomposable: return "NotIndecomposable";
        case Errc::IdentificationMismatch: return "IdentificationMismatch";
        case Errc::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
        case Errc::BadLabel: return "BadLabel";
        case Errc::BadFieldSpec: return "BadFieldSpec";
        case Errc::BadFile: return "BadFile";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

namespace {

int mask_degree(std::uint64_t p) {
    if (p == 0) return -1;
    return 63 - __builtin_clzll(p);
}

std::uint64_t gf2_mask_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    const int md = mask_degree(mod);
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (mask_degree(a) == md) a ^= mod;
    }
    return r;
}

std::uint64_t gf2_mask_mod(std::uint64_t a, std::uint64_t mod) {
    const int md = mask_degree(mod);
    int ad = mask_degree(a);
    while (ad >= md) {
        a ^= mod << (ad - md);
        ad = mask_degree(a);
    }
    return a;
}

std::uint64_t gf2_mask_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = gf2_mask_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

// t^(2^k) mod f by repeated squaring of the residue.
std::uint64_t gf2_frobenius_power(std::uint64_t f, int k) {
    std::uint64_t x = 0b10; // t
    for (int i = 0; i < k; ++i) x = gf2_mask_mulmod(x, x, f);
    return x;
}

} // namespace

bool gf2_poly_irreducible(std::uint64_t poly) {
    const int n = mask_degree(poly);
    if (n <= 0) return false;
    if (n == 1) return true;
    // Rabin: t^(2^n) == t mod f, and t^(2^(n/p)) - t coprime to f for primes p | n.
    if (gf2_frobenius_power(poly, n) != 0b10) return false;
    for (int p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        std::uint64_t x = gf2_frobenius_power(poly, n / p) ^ 0b10;
        if (x == 0) return false;
        if (mask_degree(gf2_mask_gcd(poly, x)) != 0) return false;
    }
    return true;
}

std::uint64_t builtin_irreducible(int degree) {
    // Smallest coefficient bitmask per degree; verified against the Rabin test
    // in the unit suite.
    static const std::array<std::uint64_t, 17> table = {
        0,     0b10,  0x7,   0xB,   0x13,  0x25,  0x43,  0x83,
        0x11B, 0x203, 0x409, 0x805, 0x1009, 0x201B, 0x4021, 0x8003,
        0x1002B,
    };
    if (degree < 1 || degree > kBuiltinIrreducibleMaxDegree)
        fail(Errc::BadFieldSpec, "no built-in modulus for degree " + std::to_string(degree));
    return table[std::size_t(degree)];
}

FieldSpec field_make(int degree, std::optional<FieldPoly> modulus) {
    if (degree < 1 || degree > kMaxExtensionDegree)
        fail(Errc::BadFieldSpec, "extension degree must be in [1, 32], got " + std::to_string(degree));
    FieldSpec f;
    f.degree = degree;
    if (degree == 1) {
        f.modulus = 0b10;
        return f;
    }
    std::uint64_t mask = 0;
    if (modulus) {
        if (modulus->degree() != degree)
            fail(Errc::BadFieldSpec, "modulus degree != extension degree");
        if (!modulus->is_monic()) fail(Errc::FNotMonic, "modulus must be monic");
        for (int i = 0; i <= modulus->degree(); ++i) {
            Elem c = modulus->coeff(i);
            if (c > 1) fail(Errc::BadFieldSpec, "modulus must have GF(2) coefficients");
            mask |= (c & 1) << i;
        }
    } else {
        mask = builtin_irreducible(degree);
    }
    if (!gf2_poly_irreducible(mask))
        fail(Errc::ReducibleModulus, "modulus is reducible over GF(2)");
    f.modulus = mask;
    return f;
}

FieldSpec field_parse(const std::string& spec) {
    if (spec == "gf2") return field_make(1);
    const std::string prefix = "gf2^";
    if (spec.rfind(prefix, 0) != 0) fail(Errc::BadFieldSpec, "expected gf2 or gf2^e:<hex>: " + spec);
    auto colon = spec.find(':');
    if (colon == std::string::npos) fail(Errc::BadFieldSpec, "missing :<hex-modulus> in " + spec);
    int degree = 0;
    {
        auto [p, ec] = std::from_chars(spec.data() + prefix.size(), spec.data() + colon, degree);
        if (ec != std::errc() || p != spec.data() + colon)
            fail(Errc::BadFieldSpec, "bad extension degree in " + spec);
    }
    std::uint64_t mask = 0;
    {
        auto [p, ec] = std::from_chars(spec.data() + colon + 1, spec.data() + spec.size(), mask, 16);
        if (ec != std::errc() || p != spec.data() + spec.size())
            fail(Errc::BadFieldSpec, "bad hex modulus in " + spec);
    }
    if (degree < 1 || degree > kMaxExtensionDegree) fail(Errc::BadFieldSpec, "degree out of range");
    if (mask_degree(mask) != degree) fail(Errc::BadFieldSpec, "modulus bitmask degree != e");
    if (!gf2_poly_irreducible(mask)) fail(Errc::ReducibleModulus, "modulus is reducible over GF(2)");
    FieldSpec f;
    f.degree = degree;
    f.modulus = mask;
    return f;
}

std::string field_to_string(const FieldSpec& f) {
    if (f.degree == 1) return "gf2";
    std::ostringstream os;
    os << "gf2^" << f.degree << ":" << std::hex << f.modulus;
    return os.str();
}

Elem fmul(const FieldSpec& f, Elem a, Elem b) {
    if (f.degree == 1) return a & b;
    Elem r = 0;
    const Elem top = Elem(1) << (f.degree - 1);
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        const bool carry = (a & top) != 0;
        a <<= 1;
        if (carry) a ^= f.modulus;
    }
    return r & f.mask();
}

Elem fpow(const FieldSpec& f, Elem a, std::uint64_t n) {
    Elem r = 1;
    while (n) {
        if (n & 1) r = fmul(f, r, a);
        a = fmul(f, a, a);
        n >>= 1;
    }
    return r;
}

Elem finv(const FieldSpec& f, Elem a) {
    if (a == 0) fail(Errc::DimensionMismatch, "inverse of zero field element");
    if (f.degree == 1) return 1;
    return fpow(f, a, f.order() - 2);
}

FieldPoly::FieldPoly(FieldSpec f, std::vector<Elem> coeffs) : field_(f), c_(std::move(coeffs)) {
    for (Elem& x : c_) x &= f.mask();
    normalize();
}

FieldPoly FieldPoly::from_mask(FieldSpec f, std::uint64_t mask) {
    std::vector<Elem> c;
    for (int i = 0; i <= mask_degree(mask); ++i) c.push_back((mask >> i) & 1);
    return FieldPoly(f, std::move(c));
}

void FieldPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FieldPoly FieldPoly::operator+(const FieldPoly& o) const {
    std::vector<Elem> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(int(i)) ^ o.coeff(int(i));
    return FieldPoly(field_, std::move(c));
}

FieldPoly FieldPoly::operator*(const FieldPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(field_);
    std::vector<Elem> c(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] ^= fmul(field_, c_[i], o.c_[j]);
    }
    return FieldPoly(field_, std::move(c));
}

std::pair<FieldPoly, FieldPoly> FieldPoly::divmod(const FieldPoly& d) const {
    if (d.is_zero()) fail(Errc::DimensionMismatch, "polynomial division by zero");
    FieldPoly r = *this;
    if (r.degree() < d.degree()) return {zero(field_), r};
    std::vector<Elem> q(std::size_t(r.degree() - d.degree() + 1), 0);
    const Elem lead_inv = finv(field_, d.c_.back());
    while (!r.is_zero() && r.degree() >= d.degree()) {
        const int shift = r.degree() - d.degree();
        const Elem factor = fmul(field_, r.c_.back(), lead_inv);
        q[std::size_t(shift)] = factor;
        for (int i = 0; i <= d.degree(); ++i)
            r.c_[std::size_t(i + shift)] ^= fmul(field_, factor, d.c_[std::size_t(i)]);
        r.normalize();
    }
    return {FieldPoly(field_, std::move(q)), r};
}

FieldPoly FieldPoly::monic() const {
    if (is_zero() || is_monic()) return *this;
    const Elem inv = finv(field_, c_.back());
    std::vector<Elem> c = c_;
    for (Elem& x : c) x = fmul(field_, x, inv);
    return FieldPoly(field_, std::move(c));
}

FieldPoly FieldPoly::derivative() const {
    if (degree() < 1) return zero(field_);
    std::vector<Elem> c(c_.size() - 1, 0);
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (i & 1) c[i - 1] = c_[i];  // characteristic 2: even multiples vanish
    return FieldPoly(field_, std::move(c));
}

Elem FieldPoly::eval(Elem x) const {
    Elem r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = fmul(field_, r, x) ^ c_[i];
    return r;
}

std::string FieldPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Elem c = coeff(i);
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << std::hex << c;
        } else {
            if (c != 1) os << std::hex << c << "*";
            os << "t";
            if (i > 1) os << "^" << std::dec << i;
        }
    }
    return os.str();
}

FieldPoly FieldPoly::parse(FieldSpec f, const std::string& text) {
    // Terms separated by '+': `<hex>`, `t`, `t^k`, `<hex>*t^k`.
    std::vector<Elem> coeffs;
    auto add_term = [&](Elem c, int power) {
        if (power < 0 || power > 4096) fail(Errc::BadLabel, "bad exponent in polynomial " + text);
        if (int(coeffs.size()) <= power) coeffs.resize(std::size_t(power) + 1, 0);
        coeffs[std::size_t(power)] ^= c & f.mask();
    };
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    skip_ws();
    if (i == text.size()) fail(Errc::BadLabel, "empty polynomial");
    while (i < text.size()) {
        Elem c = 1;
        bool have_coeff = false;
        if (std::isxdigit((unsigned char)text[i])) {
            std::size_t j = i;
            while (j < text.size() && std::isxdigit((unsigned char)text[j])) ++j;
            c = std::stoull(text.substr(i, j - i), nullptr, 16);
            i = j;
            have_coeff = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        int power = 0;
        if (i < text.size() && text[i] == 't') {
            ++i;
            power = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::size_t j = i;
                while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
                if (j == i) fail(Errc::BadLabel, "missing exponent in " + text);
                power = std::stoi(text.substr(i, j - i));
                i = j;
            }
        } else if (!have_coeff) {
            fail(Errc::BadLabel, "unexpected character in polynomial " + text);
        }
        add_term(c, power);
        skip_ws();
        if (i < text.size()) {
            if (text[i] != '+') fail(Errc::BadLabel, "expected + in polynomial " + text);
            ++i;
            skip_ws();
        }
    }
    return FieldPoly(f, std::move(coeffs));
}

FieldPoly poly_gcd(FieldPoly a, FieldPoly b) {
    while (!b.is_zero()) {
        FieldPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FieldPoly poly_power(const FieldPoly& f, unsigned n) {
    if (!f.is_monic()) fail(Errc::FNotMonic, "poly_power requires a monic base");
    FieldPoly r = FieldPoly::one(f.field());
    FieldPoly base = f;
    unsigned k = n;
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

FieldPoly poly_powmod(const FieldPoly& base, std::uint64_t n, const FieldPoly& mod) {
    FieldPoly r = FieldPoly::one(base.field());
    FieldPoly b = base % mod;
    while (n) {
        if (n & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        n >>= 1;
    }
    return r;
}

bool poly_irreducible(const FieldPoly& f) {
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const FieldSpec k = f.field();
    const FieldPoly t = FieldPoly::t(k);
    // Rabin over GF(q): t^(q^n) == t, and gcd(t^(q^(n/p)) - t, f) = 1 for primes p | n.
    auto frob = [&](int steps) {
        FieldPoly x = t % f;
        for (int i = 0; i < steps; ++i) x = poly_powmod(x, k.order(), f);
        return x;
    };
    if (!(frob(n) + t % f).is_zero()) return false;
    for (int p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        FieldPoly g = poly_gcd(frob(n / p) + t, f);
        if (g.degree() != 0) return false;
    }
    return true;
}

int poly_compare(const FieldPoly& a, const FieldPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i) ? -1 : 1;
    }
    return 0;
}

namespace {

// Coefficient-wise square root of a polynomial with only even-degree terms
// (valid in characteristic 2; sqrt in GF(2^e) is x -> x^(2^(e-1))).
FieldPoly poly_sqrt(const FieldPoly& f) {
    const FieldSpec k = f.field();
    std::vector<Elem> c(std::size_t(f.degree() / 2) + 1, 0);
    for (int i = 0; i <= f.degree(); i += 2)
        c[std::size_t(i / 2)] = fpow(k, f.coeff(i), std::uint64_t(1) << (k.degree - 1));
    return FieldPoly(k, std::move(c));
}

// Berlekamp splitting of a monic squarefree polynomial into irreducibles.
void berlekamp_squarefree(const FieldPoly& f, std::vector<FieldPoly>& out);

void berlekamp_split(const FieldPoly& f, const FieldPoly& v, std::vector<FieldPoly>& out) {
    const FieldSpec k = f.field();
    std::vector<FieldPoly> pieces{f};
    for (Elem c = 0; c < k.order(); ++c) {
        std::vector<FieldPoly> next;
        for (const FieldPoly& g : pieces) {
            if (g.degree() <= 1) {
                next.push_back(g);
                continue;
            }
            FieldPoly d = poly_gcd(v + FieldPoly(k, {c}), g);
            if (d.degree() > 0 && d.degree() < g.degree()) {
                next.push_back(d);
                next.push_back((g / d).monic());
            } else {
                next.push_back(g);
            }
        }
        pieces = std::move(next);
    }
    for (const FieldPoly& g : pieces) berlekamp_squarefree(g, out);
}

void berlekamp_squarefree(const FieldPoly& f, std::vector<FieldPoly>& out) {
    const int n = f.degree();
    if (n <= 0) return;
    if (n == 1) {
        out.push_back(f.monic());
        return;
    }
    const FieldSpec k = f.field();
    // Q matrix: row i = coefficients of t^(i*q) mod f. Kernel of Q - I spans
    // the Berlekamp subalgebra; dim 1 means irreducible.
    std::vector<std::vector<Elem>> q(std::size_t(n), std::vector<Elem>(std::size_t(n), 0));
    FieldPoly tq = poly_powmod(FieldPoly::t(k), k.order(), f);
    FieldPoly cur = FieldPoly::one(k);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= cur.degree(); ++j) q[std::size_t(i)][std::size_t(j)] = cur.coeff(j);
        q[std::size_t(i)][std::size_t(i)] ^= 1;  // subtract identity
        cur = (cur * tq) % f;
    }
    // Gaussian elimination on q (rows are vectors over the field) to find a
    // non-constant kernel vector.
    std::vector<std::vector<Elem>> rows = q;
    // transpose so kernel of the linear map x -> x^q - x comes out of column ops;
    // we solve rows^T y = 0 by eliminating on the transpose.
    std::vector<std::vector<Elem>> m(std::size_t(n), std::vector<Elem>(std::size_t(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[std::size_t(j)][std::size_t(i)] = rows[std::size_t(i)][std::size_t(j)];
    std::vector<int> pivot_of_col(std::size_t(n), -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int p = -1;
        for (int r = rank; r < n; ++r)
            if (m[std::size_t(r)][std::size_t(col)] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(m[std::size_t(p)], m[std::size_t(rank)]);
        const Elem inv = finv(k, m[std::size_t(rank)][std::size_t(col)]);
        for (int j = 0; j < n; ++j) m[std::size_t(rank)][std::size_t(j)] = fmul(k, m[std::size_t(rank)][std::size_t(j)], inv);
        for (int r = 0; r < n; ++r) {
            if (r == rank) continue;
            const Elem factor = m[std::size_t(r)][std::size_t(col)];
            if (factor == 0) continue;
            for (int j = 0; j < n; ++j)
                m[std::size_t(r)][std::size_t(j)] ^= fmul(k, factor, m[std::size_t(rank)][std::size_t(j)]);
        }
        pivot_of_col[std::size_t(col)] = rank;
        ++rank;
    }
    if (rank == n - 1) {
        out.push_back(f.monic());
        return;
    }
    // Build a kernel vector with a nonzero entry at some non-pivot column > 0.
    FieldPoly v = FieldPoly::zero(k);
    for (int col = 1; col < n; ++col) {
        if (pivot_of_col[std::size_t(col)] >= 0) continue;
        std::vector<Elem> vec(std::size_t(n), 0);
        vec[std::size_t(col)] = 1;
        for (int c2 = 0; c2 < n; ++c2) {
            const int pr = pivot_of_col[std::size_t(c2)];
            if (pr >= 0) vec[std::size_t(c2)] = m[std::size_t(pr)][std::size_t(col)];
        }
        v = FieldPoly(k, std::move(vec));
        if (v.degree() > 0) break;
    }
    if (v.degree() <= 0) {
        out.push_back(f.monic());  // should not happen; degree-1 subalgebra
        return;
    }
    berlekamp_split(f, v, out);
}

} // namespace

std::vector<std::pair<FieldPoly, int>> poly_factor(const FieldPoly& f_in) {
    if (f_in.is_zero()) fail(Errc::DimensionMismatch, "cannot factor the zero polynomial");
    std::vector<std::pair<FieldPoly, int>> result;
    FieldPoly f = f_in.monic();
    if (f.degree() == 0) return result;

    // Separate repeated factors first: handle f' == 0 (perfect square in char 2)
    // and otherwise split off the squarefree part.
    std::vector<std::pair<FieldPoly, int>> stack{{f, 1}};
    std::vector<FieldPoly> irreducibles;
    while (!stack.empty()) {
        auto [g, mult] = stack.back();
        stack.pop_back();
        if (g.degree() == 0) continue;
        FieldPoly d = g.derivative();
        if (d.is_zero()) {
            stack.push_back({poly_sqrt(g), mult * 2});
            continue;
        }
        FieldPoly u = poly_gcd(g, d);
        FieldPoly sf = (g / u).monic();  // squarefree part
        std::vector<FieldPoly> parts;
        berlekamp_squarefree(sf, parts);
        for (const FieldPoly& p : parts) {
            // Multiplicity by trial division of the original input.
            int count = 0;
            FieldPoly rest = f;
            while (true) {
                auto [q, r] = rest.divmod(p);
                if (!r.is_zero()) break;
                rest = q;
                ++count;
            }
            bool seen = false;
            for (auto& [ip, im] : result)
                if (ip == p) seen = true;
            if (!seen && count > 0) result.push_back({p, count});
        }
        if (!u.is_zero() && u.degree() > 0) {
            // factors of u are already covered by trial division above; still
            // recurse to catch irreducibles absent from the squarefree part
            // (perfect-power components).
            FieldPoly rem = u;
            for (auto& [ip, im] : result) {
                while (true) {
                    auto [q, r] = rem.divmod(ip);
                    if (!r.is_zero()) break;
                    rem = q;
                }
            }
            if (rem.degree() > 0) stack.push_back({rem, 1});
        }
    }
    std::sort(result.begin(), result.end(),
              [](const auto& a, const auto& b) { return poly_compare(a.first, b.first) < 0; });
    return result;
}

std::vector<Elem> gamma_prefix_sums(const std::vector<Elem>& f_power_coeffs) {
    std::vector<Elem> gamma(f_power_coeffs.size(), 0);
    Elem acc = 0;
    for (std::size_t i = 0; i < f_power_coeffs.size(); ++i) {
        acc ^= f_power_coeffs[i];
        gamma[i] = acc;
    }
    return gamma;
}

} // namespace kleinperm
