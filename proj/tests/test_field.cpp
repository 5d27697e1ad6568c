#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kleinperm/field.hpp"

using namespace kleinperm;

namespace {

// Test-local oracle: schoolbook multiplication of GF(2) polynomials as
// bitmasks, independent of FieldPoly.
std::uint64_t mask_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    for (int i = 0; i < 64 && (b >> i); ++i)
        if ((b >> i) & 1) r ^= a << i;
    return r;
}

// Exhaustive irreducibility over GF(2) by trial division.
bool mask_irreducible_bruteforce(std::uint64_t p) {
    int deg = 63;
    while (deg > 0 && !((p >> deg) & 1)) --deg;
    if (deg <= 0) return false;
    for (std::uint64_t d = 2; d < (std::uint64_t(1) << (deg / 2 + 1)); ++d) {
        int dd = 63;
        while (dd > 0 && !((d >> dd) & 1)) --dd;
        if (dd == 0) continue;
        // long division p mod d
        std::uint64_t r = p;
        int rd = deg;
        while (rd >= dd) {
            r ^= d << (rd - dd);
            rd = 63;
            while (rd > 0 && !((r >> rd) & 1)) --rd;
            if (r == 0) break;
        }
        if (r == 0) return false;
    }
    return true;
}

std::uint64_t mask_of(const FieldPoly& p) {
    std::uint64_t m = 0;
    for (int i = 0; i <= p.degree(); ++i) m |= (p.coeff(i) & 1) << i;
    return m;
}

std::uint64_t splitmix(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

TEST_CASE("built-in irreducibles match the smallest-mask table") {
    for (int d = 2; d <= kBuiltinIrreducibleMaxDegree; ++d) {
        std::uint64_t expected = 0;
        for (std::uint64_t m = (std::uint64_t(1) << d) | 1; m < (std::uint64_t(2) << d); m += 2) {
            if (mask_irreducible_bruteforce(m)) {
                expected = m;
                break;
            }
        }
        CHECK(builtin_irreducible(d) == expected);
        CHECK(gf2_poly_irreducible(builtin_irreducible(d)));
    }
}

TEST_CASE("field_make validates the modulus") {
    CHECK(field_make(1).degree == 1);
    FieldSpec gf4 = field_make(2, FieldPoly::from_mask(field_make(1), 0x7));
    CHECK(gf4.order() == 4);
    // t^3+t+1 is irreducible: no roots in GF(2) and both quadratic checks
    // below were run against the brute-force oracle.
    CHECK(mask_irreducible_bruteforce(0xB));
    CHECK_NOTHROW(field_make(3, FieldPoly::from_mask(field_make(1), 0xB)));
    // t^2+1 = (t+1)^2 is reducible
    CHECK_THROWS_AS(field_make(2, FieldPoly::from_mask(field_make(1), 0x5)), Error);
}

TEST_CASE("field spec strings round trip bit-exactly") {
    CHECK(field_to_string(field_make(1)) == "gf2");
    FieldSpec gf4 = field_parse("gf2^2:7");
    CHECK(gf4.degree == 2);
    CHECK(gf4.modulus == 0x7);
    CHECK(field_parse(field_to_string(gf4)) == gf4);
    CHECK_THROWS_AS(field_parse("gf2^2:5"), Error);
    CHECK_THROWS_AS(field_parse("gf3"), Error);
}

TEST_CASE("field axioms hold on random elements") {
    for (int deg : {1, 2, 3, 8}) {
        FieldSpec f = field_make(deg);
        std::uint64_t s = 42;
        for (int i = 0; i < 200; ++i) {
            Elem a = splitmix(s) & f.mask();
            Elem b = splitmix(s) & f.mask();
            Elem c = splitmix(s) & f.mask();
            CHECK(fadd(a, a) == 0);
            CHECK(fmul(f, a, fadd(b, c)) == fadd(fmul(f, a, b), fmul(f, a, c)));
            CHECK(fmul(f, a, b) == fmul(f, b, a));
            if (a != 0) CHECK(fmul(f, a, finv(f, a)) == 1);
        }
    }
}

TEST_CASE("poly_power matches the paper's squares") {
    FieldSpec gf2 = field_make(1);
    FieldPoly t1 = FieldPoly::linear(gf2, 1);
    // (t+1)^2 = t^2+1
    CHECK(mask_of(poly_power(t1, 2)) == 0x5);
    // t^5 = t^5
    CHECK(mask_of(poly_power(FieldPoly::t(gf2), 5)) == 0x20);
    // oracle first: schoolbook square of t^2+t+1 is t^4+t^2+1
    CHECK(mask_mul(0x7, 0x7) == 0x15);
    CHECK(mask_of(poly_power(FieldPoly::from_mask(gf2, 0x7), 2)) == 0x15);
}

TEST_CASE("poly_power is multiplicative in the exponent") {
    FieldSpec gf2 = field_make(1);
    FieldPoly f = FieldPoly::from_mask(gf2, 0xB);
    for (unsigned a = 1; a <= 8; ++a)
        for (unsigned b = 1; b <= 8; ++b)
            CHECK(poly_power(f, a + b) == poly_power(f, a) * poly_power(f, b));
}

TEST_CASE("gamma prefix sums") {
    // n = 1: alpha of (t+1)^1 below degree 1 is (1)
    CHECK(gamma_prefix_sums({1}) == std::vector<Elem>{1});
    // oracle: (t+1)^2 = t^2+1 -> alpha = (1, 0); prefix sums (1, 1)
    CHECK(mask_mul(0x3, 0x3) == 0x5);
    CHECK(gamma_prefix_sums({1, 0}) == std::vector<Elem>({1, 1}));
    // oracle: (t+1)^3 = t^3+t^2+t+1 -> alpha = (1,1,1); prefix sums (1,0,1)
    CHECK(mask_mul(mask_mul(0x3, 0x3), 0x3) == 0xF);
    CHECK(gamma_prefix_sums({1, 1, 1}) == std::vector<Elem>({1, 0, 1}));
}

TEST_CASE("gamma ends in 1 for every n <= 64") {
    FieldSpec gf2 = field_make(1);
    FieldPoly t1 = FieldPoly::linear(gf2, 1);
    for (unsigned n = 1; n <= 64; ++n) {
        FieldPoly fn = poly_power(t1, n);
        std::vector<Elem> alpha;
        for (unsigned i = 0; i < n; ++i) alpha.push_back(fn.coeff(int(i)));
        auto gamma = gamma_prefix_sums(alpha);
        CHECK(gamma.back() == 1);
    }
}

TEST_CASE("polynomial arithmetic over GF(4)") {
    FieldSpec gf4 = field_make(2);
    // x = class of t in GF(4); (t + x)(t + x^2) = t^2 + t + 1 since x + x^2 = 1
    // and x * x^2 = x^3 = 1.
    FieldPoly a = FieldPoly::linear(gf4, 2);
    FieldPoly b = FieldPoly::linear(gf4, 3);
    FieldPoly prod = a * b;
    CHECK(prod == FieldPoly(gf4, {1, 1, 1}));
    CHECK(poly_irreducible(FieldPoly(gf4, {1, 1, 1})) == false);  // splits over GF(4)
    CHECK(poly_irreducible(a));
}

TEST_CASE("factorization recovers known splittings") {
    FieldSpec gf2 = field_make(1);
    auto t = FieldPoly::t(gf2);
    auto t1 = FieldPoly::linear(gf2, 1);
    auto c3 = FieldPoly::from_mask(gf2, 0x7);  // t^2+t+1

    auto f = poly_power(t1, 2) * t * c3;  // t(t+1)^2(t^2+t+1)
    auto factors = poly_factor(f);
    REQUIRE(factors.size() == 3);
    CHECK(factors[0].first == t);
    CHECK(factors[0].second == 1);
    CHECK(factors[1].first == t1);
    CHECK(factors[1].second == 2);
    CHECK(factors[2].first == c3);
    CHECK(factors[2].second == 1);

    // perfect square with zero derivative: t^4+t^2+1 = (t^2+t+1)^2
    auto sq = poly_factor(FieldPoly::from_mask(gf2, 0x15));
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].first == c3);
    CHECK(sq[0].second == 2);
}

TEST_CASE("factorization round-trips on random products") {
    FieldSpec gf2 = field_make(1);
    std::uint64_t s = 7;
    std::vector<FieldPoly> pool;
    for (std::uint64_t mask : {0x2ull, 0x3ull, 0x7ull, 0xBull, 0xDull, 0x13ull})
        pool.push_back(FieldPoly::from_mask(gf2, mask));
    for (int trial = 0; trial < 50; ++trial) {
        FieldPoly prod = FieldPoly::one(gf2);
        std::vector<int> mult(pool.size(), 0);
        for (int picks = 0; picks < 4; ++picks) {
            std::size_t i = splitmix(s) % pool.size();
            if (splitmix(s) % 2) continue;
            mult[i] += 1;
            prod = prod * pool[i];
        }
        auto factors = poly_factor(prod);
        FieldPoly rebuilt = FieldPoly::one(gf2);
        for (auto& [p, m] : factors)
            for (int i = 0; i < m; ++i) rebuilt = rebuilt * p;
        CHECK(rebuilt == prod);
        for (auto& [p, m] : factors) CHECK(poly_irreducible(p));
    }
}

TEST_CASE("polynomial text round trip") {
    FieldSpec gf2 = field_make(1);
    for (std::uint64_t mask : {0x2ull, 0x7ull, 0x15ull, 0x1ull}) {
        FieldPoly p = FieldPoly::from_mask(gf2, mask);
        CHECK(FieldPoly::parse(gf2, p.to_string()) == p);
    }
    CHECK(FieldPoly::parse(gf2, "t^2+t+1") == FieldPoly::from_mask(gf2, 0x7));
    FieldSpec gf4 = field_make(2);
    FieldPoly withext = FieldPoly(gf4, {2, 1});
    CHECK(FieldPoly::parse(gf4, withext.to_string()) == withext);
}
