#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kleinperm/decompose.hpp"
#include "test_util.hpp"

using namespace kleinperm;

namespace {

const FieldSpec gf2 = field_make(1);

KV4Module sum_of(const std::vector<IndecompLabel>& labels, FieldSpec f = gf2) {
    std::vector<KV4Module> parts;
    for (const auto& l : labels) parts.push_back(construct(l, f));
    return direct_sum(parts).module;
}

void check_multiset(const Decomposition& dec, std::vector<IndecompLabel> expect) {
    std::sort(expect.begin(), expect.end(), label_less);
    REQUIRE(dec.labels.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(dec.labels[i] == expect[i]);
}

} // namespace

TEST_CASE("decompose catalogue singles") {
    for (const IndecompLabel& l : {IndecompLabel::triv(), IndecompLabel::reg(), IndecompLabel::m(3),
                                   IndecompLabel::w(1), IndecompLabel::w(4),
                                   IndecompLabel::e(FieldPoly::t(gf2), 3),
                                   IndecompLabel::e(FieldPoly::linear(gf2, 1), 2),
                                   IndecompLabel::e(FieldPoly::from_mask(gf2, 0x7), 2),
                                   IndecompLabel::einf(4)}) {
        Decomposition dec = decompose(construct(l, gf2));
        check_multiset(dec, {l});
    }
}

TEST_CASE("decompose the zero module") {
    CHECK(decompose(KV4Module::zero(gf2)).labels.empty());
}

TEST_CASE("identify_indecomposable") {
    CHECK(identify_indecomposable(construct(IndecompLabel::m(1), gf2)) == IndecompLabel::m(1));
    CHECK_THROWS_AS(identify_indecomposable(sum_of({IndecompLabel::triv(), IndecompLabel::triv()})), Error);
}

TEST_CASE("plain direct sums recover their labels") {
    std::vector<IndecompLabel> labels = {IndecompLabel::triv(), IndecompLabel::m(1), IndecompLabel::reg()};
    Decomposition dec = decompose(sum_of(labels));
    check_multiset(dec, labels);
}

TEST_CASE("decompose a conjugated mixed module") {
    testutil::Rng rng(99);
    std::vector<IndecompLabel> labels = {IndecompLabel::triv(), IndecompLabel::m(1), IndecompLabel::reg()};
    KV4Module m = sum_of(labels);
    KV4Module twisted = testutil::conjugate(m, testutil::random_invertible(gf2, m.dim(), rng));
    check_multiset(decompose(twisted), labels);
}

TEST_CASE("dual swaps M and W, fixes the even families") {
    check_multiset(decompose(dual(construct(IndecompLabel::m(3), gf2))), {IndecompLabel::w(3)});
    check_multiset(decompose(dual(construct(IndecompLabel::w(2), gf2))), {IndecompLabel::m(2)});
    check_multiset(decompose(dual(construct(IndecompLabel::triv(), gf2))), {IndecompLabel::triv()});
    IndecompLabel et3 = IndecompLabel::e(FieldPoly::t(gf2), 3);
    check_multiset(decompose(dual(construct(et3, gf2))), {et3});
    IndecompLabel ec = IndecompLabel::e(FieldPoly::from_mask(gf2, 0x7), 2);
    check_multiset(decompose(dual(construct(ec, gf2))), {ec});
    check_multiset(decompose(dual(construct(IndecompLabel::einf(3), gf2))), {IndecompLabel::einf(3)});
}

TEST_CASE("is_isomorphic distinguishes the irredundant list") {
    KV4Module a = construct(IndecompLabel::e(FieldPoly::t(gf2), 2), gf2);
    KV4Module b = construct(IndecompLabel::einf(2), gf2);
    CHECK(is_isomorphic(a, a));
    CHECK(!is_isomorphic(a, b));
    CHECK(!is_isomorphic(a, sum_of({IndecompLabel::e(FieldPoly::t(gf2), 1), IndecompLabel::e(FieldPoly::t(gf2), 1)})));
}

TEST_CASE("round trip: 60 seeded random multisets (dim <= 60) under conjugation") {
    testutil::Rng rng(2024);
    auto pool = testutil::default_poly_pool(gf2);
    for (int trial = 0; trial < 60; ++trial) {
        auto labels = testutil::random_labels(gf2, 60, rng, pool);
        KV4Module m = sum_of(labels);
        if (m.dim() == 0) continue;
        KV4Module twisted = testutil::conjugate(m, testutil::random_invertible(gf2, m.dim(), rng));
        Decomposition dec = decompose(twisted);
        check_multiset(dec, labels);
        // certificate: decompose() verified the conjugation internally, spot-check spans
        std::size_t total = 0;
        for (const Subspace& s : dec.block_spans) total += s.dim();
        CHECK(total == m.dim());
    }
}

TEST_CASE("round trip over GF(4)") {
    FieldSpec gf4 = field_make(2);
    testutil::Rng rng(7);
    // include an E-parameter with a coefficient outside GF(2)
    std::vector<IndecompLabel> labels = {IndecompLabel::e(FieldPoly::linear(gf4, 2), 2),
                                         IndecompLabel::m(2), IndecompLabel::reg()};
    KV4Module m = sum_of(labels, gf4);
    KV4Module twisted = testutil::conjugate(m, testutil::random_invertible(gf4, m.dim(), rng));
    check_multiset(decompose(twisted), labels);
}

TEST_CASE("dual-of-dual has the same multiset") {
    testutil::Rng rng(11);
    auto pool = testutil::default_poly_pool(gf2);
    for (int trial = 0; trial < 20; ++trial) {
        auto labels = testutil::random_labels(gf2, 40, rng, pool);
        KV4Module m = sum_of(labels);
        if (m.dim() == 0) continue;
        CHECK(is_isomorphic(dual(dual(m)), m));
    }
}
