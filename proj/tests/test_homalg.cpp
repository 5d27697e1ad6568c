#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "kleinperm/homalg.hpp"
#include "kleinperm/permdim.hpp"
#include "test_util.hpp"

using namespace kleinperm;

namespace {

const FieldSpec gf2 = field_make(1);

KV4Module mk(const IndecompLabel& l) { return construct(l, gf2); }

} // namespace

TEST_CASE("projective covers") {
    // cover of the regular module is itself
    ProjectiveCover pc = projective_cover(mk(IndecompLabel::reg()));
    CHECK(pc.cover.dim() == 4);
    CHECK(map_kernel(pc.map).module.dim() == 0);

    // cover of k is kV4 with 3-dimensional kernel
    ProjectiveCover pk = projective_cover(mk(IndecompLabel::triv()));
    CHECK(pk.cover.dim() == 4);
    CHECK(map_kernel(pk.map).module.dim() == 3);

    // cover of M_7 is kV4^3
    ProjectiveCover pm = projective_cover(mk(IndecompLabel::m(3)));
    CHECK(pm.cover.dim() == 12);
    CHECK(is_essential_surjection(pm.map));
}

TEST_CASE("heller shifts match the table") {
    CHECK(heller(mk(IndecompLabel::reg())).dim() == 0);
    CHECK(is_isomorphic(heller(mk(IndecompLabel::triv())), mk(IndecompLabel::w(1))));
    CHECK(is_isomorphic(heller(mk(IndecompLabel::m(1))), mk(IndecompLabel::triv())));
    CHECK(is_isomorphic(heller(mk(IndecompLabel::m(4))), mk(IndecompLabel::m(3))));
    CHECK(is_isomorphic(heller(mk(IndecompLabel::w(2))), mk(IndecompLabel::w(3))));
    // even-dimensional non-projectives are fixed
    for (const IndecompLabel& l : {IndecompLabel::e(FieldPoly::t(gf2), 2),
                                   IndecompLabel::e(FieldPoly::from_mask(gf2, 0x7), 1),
                                   IndecompLabel::einf(3)})
        CHECK(is_isomorphic(heller(mk(l)), mk(l)));
}

TEST_CASE("heller is additive") {
    KV4Module m = direct_sum({mk(IndecompLabel::m(2)), mk(IndecompLabel::reg()), mk(IndecompLabel::triv())}).module;
    Decomposition dec = decompose(heller(m));
    // Omega(M_5) = M_3, Omega(kV4) = 0, Omega(k) = W_3
    REQUIRE(dec.labels.size() == 2);
    CHECK(dec.labels[0] == IndecompLabel::m(1));
    CHECK(dec.labels[1] == IndecompLabel::w(1));
}

TEST_CASE("essential surjection detection") {
    KV4Module m3 = mk(IndecompLabel::m(1));
    ModuleMap id = ModuleMap::make(m3, m3, ExactMatrix::identity(gf2, 3));
    CHECK(is_essential_surjection(id));

    // canonical projection onto the head is essential
    QuotientResult head = quotient(m3, radical(m3));
    CHECK(is_essential_surjection(head.projection));

    // dropping a free summand from kV4 + k ->> k is not essential
    DirectSum s = direct_sum({mk(IndecompLabel::reg()), mk(IndecompLabel::triv())});
    CHECK_FALSE(is_essential_surjection(s.projections[1]));
}

TEST_CASE("check_exact flags broken complexes") {
    Resolution r = build_resolution(IndecompLabel::m(1), gf2);
    CHECK(check_exact(r).ok);
    // replace the inclusion by zero: fails at position 1
    Resolution broken = r;
    broken.maps[0] = ExactMatrix(gf2, broken.maps[0].rows(), broken.maps[0].cols());
    ExactnessReport rep = check_exact(broken);
    CHECK(!rep.ok);
    CHECK(rep.failed_position == 1);
    // break the augmentation
    Resolution broken2 = r;
    broken2.aug = ExactMatrix(gf2, broken2.aug.rows(), broken2.aug.cols());
    CHECK(check_exact(broken2).failed_position == 0);
}

TEST_CASE("snake sequence dimensions and exactness") {
    // phi: kV4 ->> M_3 gives 0 -> 0 -> k -> k -> 0
    KV4Module m3 = mk(IndecompLabel::m(1));
    ProjectiveCover pc = projective_cover(m3);
    SnakeSequence snake = snake_sequence(pc.map);
    CHECK(snake.omega_source.dim() == 0);
    CHECK(snake.omega_target.dim() == 1);
    CHECK(snake.kernel_module.dim() == 1);

    // phi: (E_inf + E_t) ->> W_3 from the W_3 resolution
    Resolution w3res = build_resolution(IndecompLabel::w(1), gf2);
    ModuleMap phi = ModuleMap::make(w3res.terms[0], w3res.target, w3res.aug);
    REQUIRE(is_essential_surjection(phi));
    SnakeSequence s2 = snake_sequence(phi);
    CHECK(s2.omega_source.dim() == 4);  // Omega(E_inf + E_t) = E_inf + E_t
    CHECK(s2.kernel_module.dim() == 1);
    CHECK(s2.omega_target.dim() == 5);  // Omega(W_3) = W_5
    CHECK(is_isomorphic(s2.omega_target, mk(IndecompLabel::w(2))));
    CHECK(s2.omega_source.dim() + s2.kernel_module.dim() == s2.omega_target.dim());

    // non-essential input is rejected
    DirectSum skip = direct_sum({mk(IndecompLabel::reg()), mk(IndecompLabel::triv())});
    CHECK_THROWS_AS(snake_sequence(skip.projections[1]), Error);
}

TEST_CASE("snake dimension identity on essential surjections from covers") {
    testutil::Rng rng(31);
    auto pool = testutil::default_poly_pool(gf2);
    for (int trial = 0; trial < 10; ++trial) {
        auto labels = testutil::random_labels(gf2, 24, rng, pool);
        if (labels.empty()) continue;
        std::vector<KV4Module> parts;
        for (auto& l : labels) parts.push_back(mk(l));
        KV4Module m = direct_sum(parts).module;
        ProjectiveCover pc = projective_cover(m);
        SnakeSequence s = snake_sequence(pc.map);
        CHECK(s.omega_source.dim() + s.kernel_module.dim() == s.omega_target.dim());
    }
}

TEST_CASE("splice builds the length-2 resolution of M_9") {
    // first syzygy sequence of M_9 has kernel W_3^4; splicing the degree-wise
    // W_3 resolutions gives length 2
    Resolution r = build_resolution(IndecompLabel::m(4), gf2);
    CHECK(r.length() == 2);
    CHECK(check_exact(r).ok);
    for (const KV4Module& t : r.terms) CHECK(is_permutation(t));

    // trivial splice: length-0 inner gives a length-1 resolution
    KV4Module m3 = mk(IndecompLabel::m(1));
    ProjectiveCover pc = projective_cover(m3);
    KernelResult k = map_kernel(pc.map);
    Resolution inner;
    inner.target = k.module;
    inner.terms = {k.module};
    inner.aug = ExactMatrix::identity(gf2, k.module.dim());
    ShortExactSequence outer{k.module, pc.cover, m3, k.inclusion, pc.map};
    ModuleMap ident = ModuleMap::make(k.module, k.module, ExactMatrix::identity(gf2, k.module.dim()));
    Resolution spliced = splice(outer, inner, ident);
    CHECK(spliced.length() == 1);
    CHECK(check_exact(spliced).ok);

    // mismatched identification is rejected
    Resolution wrong_inner;
    KV4Module w1 = mk(IndecompLabel::w(1));
    wrong_inner.target = w1;
    wrong_inner.terms = {w1};
    wrong_inner.aug = ExactMatrix::identity(gf2, 3);
    CHECK_THROWS_AS(splice(outer, wrong_inner, ident), Error);
}

TEST_CASE("degree-wise sums of resolutions stay exact") {
    Resolution a = build_resolution(IndecompLabel::m(1), gf2);
    Resolution b = build_resolution(IndecompLabel::triv(), gf2);
    Resolution s = sum_resolutions({a, b});
    CHECK(s.length() == 1);
    CHECK(check_exact(s).ok);
    CHECK(s.target.dim() == 4);
}

TEST_CASE("resolution file format round trips") {
    Resolution r = build_resolution(IndecompLabel::w(2), gf2);
    std::ostringstream os;
    write_resolution(os, r);
    std::istringstream is(os.str());
    Resolution back = read_resolution(is);
    CHECK(back.length() == r.length());
    CHECK(back.target == r.target);
    for (std::size_t i = 0; i < r.terms.size(); ++i) CHECK(back.terms[i] == r.terms[i]);
    for (std::size_t i = 0; i < r.maps.size(); ++i) CHECK(back.maps[i] == r.maps[i]);
    CHECK(back.aug == r.aug);
    CHECK(check_exact(back).ok);

    std::ostringstream os2;
    write_resolution(os2, back);
    CHECK(os2.str() == os.str());
}
