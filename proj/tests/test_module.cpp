#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "kleinperm/catalogue.hpp"
#include "kleinperm/module.hpp"
#include "test_util.hpp"

using namespace kleinperm;

namespace {

const FieldSpec gf2 = field_make(1);

KV4Module reg() { return construct(IndecompLabel::reg(), gf2); }
KV4Module triv() { return construct(IndecompLabel::triv(), gf2); }

} // namespace

TEST_CASE("module_make validates the relations") {
    ExactMatrix z1(gf2, 1, 1);
    CHECK(KV4Module::make(gf2, z1, z1).dim() == 1);
    CHECK_NOTHROW(reg());

    // full 3x3 Jordan block squares to a nonzero matrix
    ExactMatrix j3(gf2, 3, 3);
    j3.set(0, 1, 1);
    j3.set(1, 2, 1);
    CHECK_THROWS_AS(KV4Module::make(gf2, j3, ExactMatrix(gf2, 3, 3)), Error);

    // commuting failure: A = e12, B = e23 on 3 dims has AB != BA
    ExactMatrix a(gf2, 3, 3), b(gf2, 3, 3);
    a.set(0, 1, 1);
    b.set(1, 2, 1);
    CHECK_THROWS_AS(KV4Module::make(gf2, a, b), Error);
}

TEST_CASE("direct sums add dimensions and satisfy projection/inclusion") {
    CHECK(direct_sum({}).module.dim() == 0);
    DirectSum s = direct_sum({triv(), reg()});
    CHECK(s.module.dim() == 5);
    for (std::size_t i = 0; i < 2; ++i) {
        const ExactMatrix prod = s.projections[i].matrix * s.inclusions[i].matrix;
        CHECK(prod == ExactMatrix::identity(gf2, s.inclusions[i].source.dim()));
    }
    // E_t + E_inf, the M_5 kernel shape, has dim 4
    DirectSum k = direct_sum({construct(IndecompLabel::e(FieldPoly::t(gf2), 1), gf2),
                              construct(IndecompLabel::einf(1), gf2)});
    CHECK(k.module.dim() == 4);
}

TEST_CASE("socle, radical and head of the regular module") {
    KV4Module r = reg();
    Subspace soc = socle(r);
    CHECK(soc.dim() == 1);
    CHECK(soc.contains(Vec{0, 0, 0, 1}));
    Subspace rad = radical(r);
    CHECK(rad.dim() == 3);
    CHECK(head_dim(r) == 1);
    CHECK(head_dim(triv()) == 1);
}

TEST_CASE("kernel sums match the paper's remark") {
    CHECK(ker_sum(triv()).dim() == 1);
    KV4Module r = reg();
    Subspace ks = ker_sum(r);
    CHECK(ks.dim() == 3);
    CHECK(ks == radical(r));

    // M_9 (n = 4): dim 5
    CHECK(ker_sum(construct(IndecompLabel::m(4), gf2)).dim() == 5);
    // E_{t,4}: dim 5
    CHECK(ker_sum(construct(IndecompLabel::e(FieldPoly::t(gf2), 4), gf2)).dim() == 5);
    // radical of M_7 has dim 4, head 3
    KV4Module m7 = construct(IndecompLabel::m(3), gf2);
    CHECK(radical(m7).dim() == 4);
    CHECK(head_dim(m7) == 3);
    // W_3: ker(a) intersect ker(b) is the 1-dim socle
    KV4Module w3 = construct(IndecompLabel::w(1), gf2);
    CHECK(socle(w3).dim() == 1);
}

TEST_CASE("element kernels of the M_3 action") {
    KV4Module m3 = construct(IndecompLabel::m(1), gf2);
    Subspace ka = element_kernel(m3, Gen::A);
    CHECK(ka.dim() == 2);
    CHECK(ka.contains(Vec{0, 1, 0}));  // v0
    CHECK(ka.contains(Vec{0, 0, 1}));  // v1
}

TEST_CASE("submodule generation") {
    KV4Module r = reg();
    CHECK(submodule_generated(r, {Vec{0, 0, 0, 0}}).module.dim() == 0);

    // generated by a: span{a, ab}; a kills it, b sends a to ab
    SubmoduleResult s = submodule_generated(r, {Vec{0, 1, 0, 0}});
    CHECK(s.module.dim() == 2);
    CHECK(s.module.A().is_zero());
    CHECK(!s.module.B().is_zero());

    // u1 generates all of M_3
    KV4Module m3 = construct(IndecompLabel::m(1), gf2);
    Vec u1(3, 0);
    u1[u_index(IndecompLabel::m(1), 1)] = 1;
    CHECK(submodule_generated(m3, {u1}).module.dim() == 3);
}

TEST_CASE("quotients") {
    KV4Module m3 = construct(IndecompLabel::m(1), gf2);
    QuotientResult q = quotient(m3, Subspace::zero(gf2, 3));
    CHECK(q.module.dim() == 3);
    CHECK(q.module.A() == m3.A());

    // quotient by an unstable subspace is rejected: span{u1} is not stable
    Vec u1(3, 0);
    u1[0] = 1;
    CHECK_THROWS_AS(quotient(m3, Subspace::from_vectors(gf2, {u1}, 3)), Error);

    // quotient of kV4 by its socle has dim 3 and ab acts by zero
    KV4Module r = reg();
    QuotientResult q2 = quotient(r, socle(r));
    CHECK(q2.module.dim() == 3);
    CHECK((q2.module.A() * q2.module.B()).is_zero());
}

TEST_CASE("map kernel and duality") {
    KV4Module r = reg();
    KV4Module m3 = construct(IndecompLabel::m(1), gf2);
    // phi: kV4 -> M_3, w -> u1
    ExactMatrix phi(gf2, 3, 4);
    Vec img(3, 0);
    img[u_index(IndecompLabel::m(1), 1)] = 1;
    Vec aimg = m3.A().apply(img), bimg = m3.B().apply(img), abimg = m3.A().apply(bimg);
    for (std::size_t i = 0; i < 3; ++i) {
        if (img[i]) phi.set(i, 0, 1);
        if (aimg[i]) phi.set(i, 1, 1);
        if (bimg[i]) phi.set(i, 2, 1);
        if (abimg[i]) phi.set(i, 3, 1);
    }
    ModuleMap map = ModuleMap::make(r, m3, phi);
    CHECK(map.is_surjective());
    KernelResult k = map_kernel(map);
    CHECK(k.module.dim() == 1);
    CHECK(k.module.A().is_zero());
    CHECK(k.module.B().is_zero());

    // kernel of identity is zero
    ModuleMap id = ModuleMap::make(r, r, ExactMatrix::identity(gf2, 4));
    CHECK(map_kernel(id).module.dim() == 0);

    // dual of the surjection is injective
    ModuleMap dual_map = map_dual(map);
    CHECK(dual_map.is_injective());
    CHECK(dual_map.source.dim() == 3);

    // rank-nullity through maps
    CHECK(map_image(map).dim() + k.module.dim() == map.source.dim());

    // equivariance is enforced
    ExactMatrix bad(gf2, 3, 4);
    bad.set(0, 3, 1);
    CHECK_THROWS_AS(ModuleMap::make(r, m3, bad), Error);
}

TEST_CASE("dual is an involution on action matrices") {
    KV4Module m5 = construct(IndecompLabel::m(2), gf2);
    KV4Module dd = dual(dual(m5));
    CHECK(dd.A() == m5.A());
    CHECK(dd.B() == m5.B());
}

TEST_CASE("hom spaces by independent enumeration") {
    KV4Module k = triv();
    CHECK(hom_space(k, k).size() == 1);

    // oracle: enumerate all 4x4 matrices commuting with the kV4 action
    KV4Module r = reg();
    std::size_t count = 0;
    for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
        ExactMatrix x(gf2, 4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) x.set(i, j, (bits >> (4 * i + j)) & 1);
        if (x * r.A() == r.A() * x && x * r.B() == r.B() * x) ++count;
    }
    auto basis = hom_space(r, r);
    CHECK((std::size_t(1) << basis.size()) == count);
    CHECK(basis.size() == 4);

    // hom(k, M_3) lands in the socle: dim 2
    CHECK(hom_space(k, construct(IndecompLabel::m(1), gf2)).size() == 2);
}

TEST_CASE("module text format round trips bit-exactly") {
    for (IndecompLabel l : {IndecompLabel::m(2), IndecompLabel::reg(),
                            IndecompLabel::e(FieldPoly::from_mask(gf2, 0x7), 1)}) {
        KV4Module m = construct(l, gf2);
        std::string text = module_to_string(m);
        KV4Module back = module_from_string(text);
        CHECK(back == m);
        CHECK(module_to_string(back) == text);
    }
    FieldSpec gf4 = field_make(2);
    KV4Module e = construct(IndecompLabel::e(FieldPoly::linear(gf4, 2), 1), gf4);
    CHECK(module_from_string(module_to_string(e)) == e);
}

TEST_CASE("module relations hold for random direct sums under conjugation") {
    testutil::Rng rng(5);
    auto pool = testutil::default_poly_pool(gf2);
    for (int trial = 0; trial < 20; ++trial) {
        auto labels = testutil::random_labels(gf2, 30, rng, pool);
        std::vector<KV4Module> parts;
        for (const auto& l : labels) parts.push_back(construct(l, gf2));
        KV4Module sum = direct_sum(parts).module;
        if (sum.dim() == 0) continue;
        ExactMatrix g = testutil::random_invertible(gf2, sum.dim(), rng);
        CHECK_NOTHROW(testutil::conjugate(sum, g));
    }
}
