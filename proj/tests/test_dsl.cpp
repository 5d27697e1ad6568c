#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kleinperm/dsl.hpp"
#include "kleinperm/decompose.hpp"
#include "test_util.hpp"

using namespace kleinperm;

namespace {
const FieldSpec gf2 = field_make(1);
}

TEST_CASE("parse the one-node module") {
    ParseResult r = parse_diagram("module k over gf2 { basis theta; a:; b:; }");
    REQUIRE(r.ok());
    CHECK(r.ast->nodes == std::vector<std::string>{"theta"});
    KV4Module m = lower(*r.ast);
    CHECK(m.dim() == 1);
    CHECK(m.A().is_zero());
}

TEST_CASE("parse and lower M_3") {
    ParseResult r = parse_diagram(
        "module M3 over gf2 {\n"
        "  basis u1 v0 v1;\n"
        "  a: u1 -> v0;\n"
        "  b: u1 -> v1;\n"
        "}\n");
    REQUIRE(r.ok());
    KV4Module m = lower(*r.ast);
    CHECK(is_isomorphic(m, construct(IndecompLabel::m(1), gf2)));
}

TEST_CASE("dashed edges are plain linear combinations") {
    ParseResult r = parse_diagram(
        "module E over gf2 { basis u0 u1 v0 v1; a: u0 -> v0, u1 -> v1; b: u0 -> v1, u1 -> v0; }");
    REQUIRE(r.ok());
    KV4Module m = lower(*r.ast);
    CHECK(is_isomorphic(m, construct(IndecompLabel::e(FieldPoly::linear(gf2, 1), 2), gf2)));
}

TEST_CASE("coefficients and zero combinations") {
    ParseResult r = parse_diagram(
        "module x over gf2^2:7 { basis u v; a: u -> 2*v; b: u -> 0; }");
    REQUIRE(r.ok());
    KV4Module m = lower(*r.ast);
    CHECK(m.A().get(1, 0) == 2);
    CHECK(m.B().is_zero());
}

TEST_CASE("diagnostics carry positions and kinds") {
    ParseResult r1 = parse_diagram("module m over gf2 { basis a a; }");
    REQUIRE(!r1.ok());
    CHECK(r1.error->kind == ParseError::Kind::DuplicateNode);

    ParseResult r2 = parse_diagram("module m over gf2 { basis u; a: u -> nope; b:; }");
    REQUIRE(!r2.ok());
    CHECK(r2.error->kind == ParseError::Kind::UnknownNode);
    CHECK(r2.error->line == 1);

    ParseResult r3 = parse_diagram("module m over gf2 {\n  basis u\n}");
    REQUIRE(!r3.ok());
    CHECK(r3.error->kind == ParseError::Kind::Syntax);
    CHECK(r3.error->line >= 2);

    ParseResult r4 = parse_diagram("module m over gf7 { basis u; }");
    REQUIRE(!r4.ok());
}

TEST_CASE("lowering rejects relation violations") {
    // a-edge u->v and a-edge v->w means a^2 != 0
    ParseResult r = parse_diagram("module m over gf2 { basis u v w; a: u -> v, v -> w; b:; }");
    REQUIRE(r.ok());
    CHECK_THROWS_AS(lower(*r.ast), Error);
}

TEST_CASE("render/parse/lower round trip on catalogue labels") {
    std::vector<IndecompLabel> labels = {
        IndecompLabel::triv(), IndecompLabel::reg(), IndecompLabel::m(2), IndecompLabel::w(3),
        IndecompLabel::e(FieldPoly::t(gf2), 2), IndecompLabel::e(FieldPoly::from_mask(gf2, 0xB), 1),
        IndecompLabel::einf(3)};
    for (const IndecompLabel& l : labels) {
        KV4Module m = construct(l, gf2);
        std::string src = render(m);
        ParseResult r = parse_diagram(src);
        REQUIRE(r.ok());
        CHECK(is_isomorphic(lower(*r.ast), m));
    }
    // and on a conjugated direct sum
    testutil::Rng rng(9);
    KV4Module m = direct_sum({construct(IndecompLabel::m(1), gf2), construct(IndecompLabel::reg(), gf2)}).module;
    KV4Module tw = testutil::conjugate(m, testutil::random_invertible(gf2, m.dim(), rng));
    ParseResult r = parse_diagram(render(tw));
    REQUIRE(r.ok());
    CHECK(is_isomorphic(lower(*r.ast), m));
}

TEST_CASE("ascii diagrams have the right node counts") {
    std::string w3 = ascii_diagram(construct(IndecompLabel::w(1), gf2));
    // two upper nodes, one lower node
    CHECK(w3.find("u0") != std::string::npos);
    CHECK(w3.find("u1") != std::string::npos);
    CHECK(w3.find("v1") != std::string::npos);
    CHECK(w3.find("v0") == std::string::npos);
    CHECK(w3.find('\\') != std::string::npos);
    CHECK(w3.find('/') != std::string::npos);

    std::string e = ascii_diagram(construct(IndecompLabel::e(FieldPoly::from_mask(gf2, 0x7), 1), gf2));
    CHECK(e.find("dashed") != std::string::npos);

    CHECK(ascii_diagram(KV4Module::zero(gf2)) == "0\n");
}

TEST_CASE("parser survives fuzzing") {
    testutil::Rng rng(4242);
    const std::string valid =
        "module m over gf2 { basis u v; a: u -> v; b: u -> v; }";
    for (int trial = 0; trial < 30000; ++trial) {
        std::string input;
        if (trial % 2 == 0) {
            // random bytes
            const std::size_t len = rng.below(120);
            for (std::size_t i = 0; i < len; ++i) input.push_back(char(rng.next() & 0xFF));
        } else {
            // mutated valid source
            input = valid;
            for (int k = 0; k < 4; ++k) {
                if (input.empty()) break;
                const std::size_t at = rng.below(input.size());
                switch (rng.below(3)) {
                    case 0: input[at] = char(rng.next() & 0xFF); break;
                    case 1: input.erase(at, 1); break;
                    default: input.insert(at, 1, char(rng.next() & 0x7F)); break;
                }
            }
        }
        ParseResult r = parse_diagram(input);
        if (!r.ok()) {
            CHECK(r.error->line >= 1);
            CHECK(r.error->col >= 1);
        } else {
            CHECK_NOTHROW((void)r.ast->nodes.size());
        }
    }
}
