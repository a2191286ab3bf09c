#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "motsym/corpus.hpp"
#include "motsym/io.hpp"

using namespace motsym;
using tst::Fp;
using tst::Fq;
using tst::Q;

TEST_CASE("field descriptor round-trips") {
    for (const std::string& s : {"Q", "Fp(5)", "Fq(5,x^2+2)", "Q(t)", "Fp(7)(t)"}) {
        FieldPtr f = io::parse_field(s);
        REQUIRE(field_str(f) == s);
        REQUIRE(field_equal(io::parse_field(field_str(f)), f));
    }
    REQUIRE_THROWS_AS(io::parse_field("Fp(6)"), input_error);
    REQUIRE_THROWS_AS(io::parse_field("Zp(5)"), input_error);
}

TEST_CASE("matrix entries parse polynomial expressions") {
    auto q = Q();
    std::string s = "{field:\"Q\", d:1, l:2, mats:[[[3*t^2-1,0],[2,-t+4]],[[1,0],[0,1]]]}";
    io::Cursor c(s);
    SymbolTuple t = io::parse_tuple(c);
    REQUIRE(t.l() == 2);
    REQUIRE(t.size() == 2);
    MPoly e = t.mat(0).at(0, 0);
    MPoly expect = MPoly::variable(q, "t").pow(2) * MPoly::from_int(q, 3) - MPoly::from_int(q, 1);
    REQUIRE(e == expect);
    REQUIRE(t.mat(1).is_identity());
}

TEST_CASE("tuples over extension fields use the generator name") {
    std::string s = "{field:\"Fq(5,x^2+2)\", d:0, l:1, mats:[[[x,0],[0,x]]]}";
    io::Cursor c(s);
    SymbolTuple t = io::parse_tuple(c);
    auto f25 = t.field();
    FieldValue gen = FieldValue::extension(f25, {fv_zero(f25->base), fv_one(f25->base)});
    REQUIRE(t.mat(0).at(0, 0).constant_value() == gen);
    // and the wrong variable is rejected
    std::string bad = "{field:\"Q\", d:0, l:1, mats:[[[y]]]}";
    io::Cursor cb(bad);
    REQUIRE_THROWS_AS(io::parse_tuple(cb), input_error);
}

TEST_CASE("tuple and chain round-trips through str()") {
    Rng rng(404);
    auto q = Q();
    for (int it = 0; it < 6; ++it) {
        SymbolTuple t = gen::random_commuting_tuple(q, 1, 2, 2, rng);
        std::string s = t.str();
        io::Cursor c(s);
        REQUIRE(io::parse_tuple(c) == t);
    }
    Chain ch(SymbolContext{q, 0, 2});
    ch.add(tst::scalars(q, {2, 3}), 2);
    ch.add(tst::scalars(q, {4, 5}), -1);
    io::Cursor c2(ch.str());
    REQUIRE(io::parse_chain(c2) == ch);
}

TEST_CASE("milnor element parsing with rational function coordinates") {
    MilnorElement m = io::parse_milnor(
        "{field:\"Q(t)\", l:2, terms:[{coef:1, symbol:[\"(t^2-2)/(t+1)\",\"5\"]}]}");
    REQUIRE(m.weight() == 2);
    REQUIRE(m.terms().size() == 1);
    const auto& sym = m.terms().begin()->first;
    REQUIRE(sym[0].num().size() == 3);
    REQUIRE(sym[0].den().size() == 2);
    REQUIRE(io::parse_milnor(m.str()).terms() == m.terms());

    MilnorElement m2 = io::parse_milnor("{field:\"Q\", l:2, terms:[{coef:1, symbol:[\"2\",\"3\"]}]}");
    REQUIRE(invariant(m2).hilbert_bit == -1);
}

TEST_CASE("extension values print as generator polynomials") {
    auto f25 = Fq(5, {2, 0, 1});
    FieldValue x = FieldValue::extension(f25, {fv_from_int(f25->base, Int(3)), fv_one(f25->base)});
    REQUIRE(x.str() == "x+3");
}

TEST_CASE("every bundled certificate round-trips through the text format") {
    for (const auto& s : corpus::bundled_proofs()) {
        std::string text = io::write_certificate(s);
        CertificateScript parsed = io::parse_certificate(text);
        INFO("script " << s.name);
        REQUIRE(parsed.name == s.name);
        REQUIRE(parsed.context == s.context);
        REQUIRE(parsed.start == s.start);
        REQUIRE(parsed.goal == s.goal);
        REQUIRE(parsed.moves.size() == s.moves.size());
        Verdict v = run_certificate(parsed, 0x5eedf00d, false);
        INFO(v.message);
        REQUIRE(v.accepted);
    }
}
