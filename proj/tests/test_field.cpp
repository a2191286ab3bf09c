#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace motsym;
using tst::Fp;
using tst::Fq;
using tst::Q;

TEST_CASE("rational field arithmetic is canonical") {
    auto f = Q();
    FieldValue a = FieldValue::rational(f, Rat(2, 4));
    FieldValue b = FieldValue::rational(f, Rat(1, 2));
    REQUIRE(a == b);
    REQUIRE((a + b).rat() == 1);
    REQUIRE(fv_inv(a).rat() == 2);
    REQUIRE(fv_pow(a, Int(-3)).rat() == 8);
}

TEST_CASE("prime field arithmetic") {
    auto f = Fp(7);
    FieldValue a = fv_from_int(f, Int(-3));
    REQUIRE(a.residue() == 4);
    REQUIRE(fv_mul(a, fv_inv(a)).is_one());
    REQUIRE(fv_pow(a, Int(6)).is_one());  // Fermat
}

TEST_CASE("extension field F_25 basics") {
    auto f = Fq(5, {2, 0, 1});  // F_5[x]/(x^2+2)
    FieldValue x = FieldValue::extension(f, {fv_zero(f->base), fv_one(f->base)});
    FieldValue x2 = fv_mul(x, x);
    REQUIRE(x2 == fv_from_int(f, Int(-2)));
    REQUIRE(fv_mul(x, fv_inv(x)).is_one());
    // multiplicative order divides 24
    REQUIRE(fv_pow(x, Int(24)).is_one());
}

TEST_CASE("tower of extensions and flattened coordinates") {
    auto f25 = Fq(5, {2, 0, 1});
    // (F_25)[y]/(y^2 - x), a tower of total degree 4 over F_5
    FieldValue xgen = FieldValue::extension(f25, {fv_zero(f25->base), fv_one(f25->base)});
    ValVec mod = {fv_neg(xgen), fv_zero(f25), fv_one(f25)};
    auto f625 = FieldDesc::extension(f25, mod, "y");
    auto f5 = f25->base;

    REQUIRE(tower_degree(f625, f5) == 4);
    REQUIRE(field_size(f625) == 625);
    REQUIRE(field_in_tower(f625, f25));
    REQUIRE(field_in_tower(f625, f5));

    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        FieldValue v = tst::rnd_value(f625, rng);
        ValVec c = flatten_coords(v, f5);
        REQUIRE(c.size() == 4);
        REQUIRE(unflatten_coords(f625, f5, c) == v);
    }
    // y^2 == x inside the tower
    FieldValue y = FieldValue::extension(f625, {fv_zero(f25), fv_one(f25)});
    REQUIRE(fv_mul(y, y) == fv_embed(f625, xgen));
}

TEST_CASE("field axioms on random triples") {
    Rng rng(42);
    std::vector<FieldPtr> fields = {Q(), Fp(7), Fq(5, {2, 0, 1}), Fq(2, {1, 1, 1})};
    for (const auto& f : fields) {
        for (int i = 0; i < 50; ++i) {
            FieldValue a = tst::rnd_value(f, rng);
            FieldValue b = tst::rnd_value(f, rng);
            FieldValue c = tst::rnd_value(f, rng);
            REQUIRE(fv_add(a, b) == fv_add(b, a));
            REQUIRE(fv_mul(a, b) == fv_mul(b, a));
            REQUIRE(fv_add(fv_add(a, b), c) == fv_add(a, fv_add(b, c)));
            REQUIRE(fv_mul(fv_mul(a, b), c) == fv_mul(a, fv_mul(b, c)));
            REQUIRE(fv_mul(a, fv_add(b, c)) == fv_add(fv_mul(a, b), fv_mul(a, c)));
            if (!a.is_zero()) REQUIRE(fv_mul(a, fv_inv(a)).is_one());
        }
    }
}

TEST_CASE("rational function field arithmetic") {
    auto qt = FieldDesc::ratfunc(Q(), "t");
    auto q = Q();
    // t and (t^2-1)/(t-1) == t+1
    FieldValue t = FieldValue::ratfunc(qt, {fv_zero(q), fv_one(q)}, {fv_one(q)});
    FieldValue num = FieldValue::ratfunc(qt, {fv_from_int(q, Int(-1)), fv_zero(q), fv_one(q)},
                                         {fv_from_int(q, Int(-1)), fv_one(q)});
    FieldValue tp1 = fv_add(t, fv_one(qt));
    REQUIRE(num == tp1);
    FieldValue r = fv_div(fv_one(qt), t);
    REQUIRE(fv_mul(r, t).is_one());
    REQUIRE(fv_sub(tp1, fv_one(qt)) == t);
}

TEST_CASE("value ordering is a strict total order on samples") {
    Rng rng(7);
    auto f = Fq(5, {2, 0, 1});
    for (int i = 0; i < 30; ++i) {
        FieldValue a = tst::rnd_value(f, rng);
        FieldValue b = tst::rnd_value(f, rng);
        int ab = value_cmp(a, b), ba = value_cmp(b, a);
        REQUIRE(ab == -ba);
        REQUIRE((ab == 0) == (a == b));
    }
}
