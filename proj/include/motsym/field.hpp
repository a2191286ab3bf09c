#pragma once

#include <cassert>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "motsym/common.hpp"

namespace motsym {

class FieldDesc;
using FieldPtr = std::shared_ptr<const FieldDesc>;

class FieldValue;
using ValVec = std::vector<FieldValue>;  // dense univariate coefficients, low degree first

// Description of an exact field: Q, F_p, an extension tower step
// k[x]/(f), or a rational function field k(t). Immutable; values hold a
// shared pointer to their field.
class FieldDesc {
  public:
    enum class Kind { Rationals, Prime, Extension, RatFunc };

    Kind kind;
    Int p;               // Prime only
    FieldPtr base;       // Extension / RatFunc
    ValVec modulus;      // Extension: monic irreducible over base, degree >= 1
    std::string var;     // Extension / RatFunc variable name

    static FieldPtr rationals();
    static FieldPtr prime(const Int& p);
    static FieldPtr extension(FieldPtr base, ValVec monic_modulus, std::string var);
    static FieldPtr ratfunc(FieldPtr base, std::string var);

    int ext_degree() const {  // [this : base] for extensions
        return static_cast<int>(modulus.size()) - 1;
    }

  private:
    FieldDesc() = default;
};

inline bool field_equal(const FieldPtr& a, const FieldPtr& b);

// An element of an exact field in canonical representation: reduced
// fraction for Q, least nonnegative residue for F_p, reduced coefficient
// vector for extensions, coprime monic-denominator pair for k(t).
class FieldValue {
  public:
    FieldValue() = default;

    const FieldPtr& field() const { return field_; }
    bool valid() const { return field_ != nullptr; }

    // --- constructors per kind (canonicalizing) ---
    static FieldValue rational(const FieldPtr& f, Rat q) {
        assert(f->kind == FieldDesc::Kind::Rationals);
        q.canonicalize();
        FieldValue v;
        v.field_ = f;
        v.rat_ = std::move(q);
        return v;
    }

    static FieldValue prime_residue(const FieldPtr& f, Int r) {
        assert(f->kind == FieldDesc::Kind::Prime);
        Int m = r % f->p;
        if (m < 0) m += f->p;
        FieldValue v;
        v.field_ = f;
        v.res_ = std::move(m);
        return v;
    }

    static FieldValue extension(const FieldPtr& f, ValVec coeffs);  // reduces mod modulus
    static FieldValue ratfunc(const FieldPtr& f, ValVec num, ValVec den);

    // --- canonical data access ---
    const Rat& rat() const { return rat_; }
    const Int& residue() const { return res_; }
    const ValVec& coeffs() const { return vec_; }           // Extension
    const ValVec& num() const { return vec_; }              // RatFunc numerator
    const ValVec& den() const { return den_; }              // RatFunc denominator

    bool is_zero() const;
    bool is_one() const;

    bool operator==(const FieldValue& o) const;
    bool operator!=(const FieldValue& o) const { return !(*this == o); }

    std::string str() const;

  private:
    FieldPtr field_;
    Rat rat_;      // Rationals
    Int res_;      // Prime
    ValVec vec_;   // Extension coefficients / RatFunc numerator
    ValVec den_;   // RatFunc denominator

    friend int value_cmp(const FieldValue& a, const FieldValue& b);
};

// ---------------------------------------------------------------------------
// Field constructors

inline FieldPtr FieldDesc::rationals() {
    static FieldPtr q = [] {
        auto d = std::shared_ptr<FieldDesc>(new FieldDesc());
        d->kind = Kind::Rationals;
        d->p = 0;
        return FieldPtr(d);
    }();
    return q;
}

inline FieldPtr FieldDesc::prime(const Int& p) {
    if (p == 0) return rationals();
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw input_error("field characteristic must be prime, got " + p.get_str());
    auto d = std::shared_ptr<FieldDesc>(new FieldDesc());
    d->kind = Kind::Prime;
    d->p = p;
    return FieldPtr(d);
}

inline FieldPtr FieldDesc::extension(FieldPtr base, ValVec monic_modulus, std::string var) {
    if (monic_modulus.size() < 2)
        throw input_error("extension modulus must have degree >= 1");
    if (!monic_modulus.back().is_one())
        throw input_error("extension modulus must be monic");
    auto d = std::shared_ptr<FieldDesc>(new FieldDesc());
    d->kind = Kind::Extension;
    d->base = std::move(base);
    d->modulus = std::move(monic_modulus);
    d->var = std::move(var);
    return FieldPtr(d);
}

inline FieldPtr FieldDesc::ratfunc(FieldPtr base, std::string var) {
    auto d = std::shared_ptr<FieldDesc>(new FieldDesc());
    d->kind = Kind::RatFunc;
    d->base = std::move(base);
    d->var = std::move(var);
    return FieldPtr(d);
}

// ---------------------------------------------------------------------------
// Value helpers

FieldValue fv_zero(const FieldPtr& f);
FieldValue fv_one(const FieldPtr& f);
FieldValue fv_from_int(const FieldPtr& f, const Int& n);
FieldValue fv_add(const FieldValue& a, const FieldValue& b);
FieldValue fv_sub(const FieldValue& a, const FieldValue& b);
FieldValue fv_neg(const FieldValue& a);
FieldValue fv_mul(const FieldValue& a, const FieldValue& b);
FieldValue fv_inv(const FieldValue& a);
FieldValue fv_div(const FieldValue& a, const FieldValue& b);
FieldValue fv_pow(const FieldValue& a, Int e);

inline FieldValue operator+(const FieldValue& a, const FieldValue& b) { return fv_add(a, b); }
inline FieldValue operator-(const FieldValue& a, const FieldValue& b) { return fv_sub(a, b); }
inline FieldValue operator-(const FieldValue& a) { return fv_neg(a); }
inline FieldValue operator*(const FieldValue& a, const FieldValue& b) { return fv_mul(a, b); }
inline FieldValue operator/(const FieldValue& a, const FieldValue& b) { return fv_div(a, b); }

// ---------------------------------------------------------------------------
// Low-level dense-coefficient arithmetic over a base field (used for
// extension and rational-function representations; the public Poly type
// wraps the same routines).

namespace vecpoly {

inline void trim(ValVec& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
}

inline ValVec add(const FieldPtr& f, const ValVec& a, const ValVec& b) {
    ValVec r(std::max(a.size(), b.size()), fv_zero(f));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = fv_add(r[i], b[i]);
    trim(r);
    return r;
}

inline ValVec neg(const ValVec& a) {
    ValVec r = a;
    for (auto& c : r) c = fv_neg(c);
    return r;
}

inline ValVec sub(const FieldPtr& f, const ValVec& a, const ValVec& b) {
    return add(f, a, neg(b));
}

inline ValVec mul(const FieldPtr& f, const ValVec& a, const ValVec& b) {
    if (a.empty() || b.empty()) return {};
    ValVec r(a.size() + b.size() - 1, fv_zero(f));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = fv_add(r[i + j], fv_mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

inline ValVec scale(const ValVec& a, const FieldValue& c) {
    ValVec r = a;
    for (auto& x : r) x = fv_mul(x, c);
    trim(r);
    return r;
}

// Euclidean division by a nonzero divisor; field coefficients, so always exact.
inline std::pair<ValVec, ValVec> divrem(const FieldPtr& f, ValVec a, const ValVec& b) {
    if (b.empty()) throw domain_error("polynomial division by zero");
    ValVec q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, fv_zero(f));
    FieldValue lead_inv = fv_inv(b.back());
    while (a.size() >= b.size()) {
        size_t shift = a.size() - b.size();
        FieldValue c = fv_mul(a.back(), lead_inv);
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = fv_sub(a[shift + i], fv_mul(c, b[i]));
        // leading term cancels exactly
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline ValVec rem(const FieldPtr& f, ValVec a, const ValVec& b) {
    return divrem(f, std::move(a), b).second;
}

inline ValVec monic(const ValVec& a) {
    if (a.empty()) return a;
    return scale(a, fv_inv(a.back()));
}

inline ValVec gcd(const FieldPtr& f, ValVec a, ValVec b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        ValVec r = rem(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<ValVec, ValVec, ValVec> xgcd(const FieldPtr& f, ValVec a, ValVec b) {
    ValVec s0{fv_one(f)}, s1{};
    ValVec t0{}, t1{fv_one(f)};
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto [q, r] = divrem(f, a, b);
        a = std::move(b);
        b = std::move(r);
        ValVec s2 = sub(f, s0, mul(f, q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        ValVec t2 = sub(f, t0, mul(f, q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (a.empty()) return {a, s0, t0};
    FieldValue c = fv_inv(a.back());
    return {scale(a, c), scale(s0, c), scale(t0, c)};
}

inline FieldValue eval(const FieldPtr& f, const ValVec& a, const FieldValue& x) {
    FieldValue r = fv_zero(f);
    for (size_t i = a.size(); i-- > 0;) r = fv_add(fv_mul(r, x), a[i]);
    return r;
}

}  // namespace vecpoly

// ---------------------------------------------------------------------------
// FieldValue implementation

inline FieldValue FieldValue::extension(const FieldPtr& f, ValVec coeffs) {
    assert(f->kind == FieldDesc::Kind::Extension);
    coeffs = vecpoly::rem(f->base, std::move(coeffs), f->modulus);
    coeffs.resize(static_cast<size_t>(f->ext_degree()), fv_zero(f->base));
    FieldValue v;
    v.field_ = f;
    v.vec_ = std::move(coeffs);
    return v;
}

inline FieldValue FieldValue::ratfunc(const FieldPtr& f, ValVec num, ValVec den) {
    assert(f->kind == FieldDesc::Kind::RatFunc);
    vecpoly::trim(num);
    vecpoly::trim(den);
    if (den.empty()) throw domain_error("rational function with zero denominator");
    ValVec g = vecpoly::gcd(f->base, num, den);
    if (!num.empty() && g.size() > 1) {
        num = vecpoly::divrem(f->base, std::move(num), g).first;
        den = vecpoly::divrem(f->base, std::move(den), g).first;
    }
    // normalize: monic denominator
    FieldValue lc = fv_inv(den.back());
    den = vecpoly::scale(den, lc);
    num = vecpoly::scale(num, lc);
    FieldValue v;
    v.field_ = f;
    v.vec_ = std::move(num);
    v.den_ = std::move(den);
    return v;
}

inline bool FieldValue::is_zero() const {
    switch (field_->kind) {
        case FieldDesc::Kind::Rationals: return rat_ == 0;
        case FieldDesc::Kind::Prime: return res_ == 0;
        case FieldDesc::Kind::Extension: {
            for (const auto& c : vec_)
                if (!c.is_zero()) return false;
            return true;
        }
        case FieldDesc::Kind::RatFunc: return vec_.empty();
    }
    return false;
}

inline bool FieldValue::is_one() const {
    switch (field_->kind) {
        case FieldDesc::Kind::Rationals: return rat_ == 1;
        case FieldDesc::Kind::Prime: return res_ == 1;
        case FieldDesc::Kind::Extension: {
            if (!vec_[0].is_one()) return false;
            for (size_t i = 1; i < vec_.size(); ++i)
                if (!vec_[i].is_zero()) return false;
            return true;
        }
        case FieldDesc::Kind::RatFunc:
            return vec_.size() == 1 && vec_[0].is_one() && den_.size() == 1;
    }
    return false;
}

inline bool FieldValue::operator==(const FieldValue& o) const {
    if (!field_ || !o.field_) return field_ == o.field_;
    if (!field_equal(field_, o.field_)) return false;
    switch (field_->kind) {
        case FieldDesc::Kind::Rationals: return rat_ == o.rat_;
        case FieldDesc::Kind::Prime: return res_ == o.res_;
        case FieldDesc::Kind::Extension: return vec_ == o.vec_;
        case FieldDesc::Kind::RatFunc: return vec_ == o.vec_ && den_ == o.den_;
    }
    return false;
}

inline FieldValue fv_zero(const FieldPtr& f) {
    switch (f->kind) {
        case FieldDesc::Kind::Rationals: return FieldValue::rational(f, Rat(0));
        case FieldDesc::Kind::Prime: return FieldValue::prime_residue(f, 0);
        case FieldDesc::Kind::Extension: return FieldValue::extension(f, {});
        case FieldDesc::Kind::RatFunc: return FieldValue::ratfunc(f, {}, {fv_one(f->base)});
    }
    throw domain_error("bad field kind");
}

inline FieldValue fv_one(const FieldPtr& f) {
    switch (f->kind) {
        case FieldDesc::Kind::Rationals: return FieldValue::rational(f, Rat(1));
        case FieldDesc::Kind::Prime: return FieldValue::prime_residue(f, 1);
        case FieldDesc::Kind::Extension: return FieldValue::extension(f, {fv_one(f->base)});
        case FieldDesc::Kind::RatFunc:
            return FieldValue::ratfunc(f, {fv_one(f->base)}, {fv_one(f->base)});
    }
    throw domain_error("bad field kind");
}

inline FieldValue fv_from_int(const FieldPtr& f, const Int& n) {
    switch (f->kind) {
        case FieldDesc::Kind::Rationals: return FieldValue::rational(f, Rat(n));
        case FieldDesc::Kind::Prime: return FieldValue::prime_residue(f, n);
        case FieldDesc::Kind::Extension: return FieldValue::extension(f, {fv_from_int(f->base, n)});
        case FieldDesc::Kind::RatFunc:
            return FieldValue::ratfunc(f, {fv_from_int(f->base, n)}, {fv_one(f->base)});
    }
    throw domain_error("bad field kind");
}

inline FieldValue fv_add(const FieldValue& a, const FieldValue& b) {
    const FieldPtr& f = a.field();
    switch (f->kind) {
        case FieldDesc::Kind::Rationals: return FieldValue::rational(f, a.rat() + b.rat());
        case FieldDesc::Kind::Prime: return FieldValue::prime_residue(f, a.residue() + b.residue());
        case FieldDesc::Kind::Extension:
            return FieldValue::extension(f, vecpoly::add(f->base, a.coeffs(), b.coeffs()));
        case FieldDesc::Kind::RatFunc: {
            ValVec n = vecpoly::add(f->base, vecpoly::mul(f->base, a.num(), b.den()),
                                    vecpoly::mul(f->base, b.num(), a.den()));
            return FieldValue::ratfunc(f, std::move(n), vecpoly::mul(f->base, a.den(), b.den()));
        }
    }
    throw domain_error("bad field kind");
}

inline FieldValue fv_neg(const FieldValue& a) {
    const FieldPtr& f = a.field();
    switch (f->kind) {
        case FieldDesc::Kind::Rationals: return FieldValue::rational(f, -a.rat());
        case FieldDesc::Kind::Prime: return FieldValue::prime_residue(f, -a.residue());
        case FieldDesc::Kind::Extension: return FieldValue::extension(f, vecpoly::neg(a.coeffs()));
        case FieldDesc::Kind::RatFunc:
            return FieldValue::ratfunc(f, vecpoly::neg(a.num()), a.den());
    }
    throw domain_error("bad field kind");
}

inline FieldValue fv_sub(const FieldValue& a, const FieldValue& b) { return fv_add(a, fv_neg(b)); }

inline FieldValue fv_mul(const FieldValue& a, const FieldValue& b) {
    const FieldPtr& f = a.field();
    switch (f->kind) {
        case FieldDesc::Kind::Rationals: return FieldValue::rational(f, a.rat() * b.rat());
        case FieldDesc::Kind::Prime: return FieldValue::prime_residue(f, a.residue() * b.residue());
        case FieldDesc::Kind::Extension:
            return FieldValue::extension(f, vecpoly::mul(f->base, a.coeffs(), b.coeffs()));
        case FieldDesc::Kind::RatFunc:
            return FieldValue::ratfunc(f, vecpoly::mul(f->base, a.num(), b.num()),
                                       vecpoly::mul(f->base, a.den(), b.den()));
    }
    throw domain_error("bad field kind");
}

inline FieldValue fv_inv(const FieldValue& a) {
    if (a.is_zero()) throw domain_error("division by zero in " + a.field()->var);
    const FieldPtr& f = a.field();
    switch (f->kind) {
        case FieldDesc::Kind::Rationals: return FieldValue::rational(f, 1 / a.rat());
        case FieldDesc::Kind::Prime: {
            Int inv;
            if (mpz_invert(inv.get_mpz_t(), a.residue().get_mpz_t(), f->p.get_mpz_t()) == 0)
                throw domain_error("residue not invertible");
            return FieldValue::prime_residue(f, inv);
        }
        case FieldDesc::Kind::Extension: {
            auto [g, s, t] = vecpoly::xgcd(f->base, a.coeffs(), f->modulus);
            if (g.size() != 1)
                throw domain_error("extension modulus not irreducible: unit gcd expected");
            return FieldValue::extension(f, vecpoly::scale(s, fv_inv(g[0])));
        }
        case FieldDesc::Kind::RatFunc: return FieldValue::ratfunc(f, a.den(), a.num());
    }
    throw domain_error("bad field kind");
}

inline FieldValue fv_div(const FieldValue& a, const FieldValue& b) { return fv_mul(a, fv_inv(b)); }

inline FieldValue fv_pow(const FieldValue& a, Int e) {
    if (e < 0) return fv_pow(fv_inv(a), -e);
    FieldValue r = fv_one(a.field());
    FieldValue base = a;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fv_mul(r, base);
        e >>= 1;
        if (e > 0) base = fv_mul(base, base);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Structural field equality and tower utilities

inline bool field_equal(const FieldPtr& a, const FieldPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case FieldDesc::Kind::Rationals: return true;
        case FieldDesc::Kind::Prime: return a->p == b->p;
        case FieldDesc::Kind::Extension:
            return a->var == b->var && field_equal(a->base, b->base) && a->modulus == b->modulus;
        case FieldDesc::Kind::RatFunc: return a->var == b->var && field_equal(a->base, b->base);
    }
    return false;
}

// True when `sub` occurs in the base chain of `f` (or equals it).
inline bool field_in_tower(const FieldPtr& f, const FieldPtr& sub) {
    for (FieldPtr cur = f; cur; cur = cur->base) {
        if (field_equal(cur, sub)) return true;
        if (cur->kind != FieldDesc::Kind::Extension) break;
    }
    return false;
}

// [f : sub], product of extension degrees along the tower.
inline int tower_degree(const FieldPtr& f, const FieldPtr& sub) {
    int d = 1;
    for (FieldPtr cur = f; cur; cur = cur->base) {
        if (field_equal(cur, sub)) return d;
        if (cur->kind != FieldDesc::Kind::Extension)
            throw domain_error("field is not an extension of the requested base");
        d *= cur->ext_degree();
    }
    throw domain_error("field is not an extension of the requested base");
}

inline Int field_characteristic(const FieldPtr& f) {
    FieldPtr cur = f;
    while (cur->kind == FieldDesc::Kind::Extension || cur->kind == FieldDesc::Kind::RatFunc)
        cur = cur->base;
    return cur->kind == FieldDesc::Kind::Prime ? cur->p : Int(0);
}

// Number of elements of a finite field (throws for infinite fields).
inline Int field_size(const FieldPtr& f) {
    if (f->kind == FieldDesc::Kind::Prime) return f->p;
    if (f->kind == FieldDesc::Kind::Extension) {
        Int b = field_size(f->base);
        Int r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(f->ext_degree()));
        return r;
    }
    throw domain_error("field is not finite");
}

inline bool field_is_finite(const FieldPtr& f) {
    return field_characteristic(f) != 0 && f->kind != FieldDesc::Kind::RatFunc;
}

// Embed a value of a field lower in the tower into `f` itself.
inline FieldValue fv_embed(const FieldPtr& f, const FieldValue& v) {
    if (field_equal(f, v.field())) return v;
    if (f->kind == FieldDesc::Kind::Extension)
        return FieldValue::extension(f, {fv_embed(f->base, v)});
    if (f->kind == FieldDesc::Kind::RatFunc)
        return FieldValue::ratfunc(f, {fv_embed(f->base, v)}, {fv_one(f->base)});
    throw domain_error("value does not embed into the requested field");
}

// Coordinates of v over the subfield `sub` in the tower-flattened power
// basis: basis elements x^j * (basis of base over sub), outer power major.
inline void flatten_coords(const FieldValue& v, const FieldPtr& sub, ValVec& out) {
    if (field_equal(v.field(), sub)) {
        out.push_back(v);
        return;
    }
    const FieldPtr& f = v.field();
    if (f->kind != FieldDesc::Kind::Extension)
        throw domain_error("cannot flatten: not an extension tower over the base");
    for (const auto& c : v.coeffs()) flatten_coords(c, sub, out);
}

inline ValVec flatten_coords(const FieldValue& v, const FieldPtr& sub) {
    ValVec out;
    flatten_coords(v, sub, out);
    return out;
}

// Rebuild a tower element from flattened coordinates (inverse of flatten_coords).
inline FieldValue unflatten_coords(const FieldPtr& f, const FieldPtr& sub, const ValVec& coords,
                                   size_t& pos) {
    if (field_equal(f, sub)) return coords[pos++];
    ValVec cs;
    cs.reserve(static_cast<size_t>(f->ext_degree()));
    for (int j = 0; j < f->ext_degree(); ++j) cs.push_back(unflatten_coords(f->base, sub, coords, pos));
    return FieldValue::extension(f, std::move(cs));
}

inline FieldValue unflatten_coords(const FieldPtr& f, const FieldPtr& sub, const ValVec& coords) {
    size_t pos = 0;
    FieldValue v = unflatten_coords(f, sub, coords, pos);
    if (pos != coords.size()) throw domain_error("coordinate vector has wrong length");
    return v;
}

// Total order on values of one field; used only for canonical sorting.
inline int value_cmp(const FieldValue& a, const FieldValue& b) {
    switch (a.field()->kind) {
        case FieldDesc::Kind::Rationals: return mpq_cmp(a.rat().get_mpq_t(), b.rat().get_mpq_t());
        case FieldDesc::Kind::Prime: return mpz_cmp(a.residue().get_mpz_t(), b.residue().get_mpz_t());
        case FieldDesc::Kind::Extension: {
            for (size_t i = 0; i < a.coeffs().size(); ++i) {
                int c = value_cmp(a.coeffs()[i], b.coeffs()[i]);
                if (c != 0) return c;
            }
            return 0;
        }
        case FieldDesc::Kind::RatFunc: {
            auto cmp_vec = [](const ValVec& x, const ValVec& y) {
                if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
                for (size_t i = 0; i < x.size(); ++i) {
                    int c = value_cmp(x[i], y[i]);
                    if (c != 0) return c;
                }
                return 0;
            };
            int c = cmp_vec(a.den(), b.den());
            if (c != 0) return c;
            return cmp_vec(a.num(), b.num());
        }
    }
    return 0;
}

inline bool fv_less(const FieldValue& a, const FieldValue& b) { return value_cmp(a, b) < 0; }

// ---------------------------------------------------------------------------
// Printing

namespace detail_io {
// polynomial rendering shared by field descriptors and value printing
inline std::string coeffs_str(const ValVec& v, const std::string& var, bool base_simple);
}  // namespace detail_io

inline std::string field_str(const FieldPtr& f) {
    switch (f->kind) {
        case FieldDesc::Kind::Rationals: return "Q";
        case FieldDesc::Kind::Prime: return "Fp(" + f->p.get_str() + ")";
        case FieldDesc::Kind::Extension: {
            bool base_simple = f->base->kind == FieldDesc::Kind::Rationals ||
                               f->base->kind == FieldDesc::Kind::Prime;
            std::string mod = detail_io::coeffs_str(f->modulus, f->var, base_simple);
            if (f->base->kind == FieldDesc::Kind::Prime)
                return "Fq(" + f->base->p.get_str() + "," + mod + ")";
            return "Ext(" + field_str(f->base) + "," + mod + "," + f->var + ")";
        }
        case FieldDesc::Kind::RatFunc: return field_str(f->base) + "(" + f->var + ")";
    }
    return "?";
}

namespace detail_io {
inline std::string coeffs_str(const ValVec& v, const std::string& var, bool base_simple) {
    std::ostringstream os;
    if (v.empty()) return "0";
    bool first = true;
    bool all_zero = true;
    for (size_t i = v.size(); i-- > 0;) {
        if (v[i].is_zero()) continue;
        all_zero = false;
        std::string c = v[i].str();
        if (i >= 1 && base_simple) {
            if (c == "1") c = "";
            else if (c == "-1") c = "-";
        }
        if (i >= 1 && !base_simple) c = "(" + c + ")";
        if (!first && c.rfind('-', 0) != 0) os << "+";
        os << c;
        if (i >= 1) {
            if (!c.empty() && c != "-") os << "*";
            os << var;
            if (i >= 2) os << "^" << i;
        }
        first = false;
    }
    return all_zero ? "0" : os.str();
}
}  // namespace detail_io

inline std::string FieldValue::str() const {
    switch (field_->kind) {
        case FieldDesc::Kind::Rationals: return rat_.get_str();
        case FieldDesc::Kind::Prime: return res_.get_str();
        case FieldDesc::Kind::Extension: {
            // polynomial in the tower generator, parseable back
            bool base_simple = field_->base->kind == FieldDesc::Kind::Rationals ||
                               field_->base->kind == FieldDesc::Kind::Prime;
            return detail_io::coeffs_str(vec_, field_->var, base_simple);
        }
        case FieldDesc::Kind::RatFunc: {
            bool base_simple = field_->base->kind == FieldDesc::Kind::Rationals ||
                               field_->base->kind == FieldDesc::Kind::Prime;
            std::string n = detail_io::coeffs_str(vec_, field_->var, base_simple);
            if (den_.size() == 1) return n;
            return "(" + n + ")/(" + detail_io::coeffs_str(den_, field_->var, base_simple) + ")";
        }
    }
    return "?";
}

}  // namespace motsym
