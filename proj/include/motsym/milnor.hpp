#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motsym/factor.hpp"
#include "motsym/matrix.hpp"

namespace motsym {

struct VecLess {
    bool operator()(const ValVec& a, const ValVec& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i) {
            int c = value_cmp(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }
};

// Formal integer combination of Steinberg symbols {a_1, ..., a_l} over a
// field. Tuples with a coordinate equal to 1 die on construction; zero
// coordinates are rejected.
class MilnorElement {
  public:
    MilnorElement() = default;
    MilnorElement(FieldPtr field, int l) : field_(std::move(field)), l_(l) {}

    const FieldPtr& field() const { return field_; }
    int weight() const { return l_; }
    const std::map<ValVec, long, VecLess>& terms() const { return terms_; }
    bool is_formally_zero() const { return terms_.empty(); }

    void add(const ValVec& symbol, long coef) {
        if (static_cast<int>(symbol.size()) != l_)
            throw input_error("symbol arity does not match the weight");
        for (const auto& a : symbol) {
            if (!field_equal(a.field(), field_)) throw input_error("symbol coordinate in wrong field");
            if (a.is_zero()) throw input_error("symbol coordinate is zero");
        }
        if (coef == 0) return;
        for (const auto& a : symbol)
            if (a.is_one()) return;  // Steinberg symbols with a 1 vanish
        auto it = terms_.find(symbol);
        if (it == terms_.end()) terms_.emplace(symbol, coef);
        else {
            it->second += coef;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MilnorElement operator+(const MilnorElement& o) const {
        MilnorElement r = *this;
        for (const auto& [s, c] : o.terms_) r.add(s, c);
        return r;
    }
    MilnorElement operator-(const MilnorElement& o) const { return *this + o.scaled(-1); }
    MilnorElement scaled(long s) const {
        MilnorElement r(field_, l_);
        if (s != 0)
            for (const auto& [sym, c] : terms_) r.terms_.emplace(sym, c * s);
        return r;
    }

    static MilnorElement single(const FieldPtr& f, const ValVec& symbol, long coef = 1) {
        MilnorElement m(f, static_cast<int>(symbol.size()));
        m.add(symbol, coef);
        return m;
    }

    std::string str() const {
        std::string s = "{field:\"" + field_str(field_) + "\", l:" + std::to_string(l_) + ", terms:[";
        bool first = true;
        for (const auto& [sym, c] : terms_) {
            if (!first) s += ",";
            s += "{coef:" + std::to_string(c) + ", symbol:[";
            for (size_t i = 0; i < sym.size(); ++i) {
                if (i) s += ",";
                s += "\"" + sym[i].str() + "\"";
            }
            s += "]}";
            first = false;
        }
        return s + "]}";
    }

  private:
    FieldPtr field_;
    int l_ = 1;
    std::map<ValVec, long, VecLess> terms_;
};

// Discrete valuation on k(t): a monic irreducible of k[t], or v_infinity.
struct Valuation {
    bool infinite = false;
    Poly pi;  // finite case

    static Valuation at_infinity() {
        Valuation v;
        v.infinite = true;
        return v;
    }
    static Valuation finite(Poly monic_irreducible) {
        Valuation v;
        v.pi = std::move(monic_irreducible);
        return v;
    }

    std::string str() const { return infinite ? "v_inf" : "(" + pi.str() + ")"; }
};

// Residue field of a valuation on k(t): k for v_infinity and for linear
// uniformizers (collapsed), k[t]/(pi) otherwise.
inline FieldPtr residue_field(const FieldPtr& k, const Valuation& v) {
    if (v.infinite || v.pi.degree() == 1) return k;
    return FieldDesc::extension(k, v.pi.coeffs(), v.pi.var());
}

namespace detail {

inline int pi_multiplicity(Poly& f, const Poly& pi) {
    int m = 0;
    for (;;) {
        auto [q, r] = f.divrem(pi);
        if (!r.is_zero()) return m;
        f = q;
        ++m;
    }
}

struct UnitPart {
    long val;    // v(r)
    Poly num;    // unit numerator (coprime to pi / of matched degree at infinity)
    Poly den;
};

inline UnitPart split_at(const FieldValue& r, const Valuation& v, const FieldPtr& k,
                         const std::string& var) {
    Poly num(k, var, r.num());
    Poly den(k, var, r.den());
    if (num.is_zero()) throw input_error("tame symbol: zero coordinate");
    if (v.infinite) return {static_cast<long>(den.degree() - num.degree()), num, den};
    int vn = pi_multiplicity(num, v.pi);
    int vd = pi_multiplicity(den, v.pi);
    return {static_cast<long>(vn - vd), num, den};
}

// Image of the unit part in the residue field.
inline FieldValue unit_residue(const UnitPart& u, const Valuation& v, const FieldPtr& k,
                               const FieldPtr& kv) {
    if (v.infinite) {
        // leading coefficient ratio (degrees were balanced by t-powers)
        return fv_div(u.num.lead(), u.den.lead());
    }
    if (v.pi.degree() == 1) {
        FieldValue a = fv_neg(v.pi.coeff(0));
        return fv_div(u.num.eval(a), u.den.eval(a));
    }
    FieldValue gen = FieldValue::extension(kv, {fv_zero(k), fv_one(k)});
    return fv_div(u.num.eval_in(kv, gen), u.den.eval_in(kv, gen));
}

}  // namespace detail

// Tame symbol (residue map) K^M_{l+1}(k(t)) -> K^M_l(k_v): multilinear
// expansion into unit and uniformizer parts, the unit-coordinate rule,
// and the normalization {pi, pi} = {pi, -1} for colliding uniformizers.
inline MilnorElement tame_symbol(const MilnorElement& w, const Valuation& v) {
    const FieldPtr& kt = w.field();
    if (kt->kind != FieldDesc::Kind::RatFunc)
        throw input_error("tame symbol expects an element over a rational function field");
    const FieldPtr& k = kt->base;
    FieldPtr kv = residue_field(k, v);
    int l1 = w.weight();
    if (l1 < 1) throw input_error("tame symbol needs weight >= 1");
    MilnorElement out(kv, l1 - 1);

    for (const auto& [sym, coef] : w.terms()) {
        std::vector<detail::UnitPart> parts;
        for (const auto& r : sym) parts.push_back(detail::split_at(r, v, k, kt->var));

        std::vector<size_t> val_slots;
        for (size_t i = 0; i < parts.size(); ++i)
            if (parts[i].val != 0) val_slots.push_back(i);

        // expand over subsets of slots carrying the uniformizer
        size_t nslots = val_slots.size();
        for (size_t mask = 1; mask < (size_t{1} << nslots); ++mask) {
            long c = coef;
            std::vector<bool> is_pi(sym.size(), false);
            for (size_t b = 0; b < nslots; ++b)
                if (mask & (size_t{1} << b)) {
                    is_pi[val_slots[b]] = true;
                    c *= parts[val_slots[b]].val;
                }
            if (c == 0) continue;

            // collapse repeated uniformizers: {.., pi, .., pi, ..} = {.., pi, .., -1, ..}
            ValVec residues;  // unit residues in slot order, pi slot excluded
            int pi_slot = -1;
            int sign_moves = 0;
            for (size_t i = 0; i < sym.size(); ++i) {
                if (is_pi[i]) {
                    if (pi_slot < 0) pi_slot = static_cast<int>(i);
                    else residues.push_back(fv_from_int(kv, Int(-1)));
                } else {
                    residues.push_back(detail::unit_residue(parts[i], v, k, kv));
                }
            }
            // move the pi slot to the last position: each transposition flips the sign
            sign_moves = static_cast<int>(sym.size()) - 1 - pi_slot;
            if (sign_moves % 2 == 1) c = -c;
            out.add(residues, c);
        }
    }
    return out;
}

// N_{L/k} on K_1 = the usual field norm.
inline FieldValue norm_k1(const FieldValue& v, const FieldPtr& k) {
    if (v.is_zero()) throw input_error("norm of zero");
    return field_norm(v, k);
}

// Product of a weight-1 element: the complete K_1 invariant over any field.
inline FieldValue k1_product(const MilnorElement& m) {
    if (m.weight() != 1) throw domain_error("k1_product needs weight 1");
    FieldValue p = fv_one(m.field());
    for (const auto& [sym, c] : m.terms()) p = fv_mul(p, fv_pow(sym[0], Int(c)));
    return p;
}

// ---------------------------------------------------------------------------
// Weil reciprocity

struct PlaceReport {
    Valuation place;
    MilnorElement residue;      // weight l-1 over k_v
    FieldValue norm_contribution;  // in k^x
};

struct ReciprocityReport {
    bool holds = false;
    FieldValue product;  // in k^x
    std::vector<PlaceReport> places;
};

// For w of weight exactly 2 over k(t): enumerate the places with nonzero
// residue, push the K_1 residues through the field norms, and check that
// the product over all places is 1.
inline ReciprocityReport weil_reciprocity_check(const MilnorElement& w,
                                                std::uint64_t seed = 0x5eedf00d) {
    const FieldPtr& kt = w.field();
    if (kt->kind != FieldDesc::Kind::RatFunc)
        throw input_error("weil reciprocity expects k(t) coordinates");
    if (w.weight() != 2) throw input_error("weil reciprocity is checked at weight 2");
    const FieldPtr& k = kt->base;

    // candidate places: irreducible factors of all numerators/denominators
    std::vector<Poly> pis;
    auto add_factors = [&](const ValVec& vec) {
        Poly p(k, kt->var, vec);
        if (p.degree() < 1) return;
        for (const auto& [g, m] : factor_poly(p, seed)) {
            bool seen = false;
            for (const auto& q : pis)
                if (q == g) { seen = true; break; }
            if (!seen) pis.push_back(g);
        }
    };
    for (const auto& [sym, c] : w.terms())
        for (const auto& r : sym) {
            add_factors(r.num());
            add_factors(r.den());
        }

    ReciprocityReport rep;
    FieldValue prod = fv_one(k);
    std::vector<Valuation> places;
    for (const auto& pi : pis) places.push_back(Valuation::finite(pi));
    places.push_back(Valuation::at_infinity());

    for (const auto& v : places) {
        MilnorElement res = tame_symbol(w, v);
        FieldPtr kv = res.field();
        FieldValue contrib = fv_one(k);
        for (const auto& [sym, c] : res.terms()) {
            FieldValue n = field_equal(kv, k) ? sym[0] : norm_k1(sym[0], k);
            contrib = fv_mul(contrib, fv_pow(n, Int(c)));
        }
        prod = fv_mul(prod, contrib);
        rep.places.push_back(PlaceReport{v, std::move(res), std::move(contrib)});
    }
    rep.product = prod;
    rep.holds = prod.is_one();
    return rep;
}

// ---------------------------------------------------------------------------
// Complete invariants

// Canonical generator of F_q^x: first element in coordinate order whose
// order is q-1.
inline FieldValue fq_generator(const FieldPtr& f) {
    Int q = field_size(f);
    if (q > (Int(1) << 22)) throw limit_error("field too large for discrete logarithms");
    if (q == 2) return fv_one(f);  // trivial group
    Int qm1 = q - 1;
    std::vector<Int> prime_divs;
    Int rest = qm1, d = 2;
    while (d * d <= rest) {
        if (rest % d == 0) {
            prime_divs.push_back(d);
            while (rest % d == 0) rest /= d;
        }
        d += 1;
    }
    if (rest > 1) prime_divs.push_back(rest);

    // enumerate elements by counting in base p over the flattened coordinates
    Int p = field_characteristic(f);
    int n = 1;
    for (FieldPtr cur = f; cur->kind == FieldDesc::Kind::Extension; cur = cur->base)
        n *= cur->ext_degree();
    FieldPtr kp = f;
    while (kp->kind == FieldDesc::Kind::Extension) kp = kp->base;
    for (Int count = 2; count < q; count += 1) {
        Int c = count;
        ValVec coords;
        for (int i = 0; i < n; ++i) {
            coords.push_back(fv_from_int(kp, c % p));
            c /= p;
        }
        FieldValue g = field_equal(f, kp) ? coords[0] : unflatten_coords(f, kp, coords);
        bool primitive = true;
        for (const auto& ell : prime_divs)
            if (fv_pow(g, qm1 / ell).is_one()) { primitive = false; break; }
        if (primitive) return g;
    }
    throw domain_error("no generator found (field not cyclic?)");
}

inline Int discrete_log(const FieldValue& a, const FieldValue& g, const Int& q) {
    FieldValue pw = fv_one(a.field());
    for (Int e = 0; e < q - 1; e += 1) {
        if (pw == a) return e;
        pw = fv_mul(pw, g);
    }
    throw domain_error("discrete logarithm does not exist");
}

// 2-adic Hilbert symbol (a, b)_2 for nonzero rationals, in {+1, -1}:
// (a,b)_2 = (-1)^(eps(u)eps(v) + alpha*omega(v) + beta*omega(u)) where
// a = 2^alpha u, b = 2^beta v with u, v odd (including signs).
inline int hilbert2(const Rat& a, const Rat& b) {
    auto split = [](const Rat& x) {
        Int num = x.get_num(), den = x.get_den();
        long e = 0;
        while (num % 2 == 0) { num /= 2; ++e; }
        while (den % 2 == 0) { den /= 2; --e; }
        // odd part as a 2-adic unit: num/den with both odd; eps/omega only
        // depend on the value mod 8, so use num * den^{-1} mod 8
        Int u = (num * den) % 8;  // den^{-1} = den mod 8 for odd den squared... use num*den mod 8: den^2 = 1 mod 8
        if (u < 0) u += 8;
        return std::pair<long, Int>(e, u);
    };
    auto [alpha, u] = split(a);
    auto [beta, v] = split(b);
    auto eps = [](const Int& x) { return ((x - 1) / 2) % 2 != 0 ? 1 : 0; };
    auto omega = [](const Int& x) { return ((x * x - 1) / 8) % 2 != 0 ? 1 : 0; };
    long e = static_cast<long>(eps(u)) * eps(v) + alpha * omega(v) + beta * omega(u);
    return e % 2 == 0 ? 1 : -1;
}

inline long rat_val_p(const Rat& x, const Int& p) {
    long v = 0;
    Int num = x.get_num(), den = x.get_den();
    while (num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    return v;
}

// Tame symbol of {a, b} in K_2(Q) at an odd prime p, landing in F_p^x.
inline Int tame_qp(const Rat& a, const Rat& b, const Int& p) {
    long m = rat_val_p(a, p), n = rat_val_p(b, p);
    // (-1)^(mn) a^n / b^m mod p
    Rat r = Rat((m * n) % 2 == 0 ? 1 : -1);
    Rat ap = a, bp = b;
    auto powr = [](Rat base, long e) {
        Rat r(1);
        bool inv = e < 0;
        if (inv) e = -e;
        while (e--) r *= base;
        if (inv) r = 1 / r;
        return r;
    };
    r *= powr(a, n);
    r *= powr(1 / b, m);
    // r is a p-adic unit; reduce mod p
    Int num = r.get_num() % p, den = r.get_den() % p;
    if (num < 0) num += p;
    if (den < 0) den += p;
    Int dinv;
    mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    return (num * dinv) % p;
}

// Evaluated complete invariant: F_q all weights, Q at weights 1 and 2.
class MilnorInvariant {
  public:
    enum class Kind { TriviallyZero, FqExp, QFactored, QK2 };

    Kind kind = Kind::TriviallyZero;
    Int fq_modulus;             // q-1
    Int fq_exp;                 // FqExp: in [0, q-1)
    int sign = 1;               // QFactored
    std::map<Int, long> qexps;  // QFactored: prime -> exponent
    int hilbert_bit = 1;        // QK2: +-1
    std::map<Int, Int> tame;    // QK2: odd prime -> exponent of the canonical generator of F_p^x

    bool is_zero() const {
        switch (kind) {
            case Kind::TriviallyZero: return true;
            case Kind::FqExp: return fq_exp == 0;
            case Kind::QFactored: return sign == 1 && qexps.empty();
            case Kind::QK2: return hilbert_bit == 1 && tame.empty();
        }
        return false;
    }

    bool operator==(const MilnorInvariant& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case Kind::TriviallyZero: return true;
            case Kind::FqExp: return fq_modulus == o.fq_modulus && fq_exp == o.fq_exp;
            case Kind::QFactored: return sign == o.sign && qexps == o.qexps;
            case Kind::QK2: return hilbert_bit == o.hilbert_bit && tame == o.tame;
        }
        return false;
    }
    bool operator!=(const MilnorInvariant& o) const { return !(*this == o); }

    MilnorInvariant operator+(const MilnorInvariant& o) const {
        if (kind != o.kind) throw domain_error("invariant kinds differ");
        MilnorInvariant r = *this;
        switch (kind) {
            case Kind::TriviallyZero: break;
            case Kind::FqExp:
                r.fq_exp = (r.fq_exp + o.fq_exp) % r.fq_modulus;
                break;
            case Kind::QFactored:
                r.sign *= o.sign;
                for (const auto& [p, e] : o.qexps) {
                    r.qexps[p] += e;
                    if (r.qexps[p] == 0) r.qexps.erase(p);
                }
                break;
            case Kind::QK2:
                r.hilbert_bit *= o.hilbert_bit;
                for (const auto& [p, e] : o.tame) {
                    Int m = p - 1;
                    Int s = (r.tame.count(p) ? r.tame[p] : Int(0)) + e;
                    s %= m;
                    if (s < 0) s += m;
                    if (s == 0) r.tame.erase(p);
                    else r.tame[p] = s;
                }
                break;
        }
        return r;
    }

    MilnorInvariant negated() const {
        MilnorInvariant r = *this;
        switch (kind) {
            case Kind::TriviallyZero: break;
            case Kind::FqExp: r.fq_exp = (fq_modulus - fq_exp) % fq_modulus; break;
            case Kind::QFactored:
                for (auto& [p, e] : r.qexps) e = -e;
                break;
            case Kind::QK2:
                for (auto& [p, e] : r.tame) e = (p - 1) - e;
                break;
        }
        return r;
    }
    MilnorInvariant operator-(const MilnorInvariant& o) const { return *this + o.negated(); }

    std::string str() const {
        switch (kind) {
            case Kind::TriviallyZero: return "0 (trivial group)";
            case Kind::FqExp: return "g^" + fq_exp.get_str() + " (mod " + fq_modulus.get_str() + ")";
            case Kind::QFactored: {
                std::string s = sign < 0 ? "-1" : "1";
                for (const auto& [p, e] : qexps) s += " * " + p.get_str() + "^" + std::to_string(e);
                return s;
            }
            case Kind::QK2: {
                std::string s = "hilbert2=" + std::string(hilbert_bit < 0 ? "-1" : "+1");
                for (const auto& [p, e] : tame)
                    s += " tame[" + p.get_str() + "]=g^" + e.get_str();
                return s;
            }
        }
        return "?";
    }
};

// Factor a rational into sign and prime exponents (trial division).
inline MilnorInvariant q_factored(const Rat& x) {
    MilnorInvariant inv;
    inv.kind = MilnorInvariant::Kind::QFactored;
    inv.sign = sgn(x) < 0 ? -1 : 1;
    auto account = [&](Int n, long s) {
        n = abs(n);
        Int d = 2;
        while (d * d <= n) {
            while (n % d == 0) {
                inv.qexps[d] += s;
                if (inv.qexps[d] == 0) inv.qexps.erase(d);
                n /= d;
            }
            d += 1;
            if (d > 2000000) throw limit_error("rational too large to factor");
        }
        if (n > 1) {
            inv.qexps[n] += s;
            if (inv.qexps[n] == 0) inv.qexps.erase(n);
        }
    };
    account(x.get_num(), 1);
    account(x.get_den(), -1);
    return inv;
}

// Complete invariant of a Milnor element: F_q (any weight) and Q with
// weight <= 2. Everything else raises unsupported_error.
inline MilnorInvariant invariant(const MilnorElement& m) {
    const FieldPtr& f = m.field();
    bool finite = field_is_finite(f);
    bool rationals = f->kind == FieldDesc::Kind::Rationals;

    if (m.weight() == 1) {
        if (finite) {
            MilnorInvariant inv;
            inv.kind = MilnorInvariant::Kind::FqExp;
            Int q = field_size(f);
            inv.fq_modulus = q - 1;
            FieldValue g = fq_generator(f);
            inv.fq_exp = 0;
            for (const auto& [sym, c] : m.terms()) {
                Int e = discrete_log(sym[0], g, q) * c % inv.fq_modulus;
                inv.fq_exp = (inv.fq_exp + e % inv.fq_modulus + inv.fq_modulus) % inv.fq_modulus;
            }
            return inv;
        }
        if (rationals) {
            Rat prod(1);
            for (const auto& [sym, c] : m.terms()) {
                Rat base = sym[0].rat();
                long e = c;
                bool invb = e < 0;
                if (invb) e = -e;
                while (e--) prod *= invb ? 1 / base : base;
            }
            return q_factored(prod);
        }
        throw unsupported_error("no complete invariant for K_1 of this field here");
    }

    if (finite) {
        // K^M_l(F_q) = 0 for l >= 2
        MilnorInvariant inv;
        inv.kind = MilnorInvariant::Kind::TriviallyZero;
        return inv;
    }

    if (rationals && m.weight() == 2) {
        MilnorInvariant inv;
        inv.kind = MilnorInvariant::Kind::QK2;
        for (const auto& [sym, c] : m.terms()) {
            const Rat &a = sym[0].rat(), &b = sym[1].rat();
            if (c % 2 != 0) inv.hilbert_bit *= hilbert2(a, b);
            // odd primes appearing in either coordinate (collected from both
            // separately; products may cancel)
            std::map<Int, long> primes;
            for (const auto& [p, e] : q_factored(a).qexps) primes[p] = 1;
            for (const auto& [p, e] : q_factored(b).qexps) primes[p] = 1;
            for (const auto& [p, unused] : primes) {
                if (p == 2) continue;
                Int t = tame_qp(a, b, p);
                if (t == 1) continue;
                FieldPtr fp = FieldDesc::prime(p);
                Int dl = discrete_log(FieldValue::prime_residue(fp, t),
                                      fq_generator(fp), p);
                MilnorInvariant one;
                one.kind = MilnorInvariant::Kind::QK2;
                one.tame[p] = dl * c % (p - 1);
                if (one.tame[p] < 0) one.tame[p] += p - 1;
                if (one.tame[p] == 0) one.tame.erase(p);
                inv = inv + one;
            }
        }
        return inv;
    }

    throw unsupported_error("no complete invariant for (field, weight) = (" + field_str(f) + ", " +
                            std::to_string(m.weight()) + ")");
}

// Partial invariant for K^M_l(Q), l >= 3: the sign symbol at the real
// place, (a_1,...,a_l)_inf = -1 iff every coordinate is negative. Detects
// {-1,...,-1}; not complete.
inline int milnor_real_sign(const MilnorElement& m) {
    if (m.field()->kind != FieldDesc::Kind::Rationals)
        throw unsupported_error("real-place sign invariant is for Q only");
    long parity = 0;
    for (const auto& [sym, c] : m.terms()) {
        bool all_neg = true;
        for (const auto& a : sym)
            if (sgn(a.rat()) > 0) { all_neg = false; break; }
        if (all_neg) parity += c;
    }
    return parity % 2 == 0 ? 1 : -1;
}

}  // namespace motsym
