#pragma once

#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

#include "motsym/poly.hpp"

namespace motsym {

using Factorization = std::vector<std::pair<Poly, int>>;  // monic irreducible -> multiplicity

inline int factor_degree_cap(const FieldPtr& f) {
    if (const char* env = std::getenv("MOTSYM_DEGREE_LIMIT")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<int>(v);
    }
    return field_characteristic(f) == 0 ? 8 : 64;
}

namespace detail {

// Uniform-ish random element of a finite field (covers extension towers;
// essential for equal-degree splitting, where test elements confined to a
// subfield cannot separate Frobenius-conjugate factors).
inline FieldValue random_element(const FieldPtr& f, Rng& rng) {
    switch (f->kind) {
        case FieldDesc::Kind::Prime: {
            Int r = Int(rng.next());
            r = (r << 64) + Int(rng.next());
            return FieldValue::prime_residue(f, r % f->p);
        }
        case FieldDesc::Kind::Extension: {
            ValVec cs;
            for (int i = 0; i < f->ext_degree(); ++i) cs.push_back(random_element(f->base, rng));
            return FieldValue::extension(f, std::move(cs));
        }
        default:
            return fv_from_int(f, Int(static_cast<long>(rng.below(64)) - 31));
    }
}

// p-th root of a polynomial whose only nonzero coefficients sit at
// exponents divisible by p (arises in squarefree decomposition in char p).
inline Poly pth_root(const Poly& f, const Int& p, const Int& q) {
    ValVec out;
    Int frob_inv = q / p;  // a^(q/p) inverts Frobenius on F_q
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p.get_si()))
        out.push_back(fv_pow(f.coeff(static_cast<size_t>(i)), frob_inv));
    return Poly(f.field(), f.var(), std::move(out));
}

// Squarefree decomposition (Yun over char 0, the char-p variant over F_q).
inline void squarefree_decompose(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    Int p = field_characteristic(f.field());
    Poly d = f.derivative();
    if (d.is_zero()) {
        // every exponent divisible by p
        squarefree_decompose(pth_root(f, p, field_size(f.field())), mult * static_cast<int>(p.get_si()), out);
        return;
    }
    Poly c = gcd(f, d);
    Poly w = f / c;
    int i = 1;
    while (!w.is_constant()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (!z.is_constant()) out.emplace_back(z.monic(), mult * i);
        ++i;
        w = y;
        c = c / y;
    }
    if (!c.is_constant()) {
        if (p == 0) throw domain_error("squarefree decomposition stalled in characteristic 0");
        squarefree_decompose(pth_root(c, p, field_size(f.field())), mult * static_cast<int>(p.get_si()), out);
    }
}

// Cantor-Zassenhaus equal-degree splitting: f monic squarefree, all
// irreducible factors of degree d. Appends the factors to out.
inline void equal_degree(const Poly& f, int d, const Int& q, Rng& rng, std::vector<Poly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const FieldPtr& k = f.field();
    Poly one = Poly::constant(k, f.var(), fv_one(k));
    for (;;) {
        // random polynomial of degree < deg f
        ValVec cs;
        for (int i = 0; i < f.degree(); ++i) cs.push_back(random_element(k, rng));
        Poly a(k, f.var(), std::move(cs));
        if (a.is_constant()) continue;
        Poly g = gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, q, rng, out);
            equal_degree(f / g, d, q, rng, out);
            return;
        }
        Poly b;
        if (mpz_odd_p(q.get_mpz_t())) {
            Int e;
            mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            b = a.powmod(e, f) - one;
        } else {
            // trace map for characteristic 2
            Int md = Int(mpz_sizeinbase(q.get_mpz_t(), 2) - 1) * d;  // m*d where q = 2^m
            Poly t = a % f;
            Poly acc = t;
            for (Int i = 1; i < md; ++i) {
                t = (t * t) % f;
                acc = acc + t;
            }
            b = acc % f;
        }
        g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, q, rng, out);
            equal_degree(f / g, d, q, rng, out);
            return;
        }
    }
}

// Distinct-degree + equal-degree factorization of a monic squarefree f over F_q.
inline std::vector<Poly> factor_squarefree_fq(Poly f, Rng& rng) {
    std::vector<Poly> out;
    const FieldPtr& k = f.field();
    Int q = field_size(k);
    Poly x = Poly::variable(k, f.var());
    Poly h = x;  // x^(q^d) mod f, incrementally
    for (int d = 1; f.degree() >= 2 * d; ++d) {
        h = h.powmod(q, f);
        Poly g = gcd(h - x, f);
        if (g.degree() > 0) {
            equal_degree(g, d, q, rng, out);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.push_back(f);
    return out;
}

inline Int poly_height(const Poly& f) {  // max |numerator|, coefficients assumed integral
    Int h = 0;
    for (const auto& c : f.coeffs()) {
        Int a = abs(c.rat().get_num());
        if (a > h) h = a;
    }
    return h;
}

// Factor a primitive squarefree integer polynomial (given over Q) into
// irreducible monic rational polynomials, by factoring modulo one prime
// exceeding twice the factor-coefficient bound and recombining subsets.
inline std::vector<Poly> factor_squarefree_q(const Poly& f, Rng& rng) {
    const FieldPtr& Q = f.field();
    int n = f.degree();
    if (n == 1) return {f.monic()};
    Int lead = f.lead().rat().get_num();

    // Landau-Mignotte style bound on coefficients of lc(f)*g for g | f
    Int bound = poly_height(f) * abs(lead) * (n + 1);
    bound <<= static_cast<unsigned>(n + 1);

    Int p = bound * 2 + 3;
    FieldPtr fp;
    Poly fbar;
    for (;;) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (lead % p == 0) continue;
        fp = FieldDesc::prime(p);
        ValVec cs;
        for (const auto& c : f.coeffs()) cs.push_back(fv_from_int(fp, c.rat().get_num()));
        fbar = Poly(fp, f.var(), std::move(cs)).monic();
        if (gcd(fbar, fbar.derivative()).degree() == 0) break;  // squarefree mod p
    }

    std::vector<Poly> modular = factor_squarefree_fq(fbar, rng);

    auto lift_sym = [&](const Poly& g) {
        // coefficients of lc(f)*candidate in the symmetric range, then primitive part
        ValVec cs;
        Int content = 0;
        std::vector<Int> ints;
        FieldValue lc = fv_from_int(fp, lead);
        for (int i = 0; i <= g.degree(); ++i) {
            Int v = fv_mul(g.coeff(static_cast<size_t>(i)), lc).residue();
            if (v * 2 > p) v -= p;
            ints.push_back(v);
            content = gcd(content, v);
        }
        if (content == 0) content = 1;
        for (auto& v : ints) cs.push_back(FieldValue::rational(Q, Rat(v / content)));
        return Poly(Q, f.var(), std::move(cs));
    };

    std::vector<Poly> result;
    std::vector<Poly> pool = std::move(modular);
    Poly rest = f;
    size_t subset_size = 1;
    while (subset_size <= pool.size() / 2) {
        bool found = false;
        std::vector<size_t> idx(subset_size);
        for (size_t i = 0; i < subset_size; ++i) idx[i] = i;
        for (;;) {
            Poly cand = Poly::constant(fp, f.var(), fv_one(fp));
            for (size_t i : idx) cand = cand * pool[i];
            Poly g = lift_sym(cand);
            auto [quot, remp] = rest.divrem(g);
            if (!g.is_constant() && remp.is_zero()) {
                result.push_back(g.monic());
                rest = quot;
                std::vector<Poly> keep;
                for (size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < idx.size() && idx[j] == i) { ++j; continue; }
                    keep.push_back(pool[i]);
                }
                pool = std::move(keep);
                found = true;
                break;
            }
            // next subset (lexicographic)
            size_t i = subset_size;
            while (i > 0 && idx[i - 1] == pool.size() - subset_size + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (size_t j = i; j < subset_size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++subset_size;
    }
    if (rest.degree() > 0) result.push_back(rest.monic());
    return result;
}

}  // namespace detail

// Factor a nonzero univariate polynomial over F_q or Q into monic
// irreducibles with multiplicities; the product reconstructs the input up
// to its leading unit. Deterministic for a fixed seed.
inline Factorization factor_poly(const Poly& f, std::uint64_t seed = 0x5eedf00d) {
    if (f.is_zero()) throw input_error("cannot factor the zero polynomial");
    if (f.field()->kind == FieldDesc::Kind::RatFunc)
        throw unsupported_error("factorization over rational function fields is not provided");
    int cap = factor_degree_cap(f.field());
    if (f.degree() > cap)
        throw limit_error("factorization degree " + std::to_string(f.degree()) +
                          " exceeds cap " + std::to_string(cap));
    Rng rng(seed);
    Factorization out;
    if (f.degree() == 0) return out;

    std::vector<std::pair<Poly, int>> sqf;
    detail::squarefree_decompose(f.monic(), 1, sqf);
    for (auto& [part, mult] : sqf) {
        std::vector<Poly> irr;
        if (field_characteristic(f.field()) == 0) {
            // clear denominators to a primitive integer polynomial
            Int den = 1;
            for (const auto& c : part.coeffs()) den = lcm(den, Int(c.rat().get_den()));
            ValVec cs;
            for (const auto& c : part.coeffs())
                cs.push_back(FieldValue::rational(f.field(), Rat(c.rat() * den)));
            irr = detail::factor_squarefree_q(Poly(f.field(), f.var(), std::move(cs)), rng);
        } else {
            irr = detail::factor_squarefree_fq(part, rng);
        }
        for (auto& g : irr) out.emplace_back(std::move(g), mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int c = poly_cmp(a.first, b.first);
        return c != 0 ? c < 0 : a.second < b.second;
    });
    return out;
}

// Irreducibility over the coefficient field (degree cap applies).
inline bool poly_is_irreducible(const Poly& f, std::uint64_t seed = 0x5eedf00d) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    Factorization fs = factor_poly(f, seed);
    return fs.size() == 1 && fs[0].second == 1;
}

// All roots in the coefficient field, with multiplicities.
inline std::vector<std::pair<FieldValue, int>> poly_roots(const Poly& f, std::uint64_t seed = 0x5eedf00d) {
    std::vector<std::pair<FieldValue, int>> roots;
    for (const auto& [g, m] : factor_poly(f, seed))
        if (g.degree() == 1) roots.emplace_back(fv_neg(g.coeff(0)), m);
    return roots;
}

}  // namespace motsym
