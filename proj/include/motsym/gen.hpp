#pragma once

#include <utility>
#include <vector>

#include "motsym/milnor.hpp"
#include "motsym/symbols.hpp"

namespace motsym {
namespace gen {

inline FieldValue small_nonzero(const FieldPtr& k, Rng& rng) {
    for (;;) {
        long v = rng.range(-9, 9);
        FieldValue x = fv_from_int(k, Int(v));
        if (!x.is_zero()) return x;
    }
}

inline FieldValue small_not_01(const FieldPtr& k, Rng& rng) {
    for (;;) {
        FieldValue x = small_nonzero(k, rng);
        if (!x.is_one()) return x;
    }
}

// Random Steinberg symbol with small nonzero coordinates.
inline MilnorElement random_steinberg(const FieldPtr& k, int l, Rng& rng) {
    ValVec sym;
    for (int i = 0; i < l; ++i) sym.push_back(small_not_01(k, rng));
    return MilnorElement::single(k, sym);
}

// Random weight-2 element {f, g} over k(t), deg <= maxdeg, coefficients
// in [-9, 9].
inline MilnorElement random_ratfunc_pair(const FieldPtr& kt, int maxdeg, Rng& rng) {
    auto rpoly = [&](int dmax) {
        ValVec cs;
        int d = static_cast<int>(rng.range(0, dmax));
        for (int i = 0; i <= d; ++i) cs.push_back(fv_from_int(kt->base, Int(rng.range(-9, 9))));
        vecpoly::trim(cs);
        if (cs.empty()) cs.push_back(fv_one(kt->base));
        return cs;
    };
    for (;;) {
        FieldValue f = FieldValue::ratfunc(kt, rpoly(maxdeg), {fv_one(kt->base)});
        FieldValue g = FieldValue::ratfunc(kt, rpoly(maxdeg), {fv_one(kt->base)});
        if (f.is_zero() || g.is_zero() || f.is_one() || g.is_one()) continue;
        MilnorElement m(kt, 2);
        m.add({f, g}, 1);
        if (!m.is_formally_zero()) return m;
    }
}

// Elementary matrix with a single small off-diagonal entry.
inline PolyMatrix random_elementary(const FieldPtr& k, int n, Rng& rng) {
    PolyMatrix e = PolyMatrix::identity(k, n);
    if (n < 2) return e;
    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (i == j) j = (j + 1) % n;
    long c = rng.range(-3, 3);
    e.at(i, j) = MPoly::from_int(k, c);
    return e;
}

// Seed matrix for a commuting family: a constant diagonal of units, or a
// companion matrix of a monic polynomial with unit constant term (entries
// linear in t when d = 1).
inline PolyMatrix random_seed(const FieldPtr& k, int d, int n, Rng& rng) {
    if (rng.flip()) {
        PolyMatrix m(k, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = MPoly::constant(k, small_nonzero(k, rng));
        return m;
    }
    std::vector<MPoly> coeffs;
    coeffs.push_back(MPoly::constant(k, small_nonzero(k, rng)));  // unit constant term
    for (int i = 1; i < n; ++i) {
        MPoly ci = MPoly::from_int(k, rng.range(-3, 3));
        if (d == 1 && rng.flip())
            ci = ci + MPoly::variable(k, "t") * MPoly::from_int(k, rng.range(-2, 2));
        coeffs.push_back(ci);
    }
    coeffs.push_back(MPoly::constant(k, fv_one(k)));
    return PolyMatrix::companion(k, coeffs);
}

// Commuting l-tuple at simplicial degree d (0 or 1): polynomials of a
// single seed, conjugated by a product of at most 4 elementary matrices.
inline SymbolTuple random_commuting_tuple(const FieldPtr& k, int d, int l, int n, Rng& rng) {
    for (int attempt = 0;; ++attempt) {
        PolyMatrix seed = random_seed(k, d, n, rng);
        PolyMatrix g = PolyMatrix::identity(k, n);
        int ne = static_cast<int>(rng.below(5));
        for (int i = 0; i < ne; ++i) g = g * random_elementary(k, n, rng);
        PolyMatrix ginv = g.inverse();

        std::vector<PolyMatrix> mats;
        bool ok = true;
        for (int i = 0; i < l && ok; ++i) {
            // small polynomial of the seed
            PolyMatrix acc(k, n, n);
            PolyMatrix pw = PolyMatrix::identity(k, n);
            int deg = static_cast<int>(rng.range(0, 2));
            for (int e = 0; e <= deg; ++e) {
                long c = rng.range(-3, 3);
                if (e == deg && c == 0) c = 1;
                if (c != 0) {
                    PolyMatrix term = pw;
                    for (int r = 0; r < n; ++r)
                        for (int cc = 0; cc < n; ++cc)
                            term.at(r, cc) = term.at(r, cc) * fv_from_int(k, Int(c));
                    acc = acc + term;
                }
                if (e < deg) pw = pw * seed;
            }
            MPoly det = acc.det();
            if (det.is_zero() || !det.is_constant()) {
                ok = false;
                break;
            }
            mats.push_back(g * acc * ginv);
        }
        if (!ok) continue;
        try {
            return SymbolTuple::make(k, d, l, std::move(mats));
        } catch (const input_error&) {
            continue;
        }
    }
}

// Valid input pair for the companion homotopy: either equal polynomials,
// or the cross family A = (x-a)(x^2-b), B = (x^2-a)(x-b) whose products
// of roots and of (1-roots) match automatically.
inline std::pair<Poly, Poly> random_homotopy_pair(const FieldPtr& k, Rng& rng,
                                                  const std::string& var = "lambda") {
    auto linear = [&](const FieldValue& a) {
        return Poly(k, var, {fv_neg(a), fv_one(k)});
    };
    auto quad = [&](const FieldValue& a) {
        return Poly(k, var, {fv_neg(a), fv_zero(k), fv_one(k)});
    };
    if (rng.below(4) == 0) {
        // A = B, arbitrary monic with nonzero values at 0 and 1
        for (;;) {
            int n = static_cast<int>(rng.range(1, 3));
            ValVec cs;
            for (int i = 0; i < n; ++i) cs.push_back(fv_from_int(k, Int(rng.range(-4, 4))));
            cs.push_back(fv_one(k));
            Poly A(k, var, cs);
            if (!A.coeff(0).is_zero() && !A.eval(fv_one(k)).is_zero()) return {A, A};
        }
    }
    for (;;) {
        FieldValue a = small_not_01(k, rng);
        FieldValue b = small_not_01(k, rng);
        if (a == b) continue;
        Poly A = linear(a) * quad(b);
        Poly B = quad(a) * linear(b);
        if (A.eval(fv_one(k)).is_zero()) continue;  // a or b equal to 1 excluded already
        return {A, B};
    }
}

}  // namespace gen
}  // namespace motsym
