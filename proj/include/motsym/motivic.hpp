#pragma once

#include <optional>
#include <string>
#include <vector>

#include "motsym/k0.hpp"
#include "motsym/milnor.hpp"
#include "motsym/places.hpp"

namespace motsym {

// One summand N_{L/k}({alpha_1, ..., alpha_l}) of a phi image.
struct NormTaggedSymbol {
    FieldPtr norm_from;  // L, finite over the base field
    ValVec alphas;       // in L^x, none equal to 1
    long coef = 1;

    std::string str() const {
        std::string s = "{coef:" + std::to_string(coef) + ", norm_from:\"" + field_str(norm_from) +
                        "\", symbol:[";
        for (size_t i = 0; i < alphas.size(); ++i) {
            if (i) s += ",";
            s += "\"" + alphas[i].str() + "\"";
        }
        return s + "]}";
    }
};

// The Milnor-side image of a d=0 chain: norm-tagged symbols, plus the
// evaluated invariant whenever every term is within the computable range.
struct PhiImage {
    std::vector<NormTaggedSymbol> terms;
    std::optional<MilnorInvariant> inv;
    std::vector<std::string> symbolic;  // reasons for unevaluated terms

    bool fully_evaluated() const { return inv.has_value() && symbolic.empty(); }
};

// rho_l: Steinberg symbols to tuples of 1x1 matrices, extended linearly.
inline Chain rho(const MilnorElement& m) {
    const FieldPtr& k = m.field();
    if (k->kind == FieldDesc::Kind::RatFunc)
        throw input_error("rho expects symbols over a ground field, not k(t)");
    Chain out(SymbolContext{k, 0, m.weight()});
    for (const auto& [sym, c] : m.terms()) out.add(SymbolTuple::from_scalars(k, sym), c);
    return out;
}

namespace detail {

inline MilnorInvariant scaled_invariant(const MilnorInvariant& inv, long c) {
    MilnorInvariant acc = inv;
    MilnorInvariant step = c < 0 ? inv.negated() : inv;
    long n = c < 0 ? -c : c;
    // start from zero of the same kind
    acc = step - step;
    for (long i = 0; i < n; ++i) acc = acc + step;
    return acc;
}

}  // namespace detail

// phi_l: canonical class re-emitted as norm-tagged Milnor symbols
// sum_j N_{L_j/k}({alpha_1j, ..., alpha_lj}); invariants evaluated for
// F_q (any l) and Q (l <= 2), with number-field terms over Q at l = 2
// reduced through the place-wise tame compatibility when the relevant
// primes are unramified, and reported symbolically otherwise.
inline PhiImage phi(const Chain& c, std::uint64_t seed = 0x5eedf00d) {
    if (c.context().d != 0) throw domain_error("phi requires a d=0 chain");
    const FieldPtr& k = c.context().field;
    int l = c.context().l;
    K0Class cls = k0_class(c, seed);

    PhiImage out;
    for (const auto& [f, m] : cls.factors())
        out.terms.push_back(NormTaggedSymbol{f.field, f.alphas, m});

    bool finite = field_is_finite(k);
    bool rationals = k->kind == FieldDesc::Kind::Rationals;

    if (finite && l >= 2) {
        MilnorInvariant z;
        z.kind = MilnorInvariant::Kind::TriviallyZero;
        out.inv = z;
        return out;
    }
    if (finite && l == 1) {
        MilnorInvariant acc;
        acc.kind = MilnorInvariant::Kind::FqExp;
        Int q = field_size(k);
        acc.fq_modulus = q - 1;
        acc.fq_exp = 0;
        FieldValue g = fq_generator(k);
        for (const auto& t : out.terms) {
            FieldValue n = field_equal(t.norm_from, k) ? t.alphas[0] : field_norm(t.alphas[0], k);
            Int e = discrete_log(n, g, q) * t.coef % acc.fq_modulus;
            acc.fq_exp = ((acc.fq_exp + e) % acc.fq_modulus + acc.fq_modulus) % acc.fq_modulus;
        }
        out.inv = acc;
        return out;
    }
    if (rationals && l == 1) {
        Rat prod(1);
        for (const auto& t : out.terms) {
            FieldValue n = field_equal(t.norm_from, k) ? t.alphas[0] : field_norm(t.alphas[0], k);
            Rat base = n.rat();
            long e = t.coef;
            bool inv = e < 0;
            if (inv) e = -e;
            while (e--) prod *= inv ? 1 / base : base;
        }
        out.inv = q_factored(prod);
        return out;
    }
    if (rationals && l == 2) {
        MilnorInvariant acc;
        acc.kind = MilnorInvariant::Kind::QK2;
        bool all_ok = true;
        for (const auto& t : out.terms) {
            if (tower_degree(t.norm_from, k) == 1) {
                // the factor field is Q itself
                ValVec down;
                for (const auto& a : t.alphas) down.push_back(flatten_coords(a, k)[0]);
                MilnorElement e(k, 2);
                e.add(down, t.coef);
                acc = acc + invariant(e);
                continue;
            }
            NormK2Outcome o = norm_k2_invariant(t.norm_from, t.alphas[0], t.alphas[1], seed);
            if (!o.ok) {
                all_ok = false;
                out.symbolic.push_back(t.str() + ": " + o.reason);
                continue;
            }
            acc = acc + detail::scaled_invariant(o.inv, t.coef);
        }
        if (all_ok) out.inv = acc;
        return out;
    }

    out.symbolic.push_back("no complete invariant for (" + field_str(k) + ", l=" +
                           std::to_string(l) + "); terms reported symbolically");
    return out;
}

// ---------------------------------------------------------------------------
// Lemma-style companion homotopy

// Given monic A, B of the same degree n with A(0) = B(0) != 0 and
// A(1) = B(1) != 0, build the companion matrix of
// p(lambda) = (1-t) A(lambda) + t B(lambda) as a d=1 weight-1 tuple;
// both theta(t) and 1 - theta(t) are invertible over k[t].
inline SymbolTuple build_companion_homotopy(const Poly& A, const Poly& B) {
    const FieldPtr& k = A.field();
    if (!A.is_monic() || !B.is_monic())
        throw input_error("companion homotopy requires monic polynomials");
    if (A.degree() != B.degree())
        throw input_error("companion homotopy requires equal degrees");
    if (A.degree() < 1) throw input_error("companion homotopy requires degree >= 1");
    FieldValue a0 = A.coeff(0), b0 = B.coeff(0);
    if (a0.is_zero() || !(a0 == b0))
        throw input_error("product-of-roots constraint fails: need A(0) = B(0) != 0");
    FieldValue a1 = A.eval(fv_one(k)), b1 = B.eval(fv_one(k));
    if (a1.is_zero() || !(a1 == b1))
        throw input_error("product-of-(1-roots) constraint fails: need A(1) = B(1) != 0");

    MPoly t = MPoly::variable(k, "t");
    MPoly omt = MPoly::constant(k, fv_one(k)) - t;
    int n = A.degree();
    std::vector<MPoly> coeffs;
    for (int i = 0; i <= n; ++i) {
        MPoly ci = omt * MPoly::constant(k, A.coeff(static_cast<size_t>(i))) +
                   t * MPoly::constant(k, B.coeff(static_cast<size_t>(i)));
        coeffs.push_back(ci);
    }
    PolyMatrix theta = PolyMatrix::companion(k, coeffs);
    return SymbolTuple::make(k, 1, 1, {theta});
}

// ---------------------------------------------------------------------------
// Norm compatibility (the commutative square of the two norm maps)

struct NormCompatReport {
    bool computable = false;
    bool equal = false;
    std::string reason;
    std::optional<MilnorInvariant> motivic_side;
    std::optional<MilnorInvariant> milnor_side;
};

// Compare invariant(phi(restrict_scalars(rho(m)))) with the invariant of
// the Milnor-side norm, on the instance families where both are total:
// finite fields (all weights), and Q with monogenic L and terms reducible
// via the projection formula (all but at most one coordinate already
// rational).
inline NormCompatReport norm_compat_test(const FieldPtr& L, const FieldPtr& k,
                                         const MilnorElement& m, std::uint64_t seed = 0x5eedf00d) {
    NormCompatReport rep;
    if (!field_equal(m.field(), L)) throw input_error("element is not over L");
    if (!field_in_tower(L, k)) throw input_error("L is not an extension of k");

    // motivic side
    Chain motivic = restrict_scalars(rho(m), k);
    PhiImage img = phi(motivic, seed);
    if (!img.inv.has_value()) {
        rep.reason = "motivic side not fully evaluated: " +
                     (img.symbolic.empty() ? std::string("no invariant") : img.symbolic.front());
        return rep;
    }
    rep.motivic_side = img.inv;

    // Milnor side
    bool finite = field_is_finite(k);
    if (finite) {
        if (m.weight() >= 2) {
            MilnorInvariant z;
            z.kind = MilnorInvariant::Kind::TriviallyZero;
            rep.milnor_side = z;
        } else {
            MilnorElement normed(k, 1);
            for (const auto& [sym, c] : m.terms()) normed.add({field_norm(sym[0], k)}, c);
            rep.milnor_side = invariant(normed);
        }
    } else if (k->kind == FieldDesc::Kind::Rationals && m.weight() <= 2) {
        MilnorElement normed(k, m.weight());
        for (const auto& [sym, c] : m.terms()) {
            // projection formula: all coordinates but at most one must be
            // rational (constant coordinates in the tower)
            int odd_slot = -1;
            ValVec down(sym.size(), FieldValue());
            for (size_t i = 0; i < sym.size(); ++i) {
                ValVec fl = flatten_coords(sym[i], k);
                bool rational = true;
                for (size_t j = 1; j < fl.size(); ++j)
                    if (!fl[j].is_zero()) { rational = false; break; }
                if (rational) {
                    down[i] = fl[0];
                } else if (odd_slot < 0) {
                    odd_slot = static_cast<int>(i);
                } else {
                    rep.reason = "term has two non-rational coordinates; projection formula does not apply";
                    return rep;
                }
            }
            if (odd_slot < 0) {
                // fully rational: N{x_1,...,x_l} = [L:k] {x_1,...,x_l}
                normed.add(down, c * tower_degree(L, k));
            } else {
                down[static_cast<size_t>(odd_slot)] = field_norm(sym[static_cast<size_t>(odd_slot)], k);
                normed.add(down, c);
            }
        }
        rep.milnor_side = invariant(normed);
    } else {
        rep.reason = "no computable Milnor-side norm for this (field, weight)";
        return rep;
    }

    rep.computable = true;
    rep.equal = *rep.motivic_side == *rep.milnor_side;
    return rep;
}

}  // namespace motsym
