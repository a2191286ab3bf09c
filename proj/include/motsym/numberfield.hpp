#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "motsym/factor.hpp"
#include "motsym/matrix.hpp"

namespace motsym {

// A presentation of an extension tower L/k as a simple extension
// M = k[z]/(F) together with both directions of the isomorphism.
struct FlatField {
    FieldPtr tower;   // L as given
    FieldPtr base;    // k
    FieldPtr flat;    // k[z]/(F), F = minimal polynomial of the primitive element
    FieldValue primitive;            // the primitive element, as an element of L
    std::vector<ValVec> to_flat_m;   // matrix: tower-flattened coords -> flat coords
    std::vector<ValVec> from_flat_m; // inverse

    FieldValue to_flat(const FieldValue& v) const {
        ValVec c = flatten_coords(v, base);
        return apply(to_flat_m, flat, c);
    }
    FieldValue from_flat(const FieldValue& v) const {
        ValVec c = flatten_coords(v, base);
        return apply(from_flat_m, tower, c);
    }

  private:
    static FieldValue apply(const std::vector<ValVec>& cols, const FieldPtr& target, const ValVec& c) {
        // cols[j] = flattened coords (over base) of the image of basis vector j
        ValVec out(cols[0].size(), fv_zero(cols[0][0].field()));
        for (size_t j = 0; j < cols.size(); ++j) {
            if (c[j].is_zero()) continue;
            for (size_t i = 0; i < out.size(); ++i)
                out[i] = fv_add(out[i], fv_mul(c[j], cols[j][i]));
        }
        return unflatten_coords(target, out[0].field(), out);
    }
};

// Find a primitive element and the change-of-basis in both directions.
// Works over any base where towers are separable (Q and F_q here).
inline FlatField flatten_tower(const FieldPtr& L, const FieldPtr& k, const std::string& var = "z") {
    FlatField ff;
    ff.tower = L;
    ff.base = k;
    int n = tower_degree(L, k);

    // candidate primitive elements: integer combinations of the tower generators
    std::vector<FieldValue> gens;
    for (FieldPtr cur = L; !field_equal(cur, k); cur = cur->base) {
        ValVec coords(static_cast<size_t>(cur->ext_degree()), fv_zero(cur->base));
        coords[1 < coords.size() ? 1 : 0] = fv_one(cur->base);
        FieldValue gen = cur->ext_degree() == 1
                             ? fv_neg(cur->modulus[0])  // degree-1 step: generator is an element of the base
                             : FieldValue::extension(cur, std::move(coords));
        gens.push_back(fv_embed(L, gen));
    }

    FieldValue gamma = fv_zero(L);
    Poly F;
    for (long attempt = 0;; ++attempt) {
        // weights 1, w, w^2, ... over the generators; all but finitely
        // many w give a primitive element in a separable tower
        gamma = fv_zero(L);
        Int w(attempt + 1), pw(1);
        for (size_t i = 0; i < gens.size(); ++i) {
            gamma = fv_add(gamma, fv_mul(fv_from_int(L, pw), gens[i]));
            pw *= w;
        }
        F = min_poly(gamma, k, var);
        if (F.degree() == n) break;
        if (attempt > 200) throw domain_error("no primitive element found (tower not separable?)");
    }
    ff.primitive = gamma;
    ff.flat = n == 1 ? k : FieldDesc::extension(k, F.coeffs(), var);

    // change of basis: columns are flattened coords of gamma^j
    FMatrix P(k, n, n);
    FieldValue pw = fv_one(L);
    for (int j = 0; j < n; ++j) {
        ValVec col = flatten_coords(pw, k);
        for (int i = 0; i < n; ++i) P.at(i, j) = col[static_cast<size_t>(i)];
        pw = fv_mul(pw, gamma);
    }
    FMatrix Pinv = P.inverse();
    ff.to_flat_m.resize(static_cast<size_t>(n));
    ff.from_flat_m.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        ValVec tf(static_cast<size_t>(n), fv_zero(k)), fb(static_cast<size_t>(n), fv_zero(k));
        for (int i = 0; i < n; ++i) {
            tf[static_cast<size_t>(i)] = Pinv.at(i, j);  // e_j of tower basis -> coords in powers of gamma
            fb[static_cast<size_t>(i)] = P.at(i, j);     // gamma^j -> tower coords
        }
        ff.to_flat_m[static_cast<size_t>(j)] = std::move(tf);
        ff.from_flat_m[static_cast<size_t>(j)] = std::move(fb);
    }
    return ff;
}

namespace detail {

// Trager: factor a squarefree monic f over a simple extension Q[z]/(m)
// via norms. Returns monic irreducible factors.
inline std::vector<Poly> factor_squarefree_numberfield(const Poly& f, std::uint64_t seed) {
    const FieldPtr& L = f.field();
    const FieldPtr& Q = L->base;
    if (Q->kind != FieldDesc::Kind::Rationals)
        throw unsupported_error("number-field factorization expects a simple extension of Q");
    Poly m(Q, "zz", [&] {
        ValVec cs;
        for (const auto& c : L->modulus) cs.push_back(c);
        return cs;
    }());

    for (long s = 0;; s = (s <= 0 ? -s + 1 : -s)) {
        // F(y) = Res_x(m(x), f(y - s*x)) -- the norm of the shifted polynomial
        MPoly x = MPoly::variable(Q, "zz");
        MPoly y = MPoly::variable(Q, "yy");
        MPoly shift = y - x * MPoly::from_int(Q, s);
        // f(y - s*x) with coefficients of L written as polynomials in x
        MPoly fs(Q);
        for (int i = 0; i <= f.degree(); ++i) {
            MPoly coeff(Q);
            const FieldValue& ci = f.coeff(static_cast<size_t>(i));
            for (size_t j = 0; j < ci.coeffs().size(); ++j)
                coeff = coeff + x.pow(static_cast<int>(j)) * MPoly::constant(Q, ci.coeffs()[j]);
            fs = fs + coeff * shift.pow(i);
        }
        // Sylvester resultant in x; note deg_x(fs) depends on the shift
        int dm = m.degree(), df = f.degree();
        int dh = fs.degree_in("zz");
        if (dh == 0) continue;  // shift did not bring the generator in
        std::vector<MPoly> mc;
        for (int i = 0; i <= dm; ++i) mc.push_back(MPoly::constant(Q, m.coeff(static_cast<size_t>(i))));
        std::vector<MPoly> fc = fs.coeffs_in("zz");
        PolyMatrix syl(Q, dm + dh, dm + dh);
        for (int r = 0; r < dh; ++r)
            for (int i = 0; i <= dm; ++i) syl.at(r, r + i) = mc[static_cast<size_t>(dm - i)];
        for (int r = 0; r < dm; ++r)
            for (int i = 0; i <= dh; ++i) syl.at(dh + r, r + i) = fc[static_cast<size_t>(dh - i)];
        Poly norm = syl.det().to_poly("yy");

        if (norm.degree() != dm * df) continue;  // degenerate shift
        if (gcd(norm, norm.derivative()).degree() != 0) continue;  // need squarefree norm

        std::vector<Poly> out;
        FieldValue sL = fv_from_int(L, Int(s));
        FieldValue beta = FieldValue::extension(L, {fv_zero(Q), fv_one(Q)});
        for (const auto& [G, mult] : factor_poly(norm, seed)) {
            // g = gcd(f, G(y + s*beta)) over L
            ValVec Gcoeffs;
            for (int i = 0; i <= G.degree(); ++i) Gcoeffs.push_back(fv_embed(L, G.coeff(static_cast<size_t>(i))));
            Poly GL(L, f.var(), std::move(Gcoeffs));
            // substitute y := y + s*beta
            Poly shifted = Poly::constant(L, f.var(), fv_zero(L));
            Poly lin(L, f.var(), {fv_mul(sL, beta), fv_one(L)});
            for (int i = GL.degree(); i >= 0; --i)
                shifted = shifted * lin + Poly::constant(L, f.var(), GL.coeff(static_cast<size_t>(i)));
            Poly g = gcd(f, shifted);
            if (g.degree() > 0) out.push_back(g.monic());
        }
        int total = 0;
        for (const auto& g : out) total += g.degree();
        if (total == f.degree()) return out;
        // fall through: pathological shift, try next s
    }
}

}  // namespace detail

// Factorization over any field in scope: Q, F_q towers, and number-field
// towers over Q (via a primitive element and Trager's norm method).
inline Factorization factor_poly_anyfield(const Poly& f, std::uint64_t seed = 0x5eedf00d) {
    const FieldPtr& L = f.field();
    if (L->kind == FieldDesc::Kind::Rationals || L->kind == FieldDesc::Kind::Prime ||
        field_characteristic(L) != 0)
        return factor_poly(f, seed);

    // characteristic 0 extension tower
    FieldPtr Q = L;
    while (Q->kind == FieldDesc::Kind::Extension) Q = Q->base;
    if (tower_degree(L, Q) == 1) {
        // degree-1 tower: coefficients are really rationals
        ValVec cs;
        for (const auto& c : f.coeffs()) cs.push_back(flatten_coords(c, Q)[0]);
        Factorization down = factor_poly(Poly(Q, f.var(), std::move(cs)), seed);
        Factorization out;
        for (auto& [g, m] : down) {
            ValVec up;
            for (const auto& c : g.coeffs()) up.push_back(fv_embed(L, c));
            out.emplace_back(Poly(L, f.var(), std::move(up)), m);
        }
        return out;
    }

    int cap = factor_degree_cap(Q);
    FlatField ff = flatten_tower(L, Q, "zf");
    if (f.degree() * tower_degree(L, Q) > cap)
        throw limit_error("number-field factorization norm degree exceeds cap " + std::to_string(cap));

    ValVec flat_cs;
    for (const auto& c : f.coeffs()) flat_cs.push_back(ff.to_flat(c));
    Poly fflat(ff.flat, f.var(), std::move(flat_cs));

    Factorization out;
    std::vector<std::pair<Poly, int>> sqf;
    detail::squarefree_decompose(fflat.monic(), 1, sqf);
    for (auto& [part, mult] : sqf)
        for (auto& g : detail::factor_squarefree_numberfield(part, seed)) {
            ValVec back;
            for (const auto& c : g.coeffs()) back.push_back(ff.from_flat(c));
            out.emplace_back(Poly(L, f.var(), std::move(back)), mult);
        }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int c = poly_cmp(a.first, b.first);
        return c != 0 ? c < 0 : a.second < b.second;
    });
    return out;
}

}  // namespace motsym
