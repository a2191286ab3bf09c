#pragma once

#include <optional>
#include <string>
#include <vector>

#include "motsym/milnor.hpp"
#include "motsym/numberfield.hpp"

namespace motsym {

namespace places {

// ---------------------------------------------------------------------------
// Integer polynomials modulo p^N (dense, coefficients in [0, p^N))

using ZPoly = std::vector<Int>;

inline void zp_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const Int& mod) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % mod;
    zp_trim(r);
    return r;
}

inline ZPoly zp_add(const ZPoly& a, const ZPoly& b, const Int& mod) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % mod;
    zp_trim(r);
    return r;
}

inline ZPoly zp_sub(const ZPoly& a, const ZPoly& b, const Int& mod) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = ((r[i] - b[i]) % mod + mod) % mod;
    zp_trim(r);
    return r;
}

// Remainder of a by a monic divisor, coefficients mod `mod`.
inline ZPoly zp_rem_monic(ZPoly a, const ZPoly& b, const Int& mod) {
    while (a.size() >= b.size()) {
        Int c = a.back();
        size_t shift = a.size() - b.size();
        if (c != 0)
            for (size_t i = 0; i < b.size(); ++i)
                a[shift + i] = ((a[shift + i] - c * b[i]) % mod + mod) % mod;
        a.pop_back();
        zp_trim(a);
    }
    return a;
}

inline ZPoly zp_from_poly_fp(const Poly& f, const Int& mod) {
    ZPoly r;
    for (const auto& c : f.coeffs()) r.push_back(c.residue() % mod);
    zp_trim(r);
    return r;
}

inline Poly zp_to_poly_fp(const ZPoly& a, const FieldPtr& fp, const std::string& var) {
    ValVec cs;
    for (const auto& c : a) cs.push_back(fv_from_int(fp, c));
    return Poly(fp, var, std::move(cs));
}

// Linear Hensel lifting: F monic over Z, F = g*h mod p with gcd(g,h)=1
// in F_p[x]; returns the lift of g modulo p^N (monic).
inline ZPoly hensel_lift_factor(const ZPoly& F, Poly gbar, const Int& p, int N) {
    const FieldPtr fp = gbar.field();
    const std::string& var = gbar.var();
    Poly fbar = zp_to_poly_fp(F, fp, var);
    Poly hbar = fbar / gbar;
    auto [one, s, t] = vecpoly::xgcd(fp, gbar.coeffs(), hbar.coeffs());
    if (one.size() != 1) throw domain_error("hensel: factors are not coprime mod p");
    FieldValue u = fv_inv(one[0]);
    Poly S(fp, var, vecpoly::scale(s, u)), T(fp, var, vecpoly::scale(t, u));

    Int pk = p;
    ZPoly g = zp_from_poly_fp(gbar, p), h = zp_from_poly_fp(hbar, p);
    for (int k = 1; k < N; ++k) {
        Int pk1 = pk * p;
        // e = (F - g h)/p^k  (exact), reduced mod p
        ZPoly gh = zp_mul(g, h, pk1);
        ZPoly diff = zp_sub(F, gh, pk1);
        Poly ebar = [&] {
            ValVec cs;
            for (const auto& c : diff) cs.push_back(fv_from_int(fp, c / pk));
            return Poly(fp, var, std::move(cs));
        }();
        // solve u*h + v*g = e over F_p with deg u < deg g
        Poly ucorr = (T * ebar) % gbar;
        Poly vcorr = (ebar - ucorr * hbar) / gbar;
        // g += p^k u, h += p^k v
        ZPoly du, dv;
        for (const auto& c : ucorr.coeffs()) du.push_back(c.residue() * pk % pk1);
        for (const auto& c : vcorr.coeffs()) dv.push_back(c.residue() * pk % pk1);
        g = zp_add(g, du, pk1);
        h = zp_add(h, dv, pk1);
        pk = pk1;
    }
    return g;
}

// ---------------------------------------------------------------------------
// A monogenic presentation of a number field with an integral generator

struct IntegralFlat {
    FlatField ff;       // tower <-> Q[z]/(Fz)
    ZPoly F;            // integral monic defining polynomial (of c*gamma)
    Int scale;          // c: integral generator = c * gamma
    int degree = 0;

    // coordinates of v in powers of the integral generator: returns
    // (numerators A_i, common denominator d) with v = (1/d) sum A_i y^i
    std::pair<std::vector<Int>, Int> integral_coords(const FieldValue& v) const {
        FieldValue w = ff.to_flat(v);
        ValVec cs = degree == 1 ? ValVec{w} : w.coeffs();
        // v = sum_j b_j gamma^j = sum_j (b_j / c^j) y^j
        std::vector<Rat> rs;
        Int cpow = 1;
        for (int j = 0; j < degree; ++j) {
            Rat b = j < static_cast<int>(cs.size()) ? cs[static_cast<size_t>(j)].rat() : Rat(0);
            rs.push_back(b / Rat(cpow));
            cpow *= scale;
        }
        Int den = 1;
        for (const auto& r : rs) den = lcm(den, Int(r.get_den()));
        std::vector<Int> nums;
        for (const auto& r : rs) nums.push_back(Int(r.get_num()) * (den / Int(r.get_den())));
        return {nums, den};
    }
};

inline IntegralFlat integral_flat(const FieldPtr& L, const FieldPtr& Q) {
    IntegralFlat out;
    out.ff = flatten_tower(L, Q, "zf");
    out.degree = tower_degree(L, Q);
    // scale gamma so its minimal polynomial becomes integral:
    // minpoly of c*gamma has coefficients c^(n-i) a_i
    Poly F = out.degree == 1 ? Poly::from_ints(Q, "zf", {0, 1})
                             : Poly(Q, "zf", [&] {
                                   ValVec cs;
                                   for (const auto& c : out.ff.flat->modulus) cs.push_back(c);
                                   return cs;
                               }());
    Int c = 1;
    for (int i = 0; i < F.degree(); ++i) c = lcm(c, Int(F.coeff(static_cast<size_t>(i)).rat().get_den()));
    out.scale = c;
    int n = F.degree();
    out.F.assign(static_cast<size_t>(n) + 1, 0);
    Int cpow = 1;
    for (int i = n; i >= 0; --i) {
        Rat a = F.coeff(static_cast<size_t>(i)).rat() * Rat(cpow);
        if (a.get_den() != 1) throw domain_error("integral scaling failed");
        out.F[static_cast<size_t>(i)] = a.get_num();
        cpow *= c;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Valuations and residues at an unramified odd prime of a monogenic field

struct LocalPlace {
    Poly gbar;       // irreducible factor of F mod p
    FieldPtr kw;     // residue field F_p[x]/(gbar) (collapsed for degree 1)
    ZPoly glift;     // Hensel lift mod p^N
    int N = 0;
};

struct LocalData {
    Int p;
    FieldPtr fp;
    std::vector<LocalPlace> ws;
};

// Prepare the places of L above an odd prime p; returns nothing when the
// presentation is not etale at p (ramified or non-maximal order).
inline std::optional<LocalData> places_above(const IntegralFlat& ifl, const Int& p,
                                             std::uint64_t seed) {
    if (p == 2 || ifl.scale % p == 0) return std::nullopt;
    LocalData ld;
    ld.p = p;
    ld.fp = FieldDesc::prime(p);
    Poly fbar = zp_to_poly_fp(ifl.F, ld.fp, "x");
    if (fbar.degree() != ifl.degree) return std::nullopt;
    if (gcd(fbar, fbar.derivative()).degree() != 0) return std::nullopt;  // ramified
    for (const auto& [g, m] : factor_poly(fbar, seed)) {
        LocalPlace w;
        w.gbar = g;
        w.kw = g.degree() == 1 ? ld.fp : FieldDesc::extension(ld.fp, g.coeffs(), "x");
        w.N = 0;
        ld.ws.push_back(std::move(w));
    }
    return ld;
}

inline void ensure_lift(const IntegralFlat& ifl, LocalData& ld, LocalPlace& w, int N) {
    if (w.N >= N) return;
    w.glift = hensel_lift_factor(ifl.F, w.gbar, ld.p, N);
    w.N = N;
}

// w-adic valuation and unit residue of a nonzero element given by integral
// coordinates over a common denominator.
struct ValRes {
    long val;
    FieldValue residue;  // in kw
};

inline ValRes local_val_res(const IntegralFlat& ifl, LocalData& ld, LocalPlace& w,
                            const std::vector<Int>& nums, const Int& den) {
    long dval = 0;
    Int d = den;
    while (d % ld.p == 0) { d /= ld.p; ++dval; }

    int N = std::max(8, w.N);
    for (;;) {
        ensure_lift(ifl, ld, w, N);
        Int pN;
        mpz_pow_ui(pN.get_mpz_t(), ld.p.get_mpz_t(), static_cast<unsigned long>(N));
        ZPoly A;
        for (const auto& c : nums) A.push_back(((c % pN) + pN) % pN);
        zp_trim(A);
        if (A.empty()) {  // divisible by p^N entirely: raise precision
            bool all_zero = true;
            for (const auto& c : nums)
                if (c != 0) { all_zero = false; break; }
            if (all_zero) throw domain_error("valuation of zero");
            N *= 2;
            if (N > 512) throw limit_error("p-adic precision overflow");
            continue;
        }
        ZPoly r = zp_rem_monic(A, w.glift, pN);
        long v = -1;
        for (const auto& c : r) {
            if (c == 0) continue;
            Int x = c;
            long vv = 0;
            while (x % ld.p == 0) { x /= ld.p; ++vv; }
            if (v < 0 || vv < v) v = vv;
        }
        if (v < 0 || v >= N / 2) {  // all zero mod p^N or too close to precision
            N *= 2;
            if (N > 512) throw limit_error("p-adic precision overflow");
            continue;
        }
        // unit part residue: (r / p^v) mod (p, gbar)
        Int pv;
        mpz_pow_ui(pv.get_mpz_t(), ld.p.get_mpz_t(), static_cast<unsigned long>(v));
        ValVec cs;
        for (const auto& c : r) cs.push_back(fv_from_int(ld.fp, c / pv));
        Poly u = Poly(ld.fp, "x", std::move(cs)) % w.gbar;
        FieldValue res;
        if (w.gbar.degree() == 1) {
            res = u.eval(fv_neg(w.gbar.coeff(0)));
        } else {
            FieldValue gen = FieldValue::extension(w.kw, {fv_zero(ld.fp), fv_one(ld.fp)});
            res = u.eval_in(w.kw, gen);
        }
        // divide by the unit part of the denominator
        FieldValue dres = fv_embed(w.kw, fv_from_int(ld.fp, d));
        return ValRes{v - dval, fv_div(res, dres)};
    }
}

// ---------------------------------------------------------------------------
// Sturm sequences: real root isolation and exact signs at the real places

inline int sign_at(const Poly& f, const Rat& x) {
    Rat acc(0);
    for (size_t i = f.coeffs().size(); i-- > 0;) acc = acc * x + f.coeffs()[i].rat();
    return sgn(acc);
}

inline std::vector<Poly> sturm_chain(const Poly& f) {
    std::vector<Poly> chain{f, f.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        Poly r = chain[chain.size() - 2] % chain.back();
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

inline int sturm_variations(const std::vector<Poly>& chain, const Rat& x) {
    int v = 0, last = 0;
    for (const auto& g : chain) {
        int s = sign_at(g, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

// Count of real roots in (a, b].
inline int sturm_count(const std::vector<Poly>& chain, const Rat& a, const Rat& b) {
    return sturm_variations(chain, a) - sturm_variations(chain, b);
}

// Isolating intervals for all real roots of a squarefree rational polynomial.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const Poly& f) {
    std::vector<Poly> chain = sturm_chain(f);
    // Cauchy bound
    Rat bound(1);
    for (size_t i = 0; i + 1 < f.coeffs().size(); ++i) {
        Rat c = abs(f.coeffs()[i].rat() / f.lead().rat());
        if (c > bound) bound = c;
    }
    bound += 1;
    std::vector<std::pair<Rat, Rat>> out;
    std::vector<std::pair<Rat, Rat>> todo{{-bound, bound}};
    while (!todo.empty()) {
        auto [a, b] = todo.back();
        todo.pop_back();
        int cnt = sturm_count(chain, a, b);
        if (cnt == 0) continue;
        if (cnt == 1) {
            out.emplace_back(a, b);
            continue;
        }
        Rat mid = (a + b) / 2;
        while (sign_at(f, mid) == 0) mid = (a + mid) / 2;  // split off the root
        todo.emplace_back(a, mid);
        todo.emplace_back(mid, b);
    }
    return out;
}

// Sign of g at the unique root of f inside (a, b); f squarefree, g not
// divisible by f (i.e. nonzero at the root).
inline int sign_at_root(const Poly& f, std::pair<Rat, Rat> iv, const Poly& g) {
    std::vector<Poly> fchain = sturm_chain(f);
    Poly gs = g / gcd(g, g.derivative());  // squarefree part
    std::vector<Poly> gchain = sturm_chain(gs);
    auto [a, b] = iv;
    for (int iter = 0; iter < 20000; ++iter) {
        if (sturm_count(gchain, a, b) == 0) {
            // g has constant sign on [a, b]
            int sa = sign_at(g, a);
            if (sa != 0) return sa;
            int sb = sign_at(g, b);
            return sb;
        }
        Rat mid = (a + b) / 2;
        while (sign_at(f, mid) == 0) mid = (a + mid) / 2;
        if (sturm_count(fchain, a, mid) == 1) b = mid;
        else a = mid;
    }
    throw limit_error("real sign refinement did not converge");
}

}  // namespace places

// ---------------------------------------------------------------------------
// K_2(Q) invariant of a norm symbol N_{L/Q}({alpha, beta})

struct NormK2Outcome {
    bool ok = false;
    MilnorInvariant inv;
    std::string reason;  // when !ok: why the term stays symbolic
};

// Evaluate the complete (hilbert2, odd tame) invariant of
// N_{L/Q}({alpha, beta}) in K_2(Q):
//   - odd tame components via the place-wise tame compatibility
//     sum_{w|p} N_{kw/Fp} (del_w {alpha,beta}) at unramified monogenic p,
//   - the real-place Hilbert symbols via exact Sturm sign computation,
//   - the 2-adic bit via the Hilbert product formula.
// Ramified relevant odd primes make the term symbolic.
inline NormK2Outcome norm_k2_invariant(const FieldPtr& L, const FieldValue& alpha,
                                       const FieldValue& beta, std::uint64_t seed = 0x5eedf00d) {
    NormK2Outcome out;
    FieldPtr Q = L;
    while (Q->kind == FieldDesc::Kind::Extension) Q = Q->base;
    if (Q->kind != FieldDesc::Kind::Rationals) {
        out.reason = "base field is not Q";
        return out;
    }
    if (alpha.is_zero() || beta.is_zero()) throw input_error("zero coordinate in a norm symbol");

    places::IntegralFlat ifl = places::integral_flat(L, Q);

    // relevant odd primes: divisors of the coordinate denominators and of
    // the numerator/denominator of both norms
    std::map<Int, bool> relevant;
    auto add_primes_of = [&](Int n) {
        n = abs(n);
        Int d = 3;
        while (n % 2 == 0) n /= 2;
        while (d * d <= n) {
            if (n % d == 0) {
                relevant[d] = true;
                while (n % d == 0) n /= d;
            }
            d += 2;
            if (d > 2000000) throw limit_error("norm too large to factor");
        }
        if (n > 1) relevant[n] = true;
    };
    for (const FieldValue* v : {&alpha, &beta}) {
        auto [nums, den] = ifl.integral_coords(*v);
        add_primes_of(den);
        Rat nv = field_norm(*v, Q).rat();
        add_primes_of(nv.get_num());
        add_primes_of(nv.get_den());
    }

    MilnorInvariant inv;
    inv.kind = MilnorInvariant::Kind::QK2;
    int hilbert_from_odd = 1;

    auto [anums, aden] = ifl.integral_coords(alpha);
    auto [bnums, bden] = ifl.integral_coords(beta);

    for (const auto& [p, unused] : relevant) {
        auto ld = places::places_above(ifl, p, seed);
        if (!ld) {
            out.reason = "prime " + p.get_str() + " is ramified or non-maximal for the presentation";
            return out;
        }
        FieldValue tp = fv_one(ld->fp);  // product of norms of local tame symbols
        for (auto& w : ld->ws) {
            places::ValRes va = places::local_val_res(ifl, *ld, w, anums, aden);
            places::ValRes vb = places::local_val_res(ifl, *ld, w, bnums, bden);
            if (va.val == 0 && vb.val == 0) continue;
            // del_w {alpha, beta} = (-1)^(mn) a^n / b^m in kw
            FieldValue r = fv_mul(fv_pow(va.residue, Int(vb.val)), fv_pow(vb.residue, Int(-va.val)));
            if ((va.val * vb.val) % 2 != 0) r = fv_neg(r);
            FieldValue nr = field_equal(w.kw, ld->fp) ? r : field_norm(r, ld->fp);
            tp = fv_mul(tp, nr);
        }
        if (!tp.is_one()) {
            Int dl = discrete_log(tp, fq_generator(ld->fp), p);
            inv.tame[p] = dl;
            // Legendre symbol of the tame component = local Hilbert symbol
            if (fv_pow(tp, (p - 1) / 2).is_one() == false) hilbert_from_odd = -hilbert_from_odd;
        }
    }

    // real places: product of sign symbols over the real embeddings
    int hinf = 1;
    {
        Poly F(Q, "zf", [&] {
            ValVec cs;
            for (const auto& c : ifl.F) cs.push_back(FieldValue::rational(Q, Rat(c)));
            return cs;
        }());
        if (F.degree() > 1) {
            // alpha, beta as polynomials in the integral generator (rational coefficients)
            auto as_poly = [&](const std::vector<Int>& nums, const Int& den) {
                ValVec cs;
                for (const auto& c : nums) cs.push_back(FieldValue::rational(Q, Rat(c, den)));
                return Poly(Q, "zf", std::move(cs));
            };
            Poly ga = as_poly(anums, aden), gb = as_poly(bnums, bden);
            for (const auto& iv : places::isolate_real_roots(F)) {
                int sa = places::sign_at_root(F, iv, ga);
                int sb = places::sign_at_root(F, iv, gb);
                if (sa < 0 && sb < 0) hinf = -hinf;
            }
        } else {
            // L = Q: direct real symbol
            if (sgn(alpha.rat()) < 0 && sgn(beta.rat()) < 0) hinf = -hinf;
        }
    }

    // product formula: h_2 * h_inf * prod_odd h_p = 1
    inv.hilbert_bit = hinf * hilbert_from_odd;
    out.ok = true;
    out.inv = inv;
    return out;
}

}  // namespace motsym
