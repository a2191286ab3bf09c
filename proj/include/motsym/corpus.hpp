#pragma once

// Bundled proof certificates. Each builder replays one of the source
// results as an explicit move sequence, simulating the checker while
// recording, so the emitted scripts are accepted by construction and
// re-verified independently by run_certificate.

#include <functional>

#include "motsym/certificate.hpp"
#include "motsym/motivic.hpp"

namespace motsym {
namespace corpus {

// ---------------------------------------------------------------------------
// small matrix helpers

inline PolyMatrix scalar_mat(const FieldPtr& k, const FieldValue& v, int n = 1) {
    PolyMatrix m(k, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = MPoly::constant(k, v);
    return m;
}

inline PolyMatrix int_scalar(const FieldPtr& k, long v, int n = 1) {
    return scalar_mat(k, fv_from_int(k, Int(v)), n);
}

// [[A, B], [C, D]] from equal-size square blocks
inline PolyMatrix blocks2(const PolyMatrix& A, const PolyMatrix& B, const PolyMatrix& C,
                          const PolyMatrix& D) {
    int n = A.rows();
    PolyMatrix m(A.field(), 2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m.at(i, j) = A.at(i, j);
            m.at(i, n + j) = B.at(i, j);
            m.at(n + i, j) = C.at(i, j);
            m.at(n + i, n + j) = D.at(i, j);
        }
    return m;
}

inline PolyMatrix zero_mat(const FieldPtr& k, int n) { return PolyMatrix(k, n, n); }
inline PolyMatrix one_mat(const FieldPtr& k, int n) { return PolyMatrix::identity(k, n); }

// M-form [[0, 1], [-P, Q]]
inline PolyMatrix m_form(const PolyMatrix& P, const PolyMatrix& Q) {
    const FieldPtr& k = P.field();
    return blocks2(zero_mat(k, P.rows()), one_mat(k, P.rows()), -P, Q);
}

// [[0, 1], [-P, s*Q]] for a polynomial scalar s
inline PolyMatrix m_form_scaled(const PolyMatrix& P, const MPoly& s, const PolyMatrix& Q) {
    PolyMatrix sq = Q;
    for (int i = 0; i < Q.rows(); ++i)
        for (int j = 0; j < Q.cols(); ++j) sq.at(i, j) = s * Q.at(i, j);
    return m_form(P, sq);
}

// Theta(t) = [[0,1],[-XY, t(1+XY) + (1-t)(X+Y)]]
inline PolyMatrix theta_homotopy(const PolyMatrix& X, const PolyMatrix& Y) {
    const FieldPtr& k = X.field();
    MPoly t = MPoly::variable(k, "t");
    MPoly omt = MPoly::constant(k, fv_one(k)) - t;
    PolyMatrix XY = X * Y;
    PolyMatrix onep = one_mat(k, X.rows()) + XY;
    PolyMatrix sum = X + Y;
    PolyMatrix lower(k, X.rows(), X.rows());
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.rows(); ++j) lower.at(i, j) = onep.at(i, j) * t + sum.at(i, j) * omt;
    return blocks2(zero_mat(k, X.rows()), one_mat(k, X.rows()), -XY, lower);
}

// [[1,0],[Y,1]] in blocks; the eq(1)/(2) conjugators
inline PolyMatrix lower_unipotent(const PolyMatrix& Y) {
    const FieldPtr& k = Y.field();
    return blocks2(one_mat(k, Y.rows()), zero_mat(k, Y.rows()), Y, one_mat(k, Y.rows()));
}

// Solve S A = B S for an invertible constant S (constant matrices).
inline PolyMatrix find_conjugator(const PolyMatrix& A, const PolyMatrix& B) {
    const FieldPtr& k = A.field();
    int n = A.rows();
    FMatrix Af = A.constant_matrix(), Bf = B.constant_matrix();
    FMatrix sys(k, n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int row = i * n + j;
            for (int a = 0; a < n; ++a) {
                sys.at(row, i * n + a) = fv_add(sys.at(row, i * n + a), Af.at(a, j));
                sys.at(row, a * n + j) = fv_sub(sys.at(row, a * n + j), Bf.at(i, a));
            }
        }
    std::vector<ValVec> ker = sys.kernel();
    if (ker.empty()) throw domain_error("matrices are not conjugate: no intertwiner");
    for (long mask = 1; mask < (1L << (2 * ker.size())); ++mask) {
        FMatrix S(k, n, n);
        long m = mask;
        for (const auto& kv : ker) {
            long w = (m % 4) - 1;  // weights in {-1, 0, 1, 2}
            m /= 4;
            if (w == 0) continue;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    S.at(i, j) = fv_add(
                        S.at(i, j), fv_mul(fv_from_int(k, Int(w)), kv[static_cast<size_t>(i * n + j)]));
        }
        if (!S.det().is_zero()) return PolyMatrix::from_fmatrix(S);
    }
    throw domain_error("no invertible conjugator found");
}

// ---------------------------------------------------------------------------
// live script builder

class Builder {
  public:
    Builder(std::string name, SymbolContext ctx, Chain start) : cur_(start) {
        s_.name = std::move(name);
        s_.context = std::move(ctx);
        s_.start = std::move(start);
    }

    const Chain& current() const { return cur_; }
    const SymbolContext& context() const { return s_.context; }

    CertificateScript finish() {
        s_.goal = cur_;
        return s_;
    }
    CertificateScript finish_with_goal(Chain goal) {
        if (cur_ != goal)
            throw domain_error("builder for " + s_.name + " ended at " + cur_.str() + ", expected " +
                               goal.str());
        s_.goal = std::move(goal);
        return s_;
    }

    int index_of(const SymbolTuple& t) const {
        int i = 0;
        for (const auto& [tt, c] : cur_.terms()) {
            if (tt == t) return i;
            ++i;
        }
        throw domain_error("builder for " + s_.name + ": term not present: " + t.str());
    }

    SymbolTuple tuple(const std::vector<PolyMatrix>& mats) const {
        return SymbolTuple::make(s_.context.field, s_.context.d, s_.context.l, mats);
    }

    void apply(Move mv) {
        std::vector<std::pair<SymbolTuple, long>> rem, add;
        apply_move(cur_, mv, rem, add);
        s_.moves.push_back(std::move(mv));
    }

    void wedgedrop(const SymbolTuple& t) {
        Move m;
        m.kind = Move::Kind::WedgeDrop;
        m.term = index_of(t);
        apply(std::move(m));
    }

    void wedgeadd(const SymbolTuple& t, long coef) {
        Move m;
        m.kind = Move::Kind::WedgeAdd;
        m.mats = t.mats();
        m.coef = coef;
        apply(std::move(m));
    }

    SymbolTuple conjugate(const SymbolTuple& t, const PolyMatrix& g) {
        Move m;
        m.kind = Move::Kind::Conjugate;
        m.term = index_of(t);
        m.mats = {g};
        apply(std::move(m));
        PolyMatrix ginv = g.inverse();
        std::vector<PolyMatrix> ms;
        for (const auto& mm : t.mats()) ms.push_back(g * mm * ginv);
        return tuple(ms);
    }

    std::vector<SymbolTuple> blocksplit(const SymbolTuple& t, const std::vector<int>& sizes) {
        Move m;
        m.kind = Move::Kind::BlockSplit;
        m.term = index_of(t);
        m.sizes = sizes;
        apply(std::move(m));
        std::vector<SymbolTuple> out;
        int off = 0;
        for (int sz : sizes) {
            std::vector<PolyMatrix> ms;
            for (const auto& mm : t.mats()) ms.push_back(mm.submatrix(off, off, sz, sz));
            out.push_back(tuple(ms));
            off += sz;
        }
        return out;
    }

    SymbolTuple blockjoin(const std::vector<SymbolTuple>& ts, const std::vector<PolyMatrix>& comp) {
        Move m;
        m.kind = Move::Kind::BlockJoin;
        for (const auto& t : ts) m.terms.push_back(index_of(t));
        m.mats = comp;
        apply(std::move(m));
        return tuple(comp);
    }

    SymbolTuple merge_self(const SymbolTuple& a) {
        Move m;
        m.kind = Move::Kind::Merge;
        int i = index_of(a);
        m.terms = {i, i};
        apply(std::move(m));
        return direct_sum(a, a);
    }

    void addboundary(const Chain& witness, const std::string& side) {
        Move m;
        m.kind = Move::Kind::AddBoundary;
        m.witness = witness;
        m.side = side;
        apply(std::move(m));
    }

    SymbolTuple subfaces(const SymbolTuple& t) {
        Move m;
        m.kind = Move::Kind::SubstituteFaces;
        m.term = index_of(t);
        apply(std::move(m));
        const FieldPtr& k = s_.context.field;
        MPoly omt = MPoly::constant(k, fv_one(k)) - MPoly::variable(k, "t");
        return t.substitute("t", omt, 1);
    }

  private:
    CertificateScript s_;
    Chain cur_;
};

// ---------------------------------------------------------------------------
// d=0 combinators (the boundary-of-Z tool box)

// Coordinate layout at d=0: two active slots inside an l-tuple whose
// remaining coordinates are fixed scalar pads.
struct Slots {
    FieldPtr field;
    int l = 2;
    int si = 0, sj = 1;
    std::vector<FieldValue> pads;  // values for the non-active slots, in order

    std::vector<PolyMatrix> make(const PolyMatrix& X, const PolyMatrix& Y) const {
        std::vector<PolyMatrix> out;
        size_t p = 0;
        int n = X.rows();
        for (int r = 0; r < l; ++r) {
            if (r == si) out.push_back(X);
            else if (r == sj) out.push_back(Y);
            else out.push_back(scalar_mat(field, pads[p++], n));
        }
        return out;
    }
};

// Multilinearity at one active slot (part (i) of the boundary lemma):
// expand = true replaces coef*(.., X*Y, ..) by coef*(.., X, ..) + coef*(.., Y, ..)
// keeping `other` at the second active slot; expand = false contracts.
inline void mult0(Builder& b, const Slots& sl, int slot, const PolyMatrix& X, const PolyMatrix& Y,
                  const PolyMatrix& other, long coef, bool expand) {
    const FieldPtr& k = sl.field;
    int n = X.rows();
    int oslot = slot == sl.si ? sl.sj : sl.si;
    PolyMatrix XY = X * Y;
    PolyMatrix theta = theta_homotopy(X, Y);

    auto big = [&](const PolyMatrix& at_slot) {  // 2n-sized coordinates
        std::vector<PolyMatrix> out;
        size_t p = 0;
        for (int r = 0; r < sl.l; ++r) {
            if (r == slot) out.push_back(at_slot);
            else if (r == oslot) out.push_back(other.direct_sum(other));
            else out.push_back(scalar_mat(k, sl.pads[p++], 2 * n));
        }
        return out;
    };
    auto small = [&](const PolyMatrix& at_slot) {
        std::vector<PolyMatrix> out;
        size_t p = 0;
        for (int r = 0; r < sl.l; ++r) {
            if (r == slot) out.push_back(at_slot);
            else if (r == oslot) out.push_back(other);
            else out.push_back(scalar_mat(k, sl.pads[p++], n));
        }
        return out;
    };

    Chain w(SymbolContext{k, 1, sl.l});
    w.add(SymbolTuple::make(k, 1, sl.l, big(theta)), expand ? -coef : coef);
    b.addboundary(w, "Z1");

    // t=1 face: [[0,1],[-XY, 1+XY]] ~via eq(2)~ [[1,1],[0,XY]]
    SymbolTuple f1 = b.tuple(big(m_form(XY, one_mat(k, n) + XY)));
    SymbolTuple tri1 = b.conjugate(f1, lower_unipotent(-one_mat(k, n)));
    b.blocksplit(tri1, {n, n});
    b.wedgedrop(b.tuple(small(one_mat(k, n))));

    // t=0 face: [[0,1],[-XY, X+Y]] ~via eq(1)~ [[Y,1],[0,X]]
    SymbolTuple f0 = b.tuple(big(m_form(XY, X + Y)));
    SymbolTuple tri0 = b.conjugate(f0, lower_unipotent(-Y));
    b.blocksplit(tri0, {n, n});
}

// Skew-symmetry tool (part (ii)): removes coef*[(.., X, Y, ..) + (.., Y, X, ..)]
// at the two active slots.
inline void skew0_annihilate(Builder& b, const Slots& sl, const PolyMatrix& X, const PolyMatrix& Y,
                             long coef) {
    const FieldPtr& k = sl.field;
    int n = X.rows();
    PolyMatrix XY = X * Y;
    PolyMatrix theta = theta_homotopy(X, Y);

    auto big_pair = [&](const PolyMatrix& both) {
        std::vector<PolyMatrix> out;
        size_t p = 0;
        for (int r = 0; r < sl.l; ++r) {
            if (r == sl.si || r == sl.sj) out.push_back(both);
            else out.push_back(scalar_mat(k, sl.pads[p++], 2 * n));
        }
        return out;
    };
    auto small_pair = [&](const PolyMatrix& a, const PolyMatrix& bm) {
        return sl.make(a, bm);
    };

    // w0: theta at both active slots (Z2)
    Chain w0(SymbolContext{k, 1, sl.l});
    w0.add(SymbolTuple::make(k, 1, sl.l, big_pair(theta)), -coef);
    b.addboundary(w0, "Z2");
    SymbolTuple f1 = b.tuple(big_pair(m_form(XY, one_mat(k, n) + XY)));
    SymbolTuple tri1 = b.conjugate(f1, lower_unipotent(-one_mat(k, n)));
    b.blocksplit(tri1, {n, n});
    b.wedgedrop(b.tuple(small_pair(one_mat(k, n), one_mat(k, n))));
    SymbolTuple f0 = b.tuple(big_pair(m_form(XY, X + Y)));
    SymbolTuple tri0 = b.conjugate(f0, lower_unipotent(-Y));
    b.blocksplit(tri0, {n, n});

    // contractions: +del(w1) + del(w2) + del(w3) cancel everything except
    // -coef[(X, Y) + (Y, X)]
    mult0(b, sl, sl.si, X, Y, XY, coef, false);
    mult0(b, sl, sl.sj, X, Y, X, coef, false);
    mult0(b, sl, sl.sj, X, Y, Y, coef, false);
}

// Part (iv): adds coef*[(.., b, 1-b, ..) - (.., a, 1-a, ..)] at the active
// slots, via the degree-3 homotopy witness and the displayed chain of
// conjugations. Requires a, b outside {0, 1} and coef = +-1.
inline void lemma_iv(Builder& b, const Slots& sl, const FieldValue& a, const FieldValue& bv,
                     long coef) {
    if (coef != 1 && coef != -1) throw domain_error("lemma_iv: coefficient must be +-1");
    const FieldPtr& k = sl.field;
    FieldValue one = fv_one(k);
    if (a.is_zero() || a.is_one() || bv.is_zero() || bv.is_one())
        throw domain_error("lemma_iv: a, b must avoid 0 and 1");

    auto lin = [&](const FieldValue& r) { return Poly(k, "w", {fv_neg(r), one}); };
    auto quad = [&](const FieldValue& r) { return Poly(k, "w", {fv_neg(r), fv_zero(k), one}); };
    SymbolTuple hom = build_companion_homotopy(lin(a) * quad(bv), quad(a) * lin(bv));
    PolyMatrix theta = hom.mat(0);
    PolyMatrix one3 = one_mat(k, 3);

    Chain w(SymbolContext{k, 1, sl.l});
    w.add(SymbolTuple::make(k, 1, sl.l, sl.make(theta, one3 - theta)), 2 * coef);
    b.addboundary(w, "Z3");

    PolyMatrix th1 = theta.substitute("t", MPoly::constant(k, one));
    PolyMatrix th0 = theta.substitute("t", MPoly(k));

    auto comp2 = [&](const FieldValue& r) {  // companion of w^2 - r
        PolyMatrix m(k, 2, 2);
        m.at(0, 1) = MPoly::constant(k, one);
        m.at(1, 0) = MPoly::constant(k, r);
        return m;
    };
    PolyMatrix Ca = comp2(a), Cb = comp2(bv);
    PolyMatrix Da = one_mat(k, 2) - Ca, Db = one_mat(k, 2) - Cb;

    // rational canonical forms of the two faces, with solved conjugators
    PolyMatrix S1 = find_conjugator(th1, scalar_mat(k, bv).direct_sum(Ca));
    PolyMatrix S0 = find_conjugator(th0, scalar_mat(k, a).direct_sum(Cb));

    // merge each doubled 3x3 face first (its coefficient is exactly
    // +-2 coef and the face tuple cannot collide with ambient terms), then
    // reorder diag(x, C, x, C) to diag(x, x, C, C) by a permutation and
    // split; this keeps every scalar term at coefficient +-1 throughout.
    PolyMatrix perm(k, 6, 6);
    for (auto [i, j] : {std::pair<int, int>{0, 0}, {1, 3}, {2, 1}, {3, 2}, {4, 4}, {5, 5}})
        perm.at(i, j) = MPoly::constant(k, one);
    auto face_leg = [&](const PolyMatrix& th, const PolyMatrix& S) {
        SymbolTuple face = b.tuple(sl.make(th, one3 - th));
        SymbolTuple doubled = b.merge_self(face);
        PolyMatrix G = perm * blocks2(S, zero_mat(k, 3), zero_mat(k, 3), S);
        SymbolTuple re = b.conjugate(doubled, G);
        auto parts = b.blocksplit(re, {2, 4});
        b.blocksplit(parts[1], {2, 2});
    };
    face_leg(th1, S1);  // +coef (b-pair 2x2) + 2coef (C_a, D_a)
    face_leg(th0, S0);  // -coef (a-pair 2x2) - 2coef (C_b, D_b)

    // 2(C, D) -> (C^2 = scalar block, D)
    mult0(b, sl, sl.si, Ca, Ca, Da, coef, false);
    mult0(b, sl, sl.si, Cb, Cb, Db, -coef, false);

    // slot sj: expand ((1-x)diag) = (E_x) + (D_x) with E_x = (1-x)diag * D_x^{-1};
    // this consumes the merged diagonal and the leftover -D_x face
    auto combine = [&](const FieldValue& x, const PolyMatrix& Dx, long c) {
        PolyMatrix Ex = scalar_mat(k, fv_sub(one, x), 2) * Dx.inverse();
        mult0(b, sl, sl.sj, Ex, Dx, scalar_mat(k, x, 2), c, true);
        return Ex;
    };
    PolyMatrix Eb = combine(bv, Db, coef);
    PolyMatrix Ea = combine(a, Da, -coef);

    // E_x ~ [[0,1],[x-1,2]], traded by a Z1 witness for [[0,1],[x-1,2-x]],
    // then split down to the scalar symbol (x, 1-x)
    auto final_leg = [&](const FieldValue& x, const PolyMatrix& Ex, long c) {
        PolyMatrix x2 = scalar_mat(k, x, 2);
        FieldValue omx = fv_sub(one, x);
        PolyMatrix P(k, 2, 2);
        P.at(0, 0) = MPoly::constant(k, fv_div(fv_neg(x), omx));
        P.at(0, 1) = MPoly::constant(k, fv_inv(omx));
        P.at(1, 1) = MPoly::constant(k, one);
        b.conjugate(b.tuple(sl.make(x2, Ex)), P);

        MPoly t = MPoly::variable(k, "t");
        MPoly omt = MPoly::constant(k, one) - t;
        PolyMatrix wz(k, 2, 2);
        wz.at(0, 1) = MPoly::constant(k, one);
        wz.at(1, 0) = MPoly::constant(k, fv_sub(x, one));
        wz.at(1, 1) = t * MPoly::constant(k, fv_sub(fv_from_int(k, Int(2)), x)) +
                      omt * MPoly::from_int(k, 2);
        Chain wzc(SymbolContext{k, 1, sl.l});
        wzc.add(SymbolTuple::make(k, 1, sl.l, sl.make(x2, wz)), c);
        b.addboundary(wzc, "Z1");

        PolyMatrix face(k, 2, 2);
        face.at(0, 1) = MPoly::constant(k, one);
        face.at(1, 0) = MPoly::constant(k, fv_sub(x, one));
        face.at(1, 1) = MPoly::constant(k, fv_sub(fv_from_int(k, Int(2)), x));
        SymbolTuple tri = b.conjugate(b.tuple(sl.make(x2, face)), lower_unipotent(-one_mat(k, 1)));
        b.blocksplit(tri, {1, 1});
        b.wedgedrop(b.tuple(sl.make(scalar_mat(k, x), one_mat(k, 1))));
    };
    final_leg(bv, Eb, coef);
    final_leg(a, Ea, -coef);
}

// ---------------------------------------------------------------------------
// d=1 combinators (the H^{l-1} machinery)

// Coordinate layout at d=1: an M-form slot plus either doubled fixed
// coordinates D_r(t) or a duplicate of the M-form at the second slot.
struct D1Shape {
    FieldPtr field;
    int l = 2;
    int slot = 0;                   // the M-form slot
    bool dup = false;               // duplicate the M-form at every other slot (eq 9 mode)
    std::vector<PolyMatrix> others; // D_r(t) when !dup, size l-1, each n x n

    std::vector<PolyMatrix> term(const PolyMatrix& main) const {
        std::vector<PolyMatrix> out;
        size_t p = 0;
        for (int r = 0; r < l; ++r) {
            if (r == slot) out.push_back(main);
            else if (dup) out.push_back(main);
            else out.push_back(others[p].direct_sum(others[p])), ++p;
        }
        return out;
    }

    // d=2 witness coordinates; ysub is the parameter the fixed
    // coordinates are evaluated at (y or 1-y)
    std::vector<PolyMatrix> witness(const PolyMatrix& mainxy, const MPoly& ysub) const {
        std::vector<PolyMatrix> out;
        size_t p = 0;
        for (int r = 0; r < l; ++r) {
            if (r == slot) out.push_back(mainxy);
            else if (dup) out.push_back(mainxy);
            else {
                PolyMatrix d = others[p].substitute("t", ysub);
                out.push_back(d.direct_sum(d));
                ++p;
            }
        }
        return out;
    }

    // d=1 term with the fixed coordinates evaluated at tsub
    std::vector<PolyMatrix> term_at(const PolyMatrix& main, const MPoly& tsub) const {
        std::vector<PolyMatrix> out;
        size_t p = 0;
        for (int r = 0; r < l; ++r) {
            if (r == slot) out.push_back(main);
            else if (dup) out.push_back(main);
            else {
                PolyMatrix d = others[p].substitute("t", tsub);
                out.push_back(d.direct_sum(d));
                ++p;
            }
        }
        return out;
    }
};

// The combined relation of equations (3)-(5): transforms
//   coef * (M[-p, q], D-pair)  into
//   coef * [(M[-p,0], D) + (M[-p(1), t q(1)], D(1)) - (M[-p(0), t q(0)], D(0))]
// when forward, and back when !forward. p, q are n x n over k[t].
inline void master_eq(Builder& b, const D1Shape& sh, const PolyMatrix& p, const PolyMatrix& q,
                      long coef, bool forward) {
    const FieldPtr& k = sh.field;
    MPoly y = MPoly::variable(k, "y");
    MPoly x = MPoly::variable(k, "x");
    MPoly t = MPoly::variable(k, "t");
    MPoly one = MPoly::constant(k, fv_one(k));
    MPoly omy = one - y;
    MPoly omt = one - t;

    PolyMatrix p_y = p.substitute("t", y), q_y = q.substitute("t", y);
    PolyMatrix p_1my = p.substitute("t", omy), q_1my = q.substitute("t", omy);
    PolyMatrix p0 = p.substitute("t", MPoly(k)), q0 = q.substitute("t", MPoly(k));
    PolyMatrix p1 = p.substitute("t", one), q1 = q.substitute("t", one);
    PolyMatrix p_1mt = p.substitute("t", omt), q_1mt = q.substitute("t", omt);

    auto scaled = [&](const PolyMatrix& m, const MPoly& s) {
        PolyMatrix r = m;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r.at(i, j) = s * m.at(i, j);
        return r;
    };

    // witnesses
    SymbolTuple W1 = SymbolTuple::make(k, 2, sh.l, sh.witness(m_form(p_y, scaled(q_y, x * y)), y));
    SymbolTuple W2 = SymbolTuple::make(k, 2, sh.l, sh.witness(m_form(p_y, scaled(q_y, x + y)), y));
    SymbolTuple W3 = SymbolTuple::make(
        k, 2, sh.l, sh.witness(m_form(p_1my, scaled(q_1my, (x + y) * omy)), omy));
    // constant-kill witness: every coordinate constant
    SymbolTuple Wc =
        SymbolTuple::make(k, 2, sh.l, sh.witness(m_form(p0, zero_mat(k, p.rows())), MPoly(k)));

    // d=1 terms the moves touch
    auto term = [&](const PolyMatrix& m) { return b.tuple(sh.term(m)); };
    SymbolTuple T_tq = term(m_form(p, scaled(q, t)));
    SymbolTuple T_tt = term(m_form(p, scaled(q, t * omt)));

    auto ab = [&](const SymbolTuple& w, long c) {
        Chain ch(SymbolContext{k, 2, sh.l});
        ch.add(w, c);
        b.addboundary(ch, "D2");
    };

    // the face of W2/W3 carrying the t(1-t)-scaled entry, in the 1-t frame
    SymbolTuple mixed = b.tuple(sh.term_at(m_form(p_1mt, scaled(q_1mt, t * omt)), omt));

    if (forward) {
        ab(W2, -coef);        // consumes T_q; adds coef*T_tq - coef*F0
        b.subfaces(T_tq);     // -> -coef * (M[-p(1-t), t(1-t) q(1-t)], D(1-t))
        ab(W3, coef);         // cancels it; adds -coef*mixed + coef*F1
        b.subfaces(mixed);    // -> +coef * (M[-p, (1-t)t q], D)
        ab(W1, -coef);        // cancels it; adds coef*T_0 - coef*(constant face)
        ab(Wc, coef);         // kills the constant face
    } else {
        ab(Wc, -coef);
        ab(W1, coef);         // consumes T_0 and the constant; adds coef*T_tt
        b.subfaces(T_tt);     // -> -coef * mixed
        ab(W3, -coef);        // cancels mixed; adds -coef*(f1' face) - coef*F1
        SymbolTuple f1p = b.tuple(sh.term_at(m_form(p_1mt, scaled(q_1mt, omt)), omt));
        b.subfaces(f1p);      // -> +coef * T_tq
        ab(W2, coef);         // consumes T_tq; adds coef*T_q + coef*F0
    }
}

// Equation (8) step: coef * (M_{q_from}, D) -> coef * (M_{q_to}, D), using
// the S-conjugation of the face tuples (the Claim).
inline void eq8_step(Builder& b, const D1Shape& sh, const PolyMatrix& p, const PolyMatrix& q_from,
                     const PolyMatrix& q_to, const PolyMatrix& S, long coef) {
    const FieldPtr& k = sh.field;
    MPoly one = MPoly::constant(k, fv_one(k));
    MPoly t = MPoly::variable(k, "t");
    auto scaled = [&](const PolyMatrix& m, const MPoly& s) {
        PolyMatrix r = m;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r.at(i, j) = s * m.at(i, j);
        return r;
    };
    PolyMatrix Sblock = blocks2(S, zero_mat(k, S.rows()), zero_mat(k, S.rows()), S);
    PolyMatrix Sinv = Sblock.inverse();

    master_eq(b, sh, p, q_from, coef, true);
    {
        // face at 1 of the q_from master -> conjugate down to the 0-face
        PolyMatrix p1 = p.substitute("t", one), q1 = q_from.substitute("t", one);
        SymbolTuple f1 = b.tuple(sh.term_at(m_form(p1, scaled(q1, t)), one));
        b.conjugate(f1, Sinv);
    }
    master_eq(b, sh, p, q_to, coef, false);
    {
        PolyMatrix p1 = p.substitute("t", one), q1 = q_to.substitute("t", one);
        SymbolTuple f1 = b.tuple(sh.term_at(m_form(p1, scaled(q1, t)), one));
        b.conjugate(f1, Sinv);
    }
}

// Theorem-style multilinearity at d=1: forward turns
// coef*[(X, D) + (Y, D)] into coef*(XY, D); backward reverses.
// Requires the Claim conjugator S for the family.
inline void mult_d1(Builder& b, const D1Shape& sh, const PolyMatrix& X, const PolyMatrix& Y,
                    const PolyMatrix& S, long coef, bool forward) {
    if (sh.dup) throw domain_error("mult_d1 expects fixed coordinates, not the doubled shape");
    const FieldPtr& k = sh.field;
    int n = X.rows();
    PolyMatrix XY = X * Y;
    PolyMatrix qs = X + Y;
    PolyMatrix qq = one_mat(k, n) + XY;

    auto term1 = [&](const PolyMatrix& m) {  // n-sized coordinates (others undoubled)
        std::vector<PolyMatrix> out;
        size_t p = 0;
        for (int r = 0; r < sh.l; ++r) {
            if (r == sh.slot) out.push_back(m);
            else out.push_back(sh.others[p]), ++p;
        }
        return b.tuple(out);
    };

    if (forward) {
        SymbolTuple joined =
            b.blockjoin({term1(Y), term1(X)}, sh.term(blocks2(Y, one_mat(k, n), zero_mat(k, n), X)));
        b.conjugate(joined, lower_unipotent(Y));
        eq8_step(b, sh, XY, qs, qq, S, coef);
        SymbolTuple tri = b.conjugate(b.tuple(sh.term(m_form(XY, qq))),
                                      lower_unipotent(-one_mat(k, n)));
        b.blocksplit(tri, {n, n});
        b.wedgedrop(term1(one_mat(k, n)));
    } else {
        b.wedgeadd(term1(one_mat(k, n)), coef);
        SymbolTuple joined = b.blockjoin(
            {term1(one_mat(k, n)), term1(XY)},
            sh.term(blocks2(one_mat(k, n), one_mat(k, n), zero_mat(k, n), XY)));
        b.conjugate(joined, lower_unipotent(one_mat(k, n)));
        eq8_step(b, sh, XY, qq, qs, S, coef);
        SymbolTuple tri = b.conjugate(b.tuple(sh.term(m_form(XY, qs))), lower_unipotent(-Y));
        b.blocksplit(tri, {n, n});
    }
}

// ---------------------------------------------------------------------------
// named bundled scripts

struct Instance {
    FieldPtr k;
    std::string tag;  // "q" or "f7"
    // commuting d=1 family phi, psi, theta2 = g(t) diag g(t)^{-1} with the
    // shared conjugator, plus the Claim matrix S
    PolyMatrix phi, psi, theta2, S;
};

inline Instance make_instance(const FieldPtr& k, const std::string& tag,
                              const std::vector<long>& dphi, const std::vector<long>& dpsi,
                              const std::vector<long>& dth) {
    // g(t) = [[1, t], [0, 1]]
    PolyMatrix g = one_mat(k, 2);
    g.at(0, 1) = MPoly::variable(k, "t");
    PolyMatrix gi = g.inverse();
    auto diag = [&](const std::vector<long>& d) {
        PolyMatrix m(k, 2, 2);
        m.at(0, 0) = MPoly::from_int(k, d[0]);
        m.at(1, 1) = MPoly::from_int(k, d[1]);
        return m;
    };
    Instance ins;
    ins.k = k;
    ins.tag = tag;
    ins.phi = g * diag(dphi) * gi;
    ins.psi = g * diag(dpsi) * gi;
    ins.theta2 = g * diag(dth) * gi;
    // S = g(1) g(0)^{-1} = [[1,1],[0,1]]
    ins.S = one_mat(k, 2);
    ins.S.at(0, 1) = MPoly::constant(k, fv_one(k));
    return ins;
}

// identity (1)/(2) as one-conjugation certificates
inline CertificateScript script_identity(const FieldPtr& k, const std::string& tag, bool second) {
    long phi = 2, psi = 3;
    PolyMatrix Phi = int_scalar(k, phi), Psi = int_scalar(k, psi);
    PolyMatrix M = second ? m_form(Phi * Psi, one_mat(k, 1) + Phi * Psi)
                          : m_form(Phi * Psi, Phi + Psi);
    PolyMatrix tri = second ? blocks2(one_mat(k, 1), one_mat(k, 1), zero_mat(k, 1), Phi * Psi)
                            : blocks2(Psi, one_mat(k, 1), zero_mat(k, 1), Phi);
    PolyMatrix g = second ? lower_unipotent(-one_mat(k, 1)) : lower_unipotent(-Psi);
    SymbolContext ctx{k, 0, 1};
    Chain start(ctx);
    start.add(SymbolTuple::make(k, 0, 1, {M}), 1);
    Builder b(std::string(second ? "eq2." : "eq1.") + tag, ctx, start);
    b.conjugate(b.tuple({M}), g);
    Chain goal(ctx);
    goal.add(SymbolTuple::make(k, 0, 1, {tri}), 1);
    return b.finish_with_goal(goal);
}

// Lemma (i): (phi psi, th) - (phi, th) - (psi, th) from the Z1 witness
inline CertificateScript script_lemma_i(const FieldPtr& k, const std::string& tag) {
    SymbolContext ctx{k, 0, 2};
    Slots sl{k, 2, 0, 1, {}};
    Builder b("lemma2.4.i." + tag, ctx, Chain(ctx));
    PolyMatrix Phi = int_scalar(k, 2), Psi = int_scalar(k, 3), Th = int_scalar(k, 5);
    // expanding with coefficient -1 from the empty chain deposits exactly
    // (phi psi, th) - (phi, th) - (psi, th)
    mult0(b, sl, 0, Phi, Psi, Th, -1, true);
    Chain goal(ctx);
    goal.add(b.tuple(sl.make(Phi * Psi, Th)), 1);
    goal.add(b.tuple(sl.make(Phi, Th)), -1);
    goal.add(b.tuple(sl.make(Psi, Th)), -1);
    return b.finish_with_goal(goal);
}

// Lemma (ii): (x, y) + (y, x) rewrites to the empty chain
inline CertificateScript script_lemma_ii(const FieldPtr& k, const std::string& tag) {
    SymbolContext ctx{k, 0, 2};
    Slots sl{k, 2, 0, 1, {}};
    PolyMatrix X = int_scalar(k, 2), Y = int_scalar(k, 3);
    Chain start(ctx);
    start.add(SymbolTuple::make(k, 0, 2, sl.make(X, Y)), 1);
    start.add(SymbolTuple::make(k, 0, 2, sl.make(Y, X)), 1);
    Builder b("lemma2.4.ii." + tag, ctx, start);
    skew0_annihilate(b, sl, X, Y, 1);
    return b.finish_with_goal(Chain(ctx));
}

// Lemma (iii): (-x, x) rewrites to the empty chain
inline CertificateScript script_lemma_iii(const FieldPtr& k, const std::string& tag) {
    SymbolContext ctx{k, 0, 2};
    Slots sl{k, 2, 0, 1, {}};
    FieldValue x = fv_from_int(k, Int(3));
    PolyMatrix X = scalar_mat(k, x);
    Chain start(ctx);
    start.add(SymbolTuple::make(k, 0, 2, sl.make(-X, X)), 1);
    Builder b("lemma2.4.iii." + tag, ctx, start);

    // witness A = (-x + -x, [[0,1],[-x, t(x+1)]]): Z1 via the constant slot
    MPoly t = MPoly::variable(k, "t");
    PolyMatrix M(k, 2, 2);
    M.at(0, 1) = MPoly::constant(k, fv_one(k));
    M.at(1, 0) = MPoly::constant(k, fv_neg(x));
    PolyMatrix wit = M;
    wit.at(1, 1) = t * MPoly::constant(k, fv_add(x, fv_one(k)));
    PolyMatrix mx2 = (-X).direct_sum(-X);
    Chain w(SymbolContext{k, 1, 2});
    w.add(SymbolTuple::make(k, 1, 2, {mx2, wit}), -1);
    b.addboundary(w, "Z1");

    // t=1 face: [[0,1],[-x, x+1]] ~ [[1,1],[0,x]]; split and drop the 1
    PolyMatrix f1 = wit.substitute("t", MPoly::constant(k, fv_one(k)));
    SymbolTuple tri = b.conjugate(b.tuple({mx2, f1}), lower_unipotent(-one_mat(k, 1)));
    b.blocksplit(tri, {1, 1});
    b.wedgedrop(b.tuple({-X, one_mat(k, 1)}));
    // the (-x, x)-term cancelled the start; remaining +(M^2 = -x + -x, M)
    // since M^2 is literally the diagonal -x + -x
    // expand (M^2, M) = 2(M, M), then kill 2(M, M) with the skew tool
    mult0(b, sl, 0, M, M, M, 1, true);
    skew0_annihilate(b, sl, M, M, 1);
    return b.finish_with_goal(Chain(ctx));
}

// Lemma (iv) bundled at l=3 with a constant padding slot
inline CertificateScript script_lemma_iv(const FieldPtr& k, const std::string& tag, long pad = 7) {
    SymbolContext ctx{k, 0, 3};
    Slots sl{k, 3, 1, 2, {fv_from_int(k, Int(pad))}};
    FieldValue a = fv_from_int(k, Int(2)), bv = fv_from_int(k, Int(-1));
    Builder b("lemma2.4.iv." + tag, ctx, Chain(ctx));
    lemma_iv(b, sl, a, bv, 1);
    Chain goal(ctx);
    FieldValue one = fv_one(k);
    goal.add(b.tuple(sl.make(scalar_mat(k, bv), scalar_mat(k, fv_sub(one, bv)))), 1);
    goal.add(b.tuple(sl.make(scalar_mat(k, a), scalar_mat(k, fv_sub(one, a)))), -1);
    return b.finish_with_goal(goal);
}

// The explicit del-z computation: (alpha, 1-alpha) is a boundary for
// alpha = 3, via e = 2.
inline CertificateScript script_prop27(const FieldPtr& k, const std::string& tag) {
    SymbolContext ctx{k, 0, 2};
    Slots sl{k, 2, 0, 1, {}};
    auto I = [&](long v) { return int_scalar(k, v); };
    Chain start(ctx);
    start.add(SymbolTuple::make(k, 0, 2, sl.make(I(3), I(-2))), 1);
    Builder b("prop2.7-dz." + tag, ctx, start);

    // (3,-2) - [(3,-2) - (4,-3)] = (4,-3)
    lemma_iv(b, sl, fv_from_int(k, Int(4)), fv_from_int(k, Int(3)), -1);
    // (4,-3) = (2,-3) + (2,-3)
    mult0(b, sl, 0, I(2), I(2), I(-3), 1, true);
    // each (2,-3) = (2,-1) + (2,3)
    mult0(b, sl, 1, I(-1), I(3), I(2), 2, true);
    // kill 2(2,-1): lemma (iv) with a=2, b=-1 gives (-1,2)-(2,-1)
    lemma_iv(b, sl, fv_from_int(k, Int(2)), fv_from_int(k, Int(-1)), 1);
    skew0_annihilate(b, sl, I(2), I(-1), 1);
    // 2(2,3) = 2(-1,3) + 2(-2,3)
    mult0(b, sl, 0, I(-1), I(-2), I(3), 2, true);
    // 2(-1,3) -> (1,3), which the tool wedges away internally
    mult0(b, sl, 0, I(-1), I(-1), I(3), 1, false);
    // kill 2(-2,3): (iv) with a=-2, b=3 gives (3,-2)-(-2,3)
    lemma_iv(b, sl, fv_from_int(k, Int(-2)), fv_from_int(k, Int(3)), 1);
    skew0_annihilate(b, sl, I(3), I(-2), 1);
    return b.finish_with_goal(Chain(ctx));
}

// Lemma of the two simple d=1 relations: negation via a d=2 witness
inline CertificateScript script_negation(const FieldPtr& k, const std::string& tag) {
    SymbolContext ctx{k, 1, 1};
    // theta(t) = companion of w^2 - t w - 2 (unit determinant)
    PolyMatrix theta(k, 2, 2);
    theta.at(0, 1) = MPoly::constant(k, fv_one(k));
    theta.at(1, 0) = MPoly::from_int(k, 2);
    theta.at(1, 1) = MPoly::variable(k, "t");
    MPoly omt = MPoly::constant(k, fv_one(k)) - MPoly::variable(k, "t");
    PolyMatrix theta1mt = theta.substitute("t", omt);
    PolyMatrix theta0 = theta.substitute("t", MPoly(k));

    Chain start(ctx);
    start.add(SymbolTuple::make(k, 1, 1, {theta}), 1);
    start.add(SymbolTuple::make(k, 1, 1, {theta1mt}), 1);
    Builder b("lemma3.1-negation." + tag, ctx, start);

    PolyMatrix thetax = theta.substitute("t", MPoly::variable(k, "x"));
    Chain w(SymbolContext{k, 2, 1});
    w.add(SymbolTuple::make(k, 2, 1, {thetax}), -1);
    b.addboundary(w, "D2");
    Chain wc(SymbolContext{k, 2, 1});
    wc.add(SymbolTuple::make(k, 2, 1, {theta0}), -1);
    b.addboundary(wc, "D2");
    return b.finish_with_goal(Chain(ctx));
}

inline CertificateScript script_sum(const FieldPtr& k, const std::string& tag) {
    SymbolContext ctx{k, 1, 1};
    PolyMatrix theta(k, 2, 2);
    theta.at(0, 1) = MPoly::constant(k, fv_one(k));
    theta.at(1, 0) = MPoly::from_int(k, 2);
    theta.at(1, 1) = MPoly::variable(k, "t");
    PolyMatrix psi = int_scalar(k, 3, 2);
    psi.at(0, 1) = MPoly::variable(k, "t");

    Chain start(ctx);
    SymbolTuple t1 = SymbolTuple::make(k, 1, 1, {theta});
    SymbolTuple t2 = SymbolTuple::make(k, 1, 1, {psi});
    start.add(t1, 1);
    start.add(t2, 1);
    Builder b("lemma3.1-sum." + tag, ctx, start);
    Move m;
    m.kind = Move::Kind::Merge;
    m.terms = {b.index_of(t1), b.index_of(t2)};
    b.apply(std::move(m));
    Chain goal(ctx);
    goal.add(direct_sum(t1, t2), 1);
    return b.finish_with_goal(goal);
}

// equations (3), (4), (5) as standalone certificates over the companion
// instance p(t) = [[0,1],[2,t]], q(t) = (t+1), theta2 = 3
inline CertificateScript script_eq345(const FieldPtr& k, const std::string& tag, int which) {
    SymbolContext ctx{k, 1, 2};
    PolyMatrix p(k, 2, 2);
    p.at(0, 1) = MPoly::constant(k, fv_one(k));
    p.at(1, 0) = MPoly::from_int(k, 2);
    p.at(1, 1) = MPoly::variable(k, "t");
    MPoly t = MPoly::variable(k, "t");
    MPoly one = MPoly::constant(k, fv_one(k));
    MPoly omt = one - t;
    PolyMatrix q(k, 2, 2);
    q.at(0, 0) = t + one;
    q.at(1, 1) = t + one;
    D1Shape sh{k, 2, 0, false, {int_scalar(k, 3, 2)}};
    auto scaled = [&](const PolyMatrix& m, const MPoly& s) {
        PolyMatrix r = m;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r.at(i, j) = s * m.at(i, j);
        return r;
    };
    MPoly x = MPoly::variable(k, "x");
    MPoly y = MPoly::variable(k, "y");
    MPoly omy = one - y;
    PolyMatrix p_y = p.substitute("t", y), q_y = q.substitute("t", y);
    PolyMatrix p_1my = p.substitute("t", omy), q_1my = q.substitute("t", omy);
    PolyMatrix p_1mt = p.substitute("t", omt), q_1mt = q.substitute("t", omt);
    PolyMatrix p0 = p.substitute("t", MPoly(k)), q0 = q.substitute("t", MPoly(k));
    PolyMatrix p1 = p.substitute("t", one), q1 = q.substitute("t", one);

    if (which == 3) {
        Chain start(ctx);
        SymbolTuple lhs = SymbolTuple::make(k, 1, 2, sh.term(m_form(p, scaled(q, t * omt))));
        start.add(lhs, 1);
        Builder b("thm3.3-eq3." + tag, ctx, start);
        SymbolTuple W1 =
            SymbolTuple::make(k, 2, 2, sh.witness(m_form(p_y, scaled(q_y, x * y)), y));
        Chain w(SymbolContext{k, 2, 2});
        w.add(W1, -1);
        b.addboundary(w, "D2");
        SymbolTuple Wc =
            SymbolTuple::make(k, 2, 2, sh.witness(m_form(p0, zero_mat(k, 2)), MPoly(k)));
        Chain w2(SymbolContext{k, 2, 2});
        w2.add(Wc, 1);
        b.addboundary(w2, "D2");
        Chain goal(ctx);
        goal.add(SymbolTuple::make(k, 1, 2, sh.term(m_form(p, zero_mat(k, 2)))), 1);
        return b.finish_with_goal(goal);
    }
    if (which == 4) {
        Chain start(ctx);
        start.add(SymbolTuple::make(k, 1, 2, sh.term(m_form(p, q))), 1);
        Builder b("thm3.3-eq4." + tag, ctx, start);
        SymbolTuple W2 =
            SymbolTuple::make(k, 2, 2, sh.witness(m_form(p_y, scaled(q_y, x + y)), y));
        Chain w(SymbolContext{k, 2, 2});
        w.add(W2, -1);
        b.addboundary(w, "D2");
        Chain goal(ctx);
        goal.add(SymbolTuple::make(k, 1, 2, sh.term(m_form(p, scaled(q, t)))), 1);
        goal.add(SymbolTuple::make(k, 1, 2, sh.term_at(m_form(p0, scaled(q0, t)), MPoly(k))), -1);
        return b.finish_with_goal(goal);
    }
    // which == 5
    Chain start(ctx);
    start.add(SymbolTuple::make(k, 1, 2, sh.term_at(m_form(p_1mt, scaled(q_1mt, omt)), omt)), 1);
    Builder b("thm3.3-eq5." + tag, ctx, start);
    SymbolTuple W3 = SymbolTuple::make(
        k, 2, 2, sh.witness(m_form(p_1my, scaled(q_1my, (x + y) * omy)), omy));
    Chain w(SymbolContext{k, 2, 2});
    w.add(W3, -1);
    b.addboundary(w, "D2");
    Chain goal(ctx);
    goal.add(SymbolTuple::make(k, 1, 2, sh.term_at(m_form(p_1mt, scaled(q_1mt, t * omt)), omt)), 1);
    goal.add(SymbolTuple::make(k, 1, 2, sh.term_at(m_form(p1, scaled(q1, t)), one)), -1);
    return b.finish_with_goal(goal);
}

// equations (6)/(7): the combined master relation at q = phi+psi / 1+phi psi
inline CertificateScript script_eq67(const Instance& ins, int which) {
    const FieldPtr& k = ins.k;
    SymbolContext ctx{k, 1, 2};
    D1Shape sh{k, 2, 0, false, {ins.theta2}};
    PolyMatrix p = ins.phi * ins.psi;
    PolyMatrix q = which == 6 ? ins.phi + ins.psi : one_mat(k, 2) + ins.phi * ins.psi;
    MPoly t = MPoly::variable(k, "t");
    MPoly one = MPoly::constant(k, fv_one(k));
    auto scaled = [&](const PolyMatrix& m, const MPoly& s) {
        PolyMatrix r = m;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r.at(i, j) = s * m.at(i, j);
        return r;
    };
    Chain start(ctx);
    start.add(SymbolTuple::make(k, 1, 2, sh.term(m_form(p, q))), 1);
    Builder b("thm3.3-eq" + std::to_string(which) + "." + ins.tag, ctx, start);
    master_eq(b, sh, p, q, 1, true);
    Chain goal(ctx);
    goal.add(SymbolTuple::make(k, 1, 2, sh.term(m_form(p, zero_mat(k, 2)))), 1);
    PolyMatrix p1 = p.substitute("t", one), q1 = q.substitute("t", one);
    PolyMatrix p0 = p.substitute("t", MPoly(k)), q0 = q.substitute("t", MPoly(k));
    goal.add(SymbolTuple::make(k, 1, 2, sh.term_at(m_form(p1, scaled(q1, t)), one)), 1);
    goal.add(SymbolTuple::make(k, 1, 2, sh.term_at(m_form(p0, scaled(q0, t)), MPoly(k))), -1);
    return b.finish_with_goal(goal);
}

// the Claim: S-conjugation identifies the two face tuples
inline CertificateScript script_claim(const Instance& ins, bool second) {
    const FieldPtr& k = ins.k;
    SymbolContext ctx{k, 1, 2};
    D1Shape sh{k, 2, 0, false, {ins.theta2}};
    MPoly t = MPoly::variable(k, "t");
    MPoly one = MPoly::constant(k, fv_one(k));
    auto scaled = [&](const PolyMatrix& m, const MPoly& s) {
        PolyMatrix r = m;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r.at(i, j) = s * m.at(i, j);
        return r;
    };
    PolyMatrix p = ins.phi * ins.psi;
    PolyMatrix q = second ? one_mat(k, 2) + p : ins.phi + ins.psi;
    PolyMatrix p1 = p.substitute("t", one), q1 = q.substitute("t", one);
    PolyMatrix p0 = p.substitute("t", MPoly(k)), q0 = q.substitute("t", MPoly(k));
    PolyMatrix Sb = blocks2(ins.S, zero_mat(k, 2), zero_mat(k, 2), ins.S);

    Chain start(ctx);
    SymbolTuple at1 = SymbolTuple::make(k, 1, 2, sh.term_at(m_form(p1, scaled(q1, t)), one));
    start.add(at1, 1);
    Builder b(std::string("thm3.3-claim-") + (second ? "b." : "a.") + ins.tag, ctx, start);
    b.conjugate(at1, Sb.inverse());
    Chain goal(ctx);
    goal.add(SymbolTuple::make(k, 1, 2, sh.term_at(m_form(p0, scaled(q0, t)), MPoly(k))), 1);
    return b.finish_with_goal(goal);
}

// equation (8): (M_{phi+psi}, theta-pair) = (M_{1+phi psi}, theta-pair)
inline CertificateScript script_eq8(const Instance& ins) {
    const FieldPtr& k = ins.k;
    SymbolContext ctx{k, 1, 2};
    D1Shape sh{k, 2, 0, false, {ins.theta2}};
    PolyMatrix p = ins.phi * ins.psi;
    Chain start(ctx);
    start.add(SymbolTuple::make(k, 1, 2, sh.term(m_form(p, ins.phi + ins.psi))), 1);
    Builder b("thm3.3-eq8." + ins.tag, ctx, start);
    eq8_step(b, sh, p, ins.phi + ins.psi, one_mat(k, 2) + p, ins.S, 1);
    Chain goal(ctx);
    goal.add(SymbolTuple::make(k, 1, 2, sh.term(m_form(p, one_mat(k, 2) + p))), 1);
    return b.finish_with_goal(goal);
}

// equation (9): the doubled-slot version used by the skew-symmetry proof
inline CertificateScript script_eq9(const Instance& ins) {
    const FieldPtr& k = ins.k;
    SymbolContext ctx{k, 1, 2};
    D1Shape sh{k, 2, 0, true, {}};
    PolyMatrix p = ins.phi * ins.psi;
    Chain start(ctx);
    start.add(SymbolTuple::make(k, 1, 2, sh.term(m_form(p, ins.phi + ins.psi))), 1);
    Builder b("thm3.3-eq9." + ins.tag, ctx, start);
    eq8_step(b, sh, p, ins.phi + ins.psi, one_mat(k, 2) + p, ins.S, 1);
    Chain goal(ctx);
    goal.add(SymbolTuple::make(k, 1, 2, sh.term(m_form(p, one_mat(k, 2) + p))), 1);
    return b.finish_with_goal(goal);
}

// the final multilinearity chain: (phi, th) + (psi, th) = (phi psi, th)
inline CertificateScript script_mult(const Instance& ins) {
    const FieldPtr& k = ins.k;
    SymbolContext ctx{k, 1, 2};
    D1Shape sh{k, 2, 0, false, {ins.theta2}};
    Chain start(ctx);
    start.add(SymbolTuple::make(k, 1, 2, {ins.phi, ins.theta2}), 1);
    start.add(SymbolTuple::make(k, 1, 2, {ins.psi, ins.theta2}), 1);
    Builder b("thm3.3-mult." + ins.tag, ctx, start);
    mult_d1(b, sh, ins.phi, ins.psi, ins.S, 1, true);
    Chain goal(ctx);
    goal.add(SymbolTuple::make(k, 1, 2, {ins.phi * ins.psi, ins.theta2}), 1);
    return b.finish_with_goal(goal);
}

// skew-symmetry: (phi,psi) + (psi,phi) + (phi,phi) + (psi,psi) rewrites to
// (phi,phi) + (psi,psi); equivalently (phi,psi) = -(psi,phi)
inline CertificateScript script_prop36(const Instance& ins) {
    const FieldPtr& k = ins.k;
    SymbolContext ctx{k, 1, 2};
    const PolyMatrix &F = ins.phi, &P = ins.psi;
    PolyMatrix FP = F * P;
    Chain start(ctx);
    start.add(SymbolTuple::make(k, 1, 2, {F, P}), 1);
    start.add(SymbolTuple::make(k, 1, 2, {P, F}), 1);
    start.add(SymbolTuple::make(k, 1, 2, {F, F}), 1);
    start.add(SymbolTuple::make(k, 1, 2, {P, P}), 1);
    Builder b("prop3.6." + ins.tag, ctx, start);

    // slot-2 contractions: (phi, phi) + (phi, psi) -> (phi, phi psi)
    D1Shape sh2F{k, 2, 1, false, {F}};
    mult_d1(b, sh2F, F, P, ins.S, 1, true);
    D1Shape sh2P{k, 2, 1, false, {P}};
    mult_d1(b, sh2P, F, P, ins.S, 1, true);
    // slot-1 contraction: (phi, phi psi) + (psi, phi psi) -> (phi psi, phi psi)
    D1Shape sh1{k, 2, 0, false, {FP}};
    mult_d1(b, sh1, F, P, ins.S, 1, true);

    // now run the equation-(9) route downward
    D1Shape shd{k, 2, 0, true, {}};
    auto pair_term = [&](const PolyMatrix& m) { return b.tuple({m, m}); };
    b.wedgeadd(pair_term(one_mat(k, 2)), 1);
    PolyMatrix tri_q = blocks2(one_mat(k, 2), one_mat(k, 2), zero_mat(k, 2), FP);
    b.blockjoin({pair_term(one_mat(k, 2)), pair_term(FP)}, {tri_q, tri_q});
    b.conjugate(pair_term(tri_q), lower_unipotent(one_mat(k, 2)));
    eq8_step(b, shd, FP, one_mat(k, 2) + FP, F + P, ins.S, 1);
    SymbolTuple tri = b.conjugate(b.tuple(shd.term(m_form(FP, F + P))), lower_unipotent(-P));
    b.blocksplit(tri, {2, 2});

    Chain goal(ctx);
    goal.add(SymbolTuple::make(k, 1, 2, {F, F}), 1);
    goal.add(SymbolTuple::make(k, 1, 2, {P, P}), 1);
    return b.finish_with_goal(goal);
}

// ---------------------------------------------------------------------------

inline std::vector<CertificateScript> bundled_proofs() {
    FieldPtr q = FieldDesc::rationals();
    FieldPtr f7 = FieldDesc::prime(Int(7));
    Instance insq = make_instance(q, "q", {2, 3}, {5, 7}, {3, 2});
    Instance ins7 = make_instance(f7, "f7", {2, 3}, {3, 4}, {3, 2});

    std::vector<CertificateScript> out;
    out.push_back(script_identity(q, "q", false));
    out.push_back(script_identity(q, "q", true));
    out.push_back(script_identity(f7, "f7", false));
    out.push_back(script_identity(f7, "f7", true));
    out.push_back(script_lemma_i(q, "q"));
    out.push_back(script_lemma_i(f7, "f7"));
    out.push_back(script_lemma_ii(q, "q"));
    out.push_back(script_lemma_iii(q, "q"));
    out.push_back(script_lemma_iv(q, "q"));
    out.push_back(script_lemma_iv(f7, "f7", 5));
    out.push_back(script_prop27(q, "q"));
    out.push_back(script_negation(q, "q"));
    out.push_back(script_sum(q, "q"));
    out.push_back(script_eq345(q, "q", 3));
    out.push_back(script_eq345(q, "q", 4));
    out.push_back(script_eq345(q, "q", 5));
    out.push_back(script_eq67(insq, 6));
    out.push_back(script_eq67(insq, 7));
    out.push_back(script_claim(insq, false));
    out.push_back(script_claim(insq, true));
    out.push_back(script_eq8(insq));
    out.push_back(script_eq9(insq));
    out.push_back(script_mult(insq));
    out.push_back(script_mult(ins7));
    out.push_back(script_prop36(insq));
    return out;
}

}  // namespace corpus
}  // namespace motsym
