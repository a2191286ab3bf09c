#pragma once

#include <optional>
#include <string>
#include <vector>

#include "motsym/numberfield.hpp"
#include "motsym/symbols.hpp"

namespace motsym {

// One coordinate of the canonical presentation of a simple factor:
// either the current operator generates a proper extension (modulus =
// its minimal polynomial over the field built so far, alpha = the class
// of the variable), or it acts as an explicit element of that field.
struct SimpleStep {
    bool is_ext = false;
    Poly modulus;    // is_ext
    FieldValue elt;  // !is_ext

    bool operator==(const SimpleStep& o) const {
        if (is_ext != o.is_ext) return false;
        return is_ext ? modulus == o.modulus : elt == o.elt;
    }
};

inline int step_cmp(const SimpleStep& a, const SimpleStep& b) {
    if (a.is_ext != b.is_ext) return a.is_ext ? -1 : 1;
    if (a.is_ext) return poly_cmp(a.modulus, b.modulus);
    return value_cmp(a.elt, b.elt);
}

// A simple composition factor (L_j, alpha_1 .. alpha_l) in canonical
// index-order presentation: the tower is built by adjoining the alphas
// in coordinate order, so syntactic equality decides isomorphism.
struct SimpleFactor {
    std::vector<SimpleStep> steps;
    FieldPtr field;  // the tower k(alpha_1, ..., alpha_l)
    ValVec alphas;   // embedded in `field`

    bool operator==(const SimpleFactor& o) const { return steps == o.steps; }

    int degree_over_base(const FieldPtr& k) const { return tower_degree(field, k); }

    std::string str() const {
        std::string s = "(" + field_str(field) + ";";
        for (size_t i = 0; i < alphas.size(); ++i) {
            if (i) s += ",";
            s += alphas[i].str();
        }
        return s + ")";
    }
};

inline int factor_cmp(const SimpleFactor& a, const SimpleFactor& b) {
    if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size() ? -1 : 1;
    for (size_t i = 0; i < a.steps.size(); ++i) {
        int c = step_cmp(a.steps[i], b.steps[i]);
        if (c != 0) return c;
    }
    return 0;
}

struct FactorLess {
    bool operator()(const SimpleFactor& a, const SimpleFactor& b) const {
        return factor_cmp(a, b) < 0;
    }
};

// Canonical form of a d=0 chain: signed multiset of simple factors with
// no coordinate equal to 1.
class K0Class {
  public:
    K0Class() = default;
    K0Class(FieldPtr field, int l) : field_(std::move(field)), l_(l) {}

    const FieldPtr& field() const { return field_; }
    int weight() const { return l_; }
    const std::map<SimpleFactor, long, FactorLess>& factors() const { return fs_; }
    bool is_empty() const { return fs_.empty(); }

    void add(const SimpleFactor& f, long mult) {
        if (mult == 0) return;
        auto it = fs_.find(f);
        if (it == fs_.end()) fs_.emplace(f, mult);
        else {
            it->second += mult;
            if (it->second == 0) fs_.erase(it);
        }
    }

    K0Class operator+(const K0Class& o) const {
        K0Class r = *this;
        for (const auto& [f, m] : o.fs_) r.add(f, m);
        return r;
    }
    K0Class operator-(const K0Class& o) const {
        K0Class r = *this;
        for (const auto& [f, m] : o.fs_) r.add(f, -m);
        return r;
    }

    bool operator==(const K0Class& o) const {
        if (fs_.size() != o.fs_.size()) return false;
        auto ia = fs_.begin(), ib = o.fs_.begin();
        for (; ia != fs_.end(); ++ia, ++ib)
            if (ia->second != ib->second || !(ia->first == ib->first)) return false;
        return true;
    }
    bool operator!=(const K0Class& o) const { return !(*this == o); }

    std::string str() const {
        if (fs_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [f, m] : fs_) {
            if (!first) s += " ";
            s += (m >= 0 && !first ? "+" : "") + std::to_string(m) + "*" + f.str();
            first = false;
        }
        return s;
    }

  private:
    FieldPtr field_;
    int l_ = 0;
    std::map<SimpleFactor, long, FactorLess> fs_;
};

namespace detail {

inline FMatrix mat_of_poly(const Poly& f, const FMatrix& m) {
    int n = m.rows();
    FMatrix acc(m.field(), n, n);
    FMatrix pw = FMatrix::identity(m.field(), n);
    for (int i = 0; i <= f.degree(); ++i) {
        const FieldValue c = f.coeff(static_cast<size_t>(i));
        if (!c.is_zero())
            for (int r = 0; r < n; ++r)
                for (int cc = 0; cc < n; ++cc)
                    acc.at(r, cc) = fv_add(acc.at(r, cc), fv_mul(c, pw.at(r, cc)));
        if (i < f.degree()) pw = pw * m;
    }
    return acc;
}

// Row space / membership structure for a list of vectors.
struct Span {
    FieldPtr field;
    int amb = 0;
    int dim = 0;
    FMatrix rr;  // echelon rows, pivots in insertion order

    Span(FieldPtr f, int ambient) : field(std::move(f)), amb(ambient), rr(field, 0, ambient) {}

    // reduce v by current rows; returns the residual
    ValVec reduce(const ValVec& v) const {
        ValVec r = v;
        for (int i = 0; i < dim; ++i) {
            int p = -1;
            for (int j = 0; j < amb; ++j)
                if (!rr.at(i, j).is_zero()) { p = j; break; }
            if (p < 0) continue;
            if (r[static_cast<size_t>(p)].is_zero()) continue;
            FieldValue f = fv_div(r[static_cast<size_t>(p)], rr.at(i, p));
            for (int j = 0; j < amb; ++j)
                r[static_cast<size_t>(j)] = fv_sub(r[static_cast<size_t>(j)], fv_mul(f, rr.at(i, j)));
        }
        return r;
    }

    bool contains(const ValVec& v) const {
        for (const auto& c : reduce(v))
            if (!c.is_zero()) return false;
        return true;
    }

    // add a vector if independent; returns true when added
    bool insert(const ValVec& v) {
        ValVec r = reduce(v);
        int p = -1;
        for (int j = 0; j < amb; ++j)
            if (!r[static_cast<size_t>(j)].is_zero()) { p = j; break; }
        if (p < 0) return false;
        FMatrix nr(field, dim + 1, amb);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < amb; ++j) nr.at(i, j) = rr.at(i, j);
        for (int j = 0; j < amb; ++j) nr.at(dim, j) = r[static_cast<size_t>(j)];
        rr = std::move(nr);
        ++dim;
        return true;
    }
};

struct Leaf {
    FieldPtr field;
    std::vector<SimpleStep> steps;
    long mult;
};

// Composition-series recursion: filter by the first remaining operator,
// pass to graded pieces of the f(theta)-adic filtration, recurse on the
// rest as matrices over the extension. Emits (tower, steps, dim).
inline void decompose(const FieldPtr& L, std::vector<FMatrix> ops, int dim,
                      std::vector<SimpleStep> steps, int ext_count, long coef,
                      std::vector<Leaf>& out, std::uint64_t seed) {
    if (ops.empty()) {
        out.push_back(Leaf{L, std::move(steps), coef * dim});
        return;
    }
    FMatrix theta = ops.front();
    std::vector<FMatrix> rest(ops.begin() + 1, ops.end());
    int m = theta.rows();

    Poly chi = char_poly(theta);
    for (const auto& [f, multf] : factor_poly_anyfield(chi, seed)) {
        // generalized eigenspace of f
        FMatrix N = mat_of_poly(f, theta);
        FMatrix Npow = FMatrix::identity(L, m);
        for (int i = 0; i < multf; ++i) Npow = Npow * N;
        std::vector<ValVec> K = Npow.kernel();

        // the new coefficient field and the step record
        FieldPtr Lp = L;
        SimpleStep step;
        FieldValue alpha_in_Lp;
        int degf = f.degree();
        if (degf == 1) {
            step.is_ext = false;
            step.elt = fv_neg(f.coeff(0));
            alpha_in_Lp = step.elt;
        } else {
            std::string var = "x" + std::to_string(ext_count + 1);
            Poly mod(L, var, f.coeffs());
            Lp = FieldDesc::extension(L, mod.coeffs(), var);
            step.is_ext = true;
            step.modulus = mod;
            ValVec gen(static_cast<size_t>(degf), fv_zero(L));
            gen[1] = fv_one(L);
            alpha_in_Lp = FieldValue::extension(Lp, std::move(gen));
        }
        int next_ext = ext_count + (degf > 1 ? 1 : 0);

        // filtration S_r = N^r K; graded pieces are L[x]/(f)-vector spaces
        std::vector<std::vector<ValVec>> filt{K};
        while (!filt.back().empty()) {
            std::vector<ValVec> next;
            Span sp(L, m);
            for (const auto& v : filt.back()) {
                ValVec w = N.apply(v);
                if (sp.insert(w)) next.push_back(std::move(w));
            }
            filt.push_back(std::move(next));
            if (filt.size() > static_cast<size_t>(multf) + 1) break;
        }

        for (size_t r = 0; r + 1 < filt.size(); ++r) {
            // L'-basis of S_r / S_{r+1}
            Span covered(L, m);
            for (const auto& v : filt[r + 1]) covered.insert(v);
            std::vector<ValVec> W;
            std::vector<ValVec> orbit_cols;  // theta^s w_v in pick order
            for (const auto& v : filt[r]) {
                if (covered.contains(v)) continue;
                W.push_back(v);
                ValVec cur = v;
                for (int s = 0; s < degf; ++s) {
                    covered.insert(cur);
                    orbit_cols.push_back(cur);
                    if (s + 1 < degf) cur = theta.apply(cur);
                }
            }
            if (W.empty()) continue;

            // solve psi * w_u in the basis [orbit_cols | S_{r+1} basis]
            int wsz = static_cast<int>(W.size());
            int scols = static_cast<int>(filt[r + 1].size());
            FMatrix sys(L, m, wsz * degf + scols);
            for (int c = 0; c < wsz * degf; ++c)
                for (int i = 0; i < m; ++i) sys.at(i, c) = orbit_cols[static_cast<size_t>(c)][static_cast<size_t>(i)];
            for (int c = 0; c < scols; ++c)
                for (int i = 0; i < m; ++i)
                    sys.at(i, wsz * degf + c) = filt[r + 1][static_cast<size_t>(c)][static_cast<size_t>(i)];

            std::vector<FMatrix> new_ops;
            for (const auto& psi : rest) {
                FMatrix act(Lp, wsz, wsz);
                for (int u = 0; u < wsz; ++u) {
                    ValVec y = psi.apply(W[static_cast<size_t>(u)]);
                    ValVec x;
                    if (!sys.solve(y, x))
                        throw domain_error("graded piece is not invariant (operators do not commute?)");
                    for (int v = 0; v < wsz; ++v) {
                        if (degf == 1) {
                            act.at(v, u) = x[static_cast<size_t>(v)];
                        } else {
                            ValVec cs(x.begin() + v * degf, x.begin() + (v + 1) * degf);
                            act.at(v, u) = FieldValue::extension(Lp, std::move(cs));
                        }
                    }
                }
                new_ops.push_back(std::move(act));
            }

            std::vector<SimpleStep> nsteps = steps;
            nsteps.push_back(step);
            decompose(Lp, new_ops, wsz, std::move(nsteps), next_ext, coef, out, seed);
        }
    }
}

// Rebuild the tower and the embedded alphas from a completed step list.
inline SimpleFactor finish_factor(const FieldPtr& k, const std::vector<SimpleStep>& steps) {
    SimpleFactor f;
    f.steps = steps;
    FieldPtr cur = k;
    std::vector<FieldValue> alphas;
    for (const auto& s : steps) {
        if (s.is_ext) {
            FieldPtr nxt = FieldDesc::extension(cur, s.modulus.coeffs(), s.modulus.var());
            for (auto& a : alphas) a = fv_embed(nxt, a);
            ValVec gen(static_cast<size_t>(s.modulus.degree()), fv_zero(cur));
            gen[1] = fv_one(cur);
            alphas.push_back(FieldValue::extension(nxt, std::move(gen)));
            cur = nxt;
        } else {
            alphas.push_back(s.elt);
        }
    }
    f.field = cur;
    f.alphas = std::move(alphas);
    return f;
}

}  // namespace detail

// Full Jordan-Hoelder multiset of a d=0 tuple, before the wedge quotient.
inline std::vector<std::pair<SimpleFactor, long>> composition_factors(const SymbolTuple& t,
                                                                      std::uint64_t seed = 0x5eedf00d) {
    if (t.d() != 0) throw domain_error("composition factors require a d=0 tuple");
    std::vector<FMatrix> ops;
    for (const auto& m : t.mats()) ops.push_back(m.constant_matrix());
    std::vector<detail::Leaf> leaves;
    detail::decompose(t.field(), ops, t.size(), {}, 0, 1, leaves, seed);
    std::vector<std::pair<SimpleFactor, long>> out;
    for (auto& leaf : leaves)
        out.emplace_back(detail::finish_factor(t.field(), leaf.steps), leaf.mult);
    return out;
}

// Canonical class of a d=0 chain in K_0(k, G_m^{wedge l}): the free
// abelian group on simples with no identity coordinate.
inline K0Class k0_class(const Chain& c, std::uint64_t seed = 0x5eedf00d) {
    if (c.context().d != 0) throw domain_error("k0_class requires a d=0 chain");
    K0Class cls(c.context().field, c.context().l);
    for (const auto& [t, coef] : c.terms()) {
        for (auto& [factor, mult] : composition_factors(t, seed)) {
            bool has_one = false;
            for (const auto& a : factor.alphas)
                if (a.is_one()) { has_one = true; break; }
            if (!has_one) cls.add(factor, coef * mult);
        }
    }
    return cls;
}

inline K0Class k0_class(const SymbolTuple& t, std::uint64_t seed = 0x5eedf00d) {
    return k0_class(Chain::single(t), seed);
}

// Exact cycle test at d=1: the boundary class vanishes in the free group.
inline bool is_cycle(const Chain& c, std::uint64_t seed = 0x5eedf00d) {
    if (c.context().d != 1) throw domain_error("is_cycle requires a d=1 chain");
    return k0_class(boundary(c), seed).is_empty();
}

enum class Irreducibility { Yes, No, Unknown };

inline bool is_companion_form(const PolyMatrix& m) {
    int n = m.rows();
    if (n != m.cols()) return false;
    for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i + 1) {
                if (!m.at(i, j).is_one()) return false;
            } else if (!m.at(i, j).is_zero()) {
                return false;
            }
        }
    return n >= 1;
}

// d=0: exact decision through the canonical class. d=1: the sufficient
// certificates (companion coordinate with irreducible characteristic
// polynomial, certified by a degree-preserving specialization; or a face
// with squarefree characteristic polynomial), otherwise Unknown.
inline Irreducibility is_irreducible(const SymbolTuple& t, std::uint64_t seed = 0x5eedf00d) {
    if (t.d() == 0) {
        K0Class cls = k0_class(t, seed);
        if (cls.factors().size() != 1) return Irreducibility::No;
        return cls.factors().begin()->second == 1 ? Irreducibility::Yes : Irreducibility::No;
    }
    if (t.d() != 1) throw domain_error("is_irreducible is provided for d in {0,1}");
    const FieldPtr& k = t.field();

    // (a) companion coordinate, irreducible char poly over k(t) certified
    // by specialization
    for (const auto& m : t.mats()) {
        if (!is_companion_form(m)) continue;
        MPoly chi = char_poly_m(m);
        for (long t0 : {0L, 1L, 2L, -1L, 3L, -2L, 5L, -3L, 7L, 4L}) {
            MPoly sp = chi.substitute("t", MPoly::from_int(k, t0));
            Poly p = sp.to_poly(kCharVar);
            if (p.degree() != m.rows()) continue;
            bool irr = false;
            try {
                irr = poly_is_irreducible(p, seed);
            } catch (const limit_error&) {
                continue;
            }
            if (irr) return Irreducibility::Yes;
        }
    }

    // (b) squarefree characteristic polynomial at a face
    for (const auto& m : t.mats()) {
        for (long t0 : {0L, 1L}) {
            FMatrix face = m.substitute("t", MPoly::from_int(k, t0)).constant_matrix();
            Poly p = char_poly(face);
            if (p.degree() == m.rows() && gcd(p, p.derivative()).degree() == 0)
                return Irreducibility::Yes;
        }
    }
    return Irreducibility::Unknown;
}

// Canonical index-order presentation of the simple module generated by
// the alphas inside L; used to verify operator-order independence.
// Returns the factor plus the degree [L : k(alphas)].
inline std::pair<SimpleFactor, int> canonical_simple(const FieldPtr& k, const FieldPtr& L,
                                                     const ValVec& alphas) {
    int n = tower_degree(L, k);
    std::vector<SimpleStep> steps;
    FieldPtr T = k;  // canonical tower built so far
    // basis of the subfield k(alpha_1..alpha_i) inside L, paired with the
    // corresponding elements of T
    std::vector<std::pair<FieldValue, FieldValue>> basis{{fv_one(L), fv_one(k)}};
    int ext_count = 0;

    for (const auto& alpha : alphas) {
        // find the minimal m with alpha^m in the span of lower powers over the subfield
        std::vector<FieldValue> apow{fv_one(L)};
        for (int m = 1;; ++m) {
            apow.push_back(fv_mul(apow.back(), alpha));
            // columns: basis_u * alpha^j, j < m
            FMatrix sys(k, n, static_cast<int>(basis.size()) * m);
            int col = 0;
            for (int j = 0; j < m; ++j)
                for (const auto& [bL, bT] : basis) {
                    ValVec fl = flatten_coords(fv_mul(bL, apow[static_cast<size_t>(j)]), k);
                    for (int i = 0; i < n; ++i) sys.at(i, col) = fl[static_cast<size_t>(i)];
                    ++col;
                }
            ValVec x;
            if (!sys.solve(flatten_coords(apow.back(), k), x)) continue;

            // coefficients of the minimal polynomial, as elements of T
            ValVec mcoeffs;
            for (int j = 0; j < m; ++j) {
                FieldValue cj = fv_zero(T);
                for (size_t u = 0; u < basis.size(); ++u)
                    cj = fv_add(cj, fv_mul(fv_embed(T, basis[u].second),
                                           fv_embed(T, x[static_cast<size_t>(j) * basis.size() + u])));
                mcoeffs.push_back(fv_neg(cj));
            }

            SimpleStep step;
            if (m == 1) {
                step.is_ext = false;
                step.elt = fv_neg(mcoeffs[0]);  // alpha = c_0 in the subfield
                steps.push_back(step);
            } else {
                mcoeffs.push_back(fv_one(T));
                std::string var = "x" + std::to_string(++ext_count);
                step.is_ext = true;
                step.modulus = Poly(T, var, mcoeffs);
                steps.push_back(step);
                FieldPtr Tn = FieldDesc::extension(T, step.modulus.coeffs(), var);
                // extend the subfield basis by powers of alpha
                std::vector<std::pair<FieldValue, FieldValue>> nb;
                ValVec gen(static_cast<size_t>(m), fv_zero(T));
                gen[1] = fv_one(T);
                FieldValue genv = FieldValue::extension(Tn, std::move(gen));
                for (int j = 0; j < m; ++j)
                    for (const auto& [bL, bT] : basis)
                        nb.emplace_back(fv_mul(bL, apow[static_cast<size_t>(j)]),
                                        fv_mul(fv_pow(genv, Int(j)), fv_embed(Tn, bT)));
                basis = std::move(nb);
                T = Tn;
            }
            break;
        }
    }
    SimpleFactor f = detail::finish_factor(k, steps);
    int sub_deg = tower_degree(f.field, k);
    return {f, n / sub_deg};
}

}  // namespace motsym
