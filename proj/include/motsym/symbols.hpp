#pragma once

#include <map>
#include <string>
#include <vector>

#include "motsym/matrix.hpp"

namespace motsym {

struct SymbolContext {
    FieldPtr field;
    int d = 0;  // simplicial degree, 0..2
    int l = 1;  // weight

    bool operator==(const SymbolContext& o) const {
        return d == o.d && l == o.l && field_equal(field, o.field);
    }
    bool operator!=(const SymbolContext& o) const { return !(*this == o); }
    std::string str() const {
        return "{field:\"" + field_str(field) + "\", d:" + std::to_string(d) +
               ", l:" + std::to_string(l) + "}";
    }
};

inline std::vector<std::string> allowed_vars(int d) {
    if (d == 0) return {};
    if (d == 1) return {"t"};
    if (d == 2) return {"x", "y"};
    throw input_error("simplicial degree must be 0, 1 or 2");
}

// An l-tuple of pairwise commuting matrices, each invertible over the
// simplicial coordinate ring (determinant a nonzero constant of k).
class SymbolTuple {
  public:
    SymbolTuple() = default;

    static SymbolTuple make(const FieldPtr& field, int d, int l, std::vector<PolyMatrix> mats) {
        if (l < 1 || static_cast<int>(mats.size()) != l)
            throw input_error("symbol tuple needs exactly l >= 1 matrices");
        int n = mats[0].rows();
        auto ok_vars = allowed_vars(d);
        for (int i = 0; i < l; ++i) {
            const PolyMatrix& m = mats[static_cast<size_t>(i)];
            if (m.rows() != m.cols() || m.rows() != n)
                throw input_error("matrix " + std::to_string(i) + " is not square of the common size");
            for (const auto& v : m.variables())
                if (std::find(ok_vars.begin(), ok_vars.end(), v) == ok_vars.end())
                    throw input_error("matrix " + std::to_string(i) + " uses variable '" + v +
                                      "' not allowed at d=" + std::to_string(d));
            MPoly det = m.det();
            if (det.is_zero() || !det.is_constant())
                throw input_error("matrix " + std::to_string(i) +
                                  " is not invertible over the polynomial ring (det not a nonzero constant)");
        }
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j)
                if (mats[static_cast<size_t>(i)] * mats[static_cast<size_t>(j)] !=
                    mats[static_cast<size_t>(j)] * mats[static_cast<size_t>(i)])
                    throw input_error("matrices " + std::to_string(i) + " and " + std::to_string(j) +
                                      " do not commute");
        SymbolTuple t;
        t.ctx_ = SymbolContext{field, d, l};
        t.n_ = n;
        t.mats_ = std::move(mats);
        return t;
    }

    // 1x1 tuples from field values (the image of a Steinberg symbol).
    static SymbolTuple from_scalars(const FieldPtr& field, const ValVec& alphas) {
        std::vector<PolyMatrix> mats;
        for (const auto& a : alphas) {
            PolyMatrix m(field, 1, 1);
            m.at(0, 0) = MPoly::constant(field, a);
            mats.push_back(std::move(m));
        }
        return make(field, 0, static_cast<int>(alphas.size()), std::move(mats));
    }

    const SymbolContext& context() const { return ctx_; }
    const FieldPtr& field() const { return ctx_.field; }
    int d() const { return ctx_.d; }
    int l() const { return ctx_.l; }
    int size() const { return n_; }
    const std::vector<PolyMatrix>& mats() const { return mats_; }
    const PolyMatrix& mat(int i) const { return mats_[static_cast<size_t>(i)]; }

    bool has_identity_coordinate() const {
        for (const auto& m : mats_)
            if (m.is_identity()) return true;
        return false;
    }

    bool is_constant() const {
        for (const auto& m : mats_)
            if (!m.is_constant()) return false;
        return true;
    }

    // Substitute into every coordinate and re-wrap at the new simplicial degree.
    SymbolTuple substitute(const std::string& var, const MPoly& value, int new_d) const {
        std::vector<PolyMatrix> ms;
        ms.reserve(mats_.size());
        for (const auto& m : mats_) ms.push_back(m.substitute(var, value));
        return make(ctx_.field, new_d, ctx_.l, std::move(ms));
    }

    bool operator==(const SymbolTuple& o) const {
        return ctx_ == o.ctx_ && n_ == o.n_ && mats_ == o.mats_;
    }
    bool operator!=(const SymbolTuple& o) const { return !(*this == o); }

    std::string str() const {
        std::string s = "{field:\"" + field_str(ctx_.field) + "\", d:" + std::to_string(ctx_.d) +
                        ", l:" + std::to_string(ctx_.l) + ", mats:[";
        for (size_t i = 0; i < mats_.size(); ++i) {
            if (i) s += ",";
            s += mats_[i].str();
        }
        return s + "]}";
    }

    friend int tuple_cmp(const SymbolTuple& a, const SymbolTuple& b);

  private:
    SymbolContext ctx_;
    int n_ = 0;
    std::vector<PolyMatrix> mats_;
};

inline int tuple_cmp(const SymbolTuple& a, const SymbolTuple& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
    for (size_t i = 0; i < a.mats_.size(); ++i) {
        int c = pmatrix_cmp(a.mats_[i], b.mats_[i]);
        if (c != 0) return c;
    }
    return 0;
}

struct TupleLess {
    bool operator()(const SymbolTuple& a, const SymbolTuple& b) const { return tuple_cmp(a, b) < 0; }
};

// Formal integer combination of symbol tuples at a fixed context.
// Canonical: no zero coefficients stored.
class Chain {
  public:
    Chain() = default;
    explicit Chain(SymbolContext ctx) : ctx_(std::move(ctx)) {}

    const SymbolContext& context() const { return ctx_; }
    const std::map<SymbolTuple, long, TupleLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const SymbolTuple& t, long coef) {
        if (coef == 0) return;
        if (t.context() != ctx_)
            throw domain_error("chain term context mismatch: " + t.context().str() + " vs " + ctx_.str());
        auto it = terms_.find(t);
        if (it == terms_.end()) terms_.emplace(t, coef);
        else {
            it->second += coef;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Chain operator+(const Chain& o) const {
        if (o.ctx_ != ctx_) throw domain_error("chain context mismatch in sum");
        Chain r = *this;
        for (const auto& [t, c] : o.terms_) r.add(t, c);
        return r;
    }

    Chain operator-(const Chain& o) const { return *this + o.scaled(-1); }

    Chain scaled(long s) const {
        Chain r(ctx_);
        if (s == 0) return r;
        for (const auto& [t, c] : terms_) r.terms_.emplace(t, c * s);
        return r;
    }

    bool operator==(const Chain& o) const {
        if (ctx_ != o.ctx_ || terms_.size() != o.terms_.size()) return false;
        auto ia = terms_.begin();
        auto ib = o.terms_.begin();
        for (; ia != terms_.end(); ++ia, ++ib)
            if (ia->second != ib->second || !(ia->first == ib->first)) return false;
        return true;
    }
    bool operator!=(const Chain& o) const { return !(*this == o); }

    static Chain single(const SymbolTuple& t, long coef = 1) {
        Chain c(t.context());
        c.add(t, coef);
        return c;
    }

    std::string str() const {
        std::string s = "[";
        bool first = true;
        for (const auto& [t, c] : terms_) {
            if (!first) s += ",";
            s += "{coef:" + std::to_string(c) + ", tuple:" + t.str() + "}";
            first = false;
        }
        return s + "]";
    }

  private:
    SymbolContext ctx_;
    std::map<SymbolTuple, long, TupleLess> terms_;
};

// d=1 -> d=0 boundary: (theta(1)) - (theta(0)), extended linearly.
inline Chain boundary(const Chain& c) {
    if (c.context().d != 1) throw domain_error("boundary requires a d=1 chain");
    const FieldPtr& k = c.context().field;
    Chain out(SymbolContext{k, 0, c.context().l});
    MPoly one = MPoly::constant(k, fv_one(k));
    MPoly zero(k);
    for (const auto& [t, coef] : c.terms()) {
        out.add(t.substitute("t", one, 0), coef);
        out.add(t.substitute("t", zero, 0), -coef);
    }
    return out;
}

// d=2 -> d=1 boundary: (theta(1-t,t)) - (theta(0,t)) + (theta(t,0)).
inline Chain boundary2(const Chain& c) {
    if (c.context().d != 2) throw domain_error("boundary2 requires a d=2 chain");
    const FieldPtr& k = c.context().field;
    Chain out(SymbolContext{k, 1, c.context().l});
    MPoly t = MPoly::variable(k, "t");
    MPoly one_minus_t = MPoly::constant(k, fv_one(k)) - t;
    MPoly zero(k);
    for (const auto& [tu, coef] : c.terms()) {
        // substitute y first; its replacement does not involve x
        auto face = [&](const MPoly& xv, const MPoly& yv) {
            std::vector<PolyMatrix> ms;
            for (const auto& m : tu.mats()) ms.push_back(m.substitute("y", yv).substitute("x", xv));
            return SymbolTuple::make(k, 1, tu.l(), std::move(ms));
        };
        out.add(face(one_minus_t, t), coef);
        out.add(face(zero, t), -coef);
        out.add(face(t, zero), coef);
    }
    return out;
}

// Block-diagonal sum of two tuples in the same context.
inline SymbolTuple direct_sum(const SymbolTuple& a, const SymbolTuple& b) {
    if (a.context() != b.context()) throw domain_error("direct_sum: context mismatch");
    std::vector<PolyMatrix> ms;
    for (int i = 0; i < a.l(); ++i) ms.push_back(a.mat(i).direct_sum(b.mat(i)));
    return SymbolTuple::make(a.field(), a.d(), a.l(), std::move(ms));
}

// View an L-tuple as a k-tuple through the free module structure of
// L over k; realizes the norm map on symbols. d in {0, 1}.
inline SymbolTuple restrict_scalars(const SymbolTuple& s, const FieldPtr& k) {
    const FieldPtr& L = s.field();
    if (!field_in_tower(L, k))
        throw domain_error("restrict_scalars: tuple field is not an extension of the base");
    if (s.d() > 1) throw domain_error("restrict_scalars is provided for d in {0,1}");
    if (field_equal(L, k)) return s;
    int N = tower_degree(L, k);
    std::vector<PolyMatrix> out;
    for (const auto& m : s.mats()) {
        PolyMatrix big(k, m.rows() * N, m.cols() * N);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                const MPoly& e = m.at(i, j);
                for (const auto& [key, coeff] : e.terms()) {
                    FMatrix rep = regular_representation(coeff, k);
                    // monomial with the same exponents over k
                    MPoly mono = MPoly::constant(k, fv_one(k));
                    for (size_t vi = 0; vi < e.vars().size(); ++vi)
                        mono = mono * MPoly::variable(k, e.vars()[vi]).pow(key[vi]);
                    for (int r = 0; r < N; ++r)
                        for (int cc = 0; cc < N; ++cc) {
                            if (rep.at(r, cc).is_zero()) continue;
                            big.at(i * N + r, j * N + cc) =
                                big.at(i * N + r, j * N + cc) + mono * MPoly::constant(k, rep.at(r, cc));
                        }
                }
            }
        out.push_back(std::move(big));
    }
    return SymbolTuple::make(k, s.d(), s.l(), std::move(out));
}

inline Chain restrict_scalars(const Chain& c, const FieldPtr& k) {
    Chain out(SymbolContext{k, c.context().d, c.context().l});
    for (const auto& [t, coef] : c.terms()) out.add(restrict_scalars(t, k), coef);
    return out;
}

// Block-scalar inclusion i_{L/k}: view a k-tuple over L (entries embedded).
inline SymbolTuple extend_scalars(const SymbolTuple& s, const FieldPtr& L) {
    if (!field_in_tower(L, s.field()))
        throw domain_error("extend_scalars: target is not an extension of the tuple field");
    std::vector<PolyMatrix> ms;
    for (const auto& m : s.mats()) {
        PolyMatrix big(L, m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                MPoly e(L);
                for (const auto& [key, coeff] : m.at(i, j).terms()) {
                    MPoly mono = MPoly::constant(L, fv_embed(L, coeff));
                    for (size_t vi = 0; vi < m.at(i, j).vars().size(); ++vi)
                        mono = mono * MPoly::variable(L, m.at(i, j).vars()[vi]).pow(key[vi]);
                    e = e + mono;
                }
                big.at(i, j) = e;
            }
        ms.push_back(std::move(big));
    }
    return SymbolTuple::make(L, s.d(), s.l(), std::move(ms));
}

}  // namespace motsym
