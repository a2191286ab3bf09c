#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "motsym/poly.hpp"

namespace motsym {

// Sparse multivariate polynomial over an exact field. Canonical form:
// the variable list contains exactly the variables that occur, sorted by
// name, so structural equality is polynomial equality. At most a handful
// of variables ever appear here ({t}, {x,y}, {lambda,t}).
class MPoly {
  public:
    using Key = std::vector<int>;

    MPoly() = default;
    explicit MPoly(FieldPtr f) : field_(std::move(f)) {}

    static MPoly constant(const FieldPtr& f, const FieldValue& c) {
        MPoly r(f);
        if (!c.is_zero()) r.terms_[{}] = c;
        return r;
    }
    static MPoly from_int(const FieldPtr& f, long n) { return constant(f, fv_from_int(f, Int(n))); }
    static MPoly variable(const FieldPtr& f, const std::string& name) {
        MPoly r(f);
        r.vars_ = {name};
        r.terms_[{1}] = fv_one(f);
        return r;
    }
    static MPoly from_poly(const Poly& p) {
        MPoly r(p.field());
        if (p.is_zero()) return r;
        r.vars_ = {p.var()};
        for (int i = 0; i <= p.degree(); ++i)
            if (!p.coeff(static_cast<size_t>(i)).is_zero()) r.terms_[{i}] = p.coeff(static_cast<size_t>(i));
        r.compress();
        return r;
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Key, FieldValue>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return vars_.empty(); }
    FieldValue constant_value() const {
        if (!is_constant()) throw domain_error("polynomial is not constant");
        return terms_.empty() ? fv_zero(field_) : terms_.begin()->second;
    }
    bool is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second.is_one(); }

    bool depends_on(const std::string& v) const {
        return std::find(vars_.begin(), vars_.end(), v) != vars_.end();
    }

    int degree_in(const std::string& v) const {
        auto it = std::find(vars_.begin(), vars_.end(), v);
        if (it == vars_.end()) return 0;
        size_t i = static_cast<size_t>(it - vars_.begin());
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k[i]);
        return d;
    }

    MPoly operator+(const MPoly& o) const {
        auto [a, b, vs] = aligned(*this, o);
        MPoly r(field_);
        r.vars_ = vs;
        r.terms_ = std::move(a);
        for (auto& [k, c] : b) {
            auto it = r.terms_.find(k);
            if (it == r.terms_.end()) r.terms_.emplace(k, c);
            else {
                it->second = fv_add(it->second, c);
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        r.compress();
        return r;
    }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [k, c] : r.terms_) c = fv_neg(c);
        return r;
    }

    MPoly operator-(const MPoly& o) const { return *this + (-o); }

    MPoly operator*(const MPoly& o) const {
        auto [a, b, vs] = aligned(*this, o);
        MPoly r(field_);
        r.vars_ = vs;
        for (const auto& [ka, ca] : a)
            for (const auto& [kb, cb] : b) {
                Key k(ka.size());
                for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
                FieldValue prod = fv_mul(ca, cb);
                auto it = r.terms_.find(k);
                if (it == r.terms_.end()) {
                    if (!prod.is_zero()) r.terms_.emplace(std::move(k), std::move(prod));
                } else {
                    it->second = fv_add(it->second, prod);
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        r.compress();
        return r;
    }

    MPoly operator*(const FieldValue& s) const {
        if (s.is_zero()) return MPoly(field_);
        MPoly r = *this;
        for (auto& [k, c] : r.terms_) c = fv_mul(c, s);
        return r;
    }

    bool operator==(const MPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly pow(int e) const {
        MPoly r = constant(field_, fv_one(field_));
        MPoly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    // Homomorphic substitution var := value (a polynomial).
    MPoly substitute(const std::string& var, const MPoly& value) const {
        auto it = std::find(vars_.begin(), vars_.end(), var);
        if (it == vars_.end()) return *this;
        size_t vi = static_cast<size_t>(it - vars_.begin());
        MPoly r(field_);
        std::vector<MPoly> powers{constant(field_, fv_one(field_))};
        for (const auto& [k, c] : terms_) {
            while (static_cast<int>(powers.size()) <= k[vi]) powers.push_back(powers.back() * value);
            MPoly mono(field_);
            Key rest = k;
            rest.erase(rest.begin() + static_cast<long>(vi));
            std::vector<std::string> rest_vars = vars_;
            rest_vars.erase(rest_vars.begin() + static_cast<long>(vi));
            mono.vars_ = std::move(rest_vars);
            mono.terms_[std::move(rest)] = c;
            mono.compress();
            r = r + mono * powers[static_cast<size_t>(k[vi])];
        }
        return r;
    }

    FieldValue eval(const std::map<std::string, FieldValue>& at) const {
        FieldValue r = fv_zero(field_);
        for (const auto& [k, c] : terms_) {
            FieldValue t = c;
            for (size_t i = 0; i < vars_.size(); ++i) {
                if (k[i] == 0) continue;
                auto it = at.find(vars_[i]);
                if (it == at.end()) throw domain_error("no value for variable " + vars_[i]);
                t = fv_mul(t, fv_pow(it->second, Int(k[i])));
            }
            r = fv_add(r, t);
        }
        return r;
    }

    // Univariate view (throws if more than one variable occurs).
    Poly to_poly(const std::string& var_if_constant = "x") const {
        if (vars_.size() > 1) throw domain_error("polynomial is not univariate");
        std::string v = vars_.empty() ? var_if_constant : vars_[0];
        ValVec cs;
        for (const auto& [k, c] : terms_) {
            int e = vars_.empty() ? 0 : k[0];
            if (static_cast<int>(cs.size()) <= e) cs.resize(static_cast<size_t>(e) + 1, fv_zero(field_));
            cs[static_cast<size_t>(e)] = c;
        }
        return Poly(field_, v, std::move(cs));
    }

    // Coefficients as polynomials in the remaining variables, viewing this
    // as univariate in `var`; index = exponent of `var`.
    std::vector<MPoly> coeffs_in(const std::string& var) const {
        int d = degree_in(var);
        std::vector<MPoly> out(static_cast<size_t>(d) + 1, MPoly(field_));
        auto it = std::find(vars_.begin(), vars_.end(), var);
        if (it == vars_.end()) {
            out[0] = *this;
            return out;
        }
        size_t vi = static_cast<size_t>(it - vars_.begin());
        for (const auto& [k, c] : terms_) {
            Key rest = k;
            rest.erase(rest.begin() + static_cast<long>(vi));
            std::vector<std::string> rest_vars = vars_;
            rest_vars.erase(rest_vars.begin() + static_cast<long>(vi));
            MPoly mono(field_);
            mono.vars_ = std::move(rest_vars);
            mono.terms_[std::move(rest)] = c;
            mono.compress();
            out[static_cast<size_t>(k[vi])] = out[static_cast<size_t>(k[vi])] + mono;
        }
        return out;
    }

    // Exact division (throws if not divisible). Lex leading-term reduction.
    MPoly divexact(const MPoly& d) const {
        if (d.is_zero()) throw domain_error("division by zero polynomial");
        if (d.is_constant()) return *this * fv_inv(d.constant_value());
        auto [a, b, vs] = aligned(*this, d);
        MPoly rem(field_);
        rem.vars_ = vs;
        rem.terms_ = std::move(a);
        MPoly quot(field_);
        quot.vars_ = vs;
        const auto& bl = *b.rbegin();
        FieldValue bl_inv = fv_inv(bl.second);
        while (!rem.terms_.empty()) {
            const auto& al = *rem.terms_.rbegin();
            Key qk(al.first.size());
            for (size_t i = 0; i < qk.size(); ++i) {
                qk[i] = al.first[i] - bl.first[i];
                if (qk[i] < 0) throw domain_error("inexact multivariate division");
            }
            FieldValue qc = fv_mul(al.second, bl_inv);
            quot.terms_[qk] = qc;
            // rem -= (qc * x^qk) * b
            for (const auto& [k, c] : b) {
                Key t(k.size());
                for (size_t i = 0; i < k.size(); ++i) t[i] = k[i] + qk[i];
                auto it = rem.terms_.find(t);
                FieldValue delta = fv_mul(qc, c);
                if (it == rem.terms_.end()) {
                    delta = fv_neg(delta);
                    if (!delta.is_zero()) rem.terms_.emplace(std::move(t), std::move(delta));
                } else {
                    it->second = fv_sub(it->second, delta);
                    if (it->second.is_zero()) rem.terms_.erase(it);
                }
            }
        }
        quot.compress();
        return quot;
    }

    std::string str() const;

    friend int mpoly_cmp(const MPoly& a, const MPoly& b);

  private:
    // Drop variables that no longer occur.
    void compress() {
        if (vars_.empty()) return;
        std::vector<bool> used(vars_.size(), false);
        for (const auto& [k, c] : terms_)
            for (size_t i = 0; i < k.size(); ++i)
                if (k[i] > 0) used[i] = true;
        if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
        std::vector<std::string> nv;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) nv.push_back(vars_[i]);
        std::map<Key, FieldValue> nt;
        for (const auto& [k, c] : terms_) {
            Key nk;
            for (size_t i = 0; i < k.size(); ++i)
                if (used[i]) nk.push_back(k[i]);
            nt.emplace(std::move(nk), c);
        }
        vars_ = std::move(nv);
        terms_ = std::move(nt);
    }

    // Re-key both operands to the union variable list (sorted by name).
    static std::tuple<std::map<Key, FieldValue>, std::map<Key, FieldValue>, std::vector<std::string>>
    aligned(const MPoly& x, const MPoly& y) {
        std::vector<std::string> vs = x.vars_;
        for (const auto& v : y.vars_)
            if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
        std::sort(vs.begin(), vs.end());
        auto remap = [&](const MPoly& p) {
            std::map<Key, FieldValue> out;
            for (const auto& [k, c] : p.terms_) {
                Key nk(vs.size(), 0);
                for (size_t i = 0; i < p.vars_.size(); ++i) {
                    size_t j = static_cast<size_t>(
                        std::find(vs.begin(), vs.end(), p.vars_[i]) - vs.begin());
                    nk[j] = k[i];
                }
                out.emplace(std::move(nk), c);
            }
            return out;
        };
        return {remap(x), remap(y), vs};
    }

    FieldPtr field_;
    std::vector<std::string> vars_;
    std::map<Key, FieldValue> terms_;
};

inline int mpoly_cmp(const MPoly& a, const MPoly& b) {
    if (a.vars_ != b.vars_) return a.vars_ < b.vars_ ? -1 : 1;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        int c = value_cmp(ia->second, ib->second);
        if (c != 0) return c;
    }
    if (ia != a.terms_.end()) return 1;
    if (ib != b.terms_.end()) return -1;
    return 0;
}

inline bool mpoly_less(const MPoly& a, const MPoly& b) { return mpoly_cmp(a, b) < 0; }

inline std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    bool base_simple = field_->kind == FieldDesc::Kind::Rationals ||
                       field_->kind == FieldDesc::Kind::Prime;
    std::string out;
    bool first = true;
    // highest lex term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        bool has_var = std::any_of(k.begin(), k.end(), [](int e) { return e > 0; });
        std::string cs = c.str();
        if (has_var && base_simple) {
            if (cs == "1") cs = "";
            else if (cs == "-1") cs = "-";
        }
        if (has_var && !base_simple) cs = "(" + cs + ")";
        if (!first && cs.rfind('-', 0) != 0) out += "+";
        out += cs;
        bool need_star = has_var && !cs.empty() && cs != "-";
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (k[i] == 0) continue;
            if (need_star) out += "*";
            out += vars_[i];
            if (k[i] >= 2) out += "^" + std::to_string(k[i]);
            need_star = true;
        }
        first = false;
    }
    return out;
}

}  // namespace motsym
