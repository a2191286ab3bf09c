#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "motsym/field.hpp"

namespace motsym {

// Dense univariate polynomial over an exact field, one named variable.
// Invariant: no trailing zero coefficients; degree == coeffs.size()-1,
// zero polynomial has empty coefficient list (degree -1).
class Poly {
  public:
    Poly() = default;
    Poly(FieldPtr field, std::string var) : field_(std::move(field)), var_(std::move(var)) {}
    Poly(FieldPtr field, std::string var, ValVec coeffs)
        : field_(std::move(field)), var_(std::move(var)), c_(std::move(coeffs)) {
        vecpoly::trim(c_);
    }

    static Poly from_ints(const FieldPtr& f, const std::string& var, const std::vector<long>& cs) {
        ValVec v;
        v.reserve(cs.size());
        for (long x : cs) v.push_back(fv_from_int(f, Int(x)));
        return Poly(f, var, std::move(v));
    }

    static Poly variable(const FieldPtr& f, const std::string& var) {
        return Poly(f, var, {fv_zero(f), fv_one(f)});
    }

    static Poly constant(const FieldPtr& f, const std::string& var, const FieldValue& c) {
        return Poly(f, var, {c});
    }

    const FieldPtr& field() const { return field_; }
    const std::string& var() const { return var_; }
    const ValVec& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    FieldValue coeff(size_t i) const { return i < c_.size() ? c_[i] : fv_zero(field_); }
    const FieldValue& lead() const { return c_.back(); }
    FieldValue constant_term() const { return coeff(0); }

    Poly operator+(const Poly& o) const { return wrap(vecpoly::add(field_, c_, o.c_)); }
    Poly operator-(const Poly& o) const { return wrap(vecpoly::sub(field_, c_, o.c_)); }
    Poly operator-() const { return wrap(vecpoly::neg(c_)); }
    Poly operator*(const Poly& o) const { return wrap(vecpoly::mul(field_, c_, o.c_)); }
    Poly operator*(const FieldValue& s) const { return wrap(vecpoly::scale(c_, s)); }
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::pair<Poly, Poly> divrem(const Poly& o) const {
        auto [q, r] = vecpoly::divrem(field_, c_, o.c_);
        return {wrap(std::move(q)), wrap(std::move(r))};
    }
    Poly operator/(const Poly& o) const {
        auto [q, r] = divrem(o);
        if (!r.is_zero()) throw domain_error("inexact polynomial division");
        return q;
    }
    Poly operator%(const Poly& o) const { return divrem(o).second; }

    Poly monic() const { return wrap(vecpoly::monic(c_)); }

    Poly derivative() const {
        if (c_.size() <= 1) return wrap({});
        ValVec d;
        d.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d.push_back(fv_mul(c_[i], fv_from_int(field_, Int(i))));
        return wrap(std::move(d));
    }

    FieldValue eval(const FieldValue& x) const { return vecpoly::eval(field_, c_, x); }

    // Evaluate with coefficients embedded into a larger field first.
    FieldValue eval_in(const FieldPtr& big, const FieldValue& x) const {
        FieldValue r = fv_zero(big);
        for (size_t i = c_.size(); i-- > 0;) r = fv_add(fv_mul(r, x), fv_embed(big, c_[i]));
        return r;
    }

    Poly pow(unsigned long e) const {
        Poly r = constant(field_, var_, fv_one(field_));
        Poly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    Poly powmod(Int e, const Poly& mod) const {
        Poly r = constant(field_, var_, fv_one(field_));
        Poly b = *this % mod;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = (r * b) % mod;
            e >>= 1;
            if (e > 0) b = (b * b) % mod;
        }
        return r;
    }

    std::string str() const;

  private:
    Poly wrap(ValVec v) const { return Poly(field_, var_, std::move(v)); }

    FieldPtr field_;
    std::string var_;
    ValVec c_;
};

inline Poly gcd(const Poly& a, const Poly& b) {
    return Poly(a.field(), a.var(), vecpoly::gcd(a.field(), a.coeffs(), b.coeffs()));
}

inline int poly_cmp(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (size_t i = a.coeffs().size(); i-- > 0;) {
        int c = value_cmp(a.coeffs()[i], b.coeffs()[i]);
        if (c != 0) return c;
    }
    return 0;
}

inline bool poly_less(const Poly& a, const Poly& b) { return poly_cmp(a, b) < 0; }

inline std::string Poly::str() const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    bool base_simple = field_->kind == FieldDesc::Kind::Rationals ||
                       field_->kind == FieldDesc::Kind::Prime;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        std::string cs = c_[i].str();
        if (i >= 1 && base_simple) {
            if (cs == "1") cs = "";
            else if (cs == "-1") cs = "-";
        }
        if (!base_simple && i >= 1) cs = "(" + cs + ")";
        if (!first && cs.rfind('-', 0) != 0) out += "+";
        out += cs;
        if (i >= 1) {
            if (!cs.empty() && cs != "-") out += "*";
            out += var_;
            if (i >= 2) out += "^" + std::to_string(i);
        }
        first = false;
    }
    return out;
}

}  // namespace motsym
