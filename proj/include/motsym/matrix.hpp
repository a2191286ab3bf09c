#pragma once

#include <string>
#include <utility>
#include <vector>

#include "motsym/mpoly.hpp"

namespace motsym {

// Reserved indeterminate for characteristic polynomials.
inline const std::string kCharVar = "lambda";

// Dense matrix with entries in an exact field; row-major.
class FMatrix {
  public:
    FMatrix() = default;
    FMatrix(FieldPtr f, int rows, int cols)
        : field_(std::move(f)), rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows * cols), fv_zero(field_)) {}

    static FMatrix identity(const FieldPtr& f, int n) {
        FMatrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = fv_one(f);
        return m;
    }

    const FieldPtr& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    FieldValue& at(int i, int j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
    const FieldValue& at(int i, int j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }

    bool operator==(const FMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    FMatrix operator*(const FMatrix& o) const {
        if (cols_ != o.rows_) throw domain_error("matrix dimension mismatch in product");
        FMatrix r(field_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = fv_add(r.at(i, j), fv_mul(at(i, k), o.at(k, j)));
            }
        return r;
    }

    FMatrix operator+(const FMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix dimension mismatch");
        FMatrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fv_add(r.a_[i], o.a_[i]);
        return r;
    }

    FMatrix operator-(const FMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix dimension mismatch");
        FMatrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fv_sub(r.a_[i], o.a_[i]);
        return r;
    }

    // Reduced row echelon form in place; returns pivot column indices.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int pr = -1;
            for (int i = r; i < rows_; ++i)
                if (!at(i, c).is_zero()) { pr = i; break; }
            if (pr < 0) continue;
            if (pr != r)
                for (int j = 0; j < cols_; ++j) std::swap(at(pr, j), at(r, j));
            FieldValue inv = fv_inv(at(r, c));
            for (int j = c; j < cols_; ++j) at(r, j) = fv_mul(at(r, j), inv);
            for (int i = 0; i < rows_; ++i) {
                if (i == r || at(i, c).is_zero()) continue;
                FieldValue f = at(i, c);
                for (int j = c; j < cols_; ++j) at(i, j) = fv_sub(at(i, j), fv_mul(f, at(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        FMatrix m = *this;
        return static_cast<int>(m.rref().size());
    }

    // Basis of the right kernel, as column vectors.
    std::vector<ValVec> kernel() const {
        FMatrix m = *this;
        std::vector<int> pivots = m.rref();
        std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
        for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
        std::vector<ValVec> basis;
        for (int c = 0; c < cols_; ++c) {
            if (is_pivot[static_cast<size_t>(c)]) continue;
            ValVec v(static_cast<size_t>(cols_), fv_zero(field_));
            v[static_cast<size_t>(c)] = fv_one(field_);
            for (size_t r = 0; r < pivots.size(); ++r)
                v[static_cast<size_t>(pivots[r])] = fv_neg(m.at(static_cast<int>(r), c));
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Solve this * x = b; returns false if inconsistent.
    bool solve(const ValVec& b, ValVec& x) const {
        FMatrix aug(field_, rows_, cols_ + 1);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[static_cast<size_t>(i)];
        }
        std::vector<int> pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return false;
        x.assign(static_cast<size_t>(cols_), fv_zero(field_));
        for (size_t r = 0; r < pivots.size(); ++r)
            x[static_cast<size_t>(pivots[r])] = aug.at(static_cast<int>(r), cols_);
        return true;
    }

    FMatrix inverse() const {
        if (rows_ != cols_) throw domain_error("cannot invert non-square matrix");
        FMatrix aug(field_, rows_, 2 * cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = fv_one(field_);
        }
        std::vector<int> pivots = aug.rref();
        if (static_cast<int>(pivots.size()) != rows_ || pivots.back() != rows_ - 1)
            throw domain_error("matrix is singular");
        FMatrix inv(field_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

    FieldValue det() const {
        if (rows_ != cols_) throw domain_error("determinant of non-square matrix");
        FMatrix m = *this;
        FieldValue d = fv_one(field_);
        for (int c = 0; c < cols_; ++c) {
            int pr = -1;
            for (int i = c; i < rows_; ++i)
                if (!m.at(i, c).is_zero()) { pr = i; break; }
            if (pr < 0) return fv_zero(field_);
            if (pr != c) {
                for (int j = 0; j < cols_; ++j) std::swap(m.at(pr, j), m.at(c, j));
                d = fv_neg(d);
            }
            d = fv_mul(d, m.at(c, c));
            FieldValue inv = fv_inv(m.at(c, c));
            for (int i = c + 1; i < rows_; ++i) {
                if (m.at(i, c).is_zero()) continue;
                FieldValue f = fv_mul(m.at(i, c), inv);
                for (int j = c; j < cols_; ++j)
                    m.at(i, j) = fv_sub(m.at(i, j), fv_mul(f, m.at(c, j)));
            }
        }
        return d;
    }

    ValVec apply(const ValVec& v) const {
        ValVec r(static_cast<size_t>(rows_), fv_zero(field_));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !v[static_cast<size_t>(j)].is_zero())
                    r[static_cast<size_t>(i)] = fv_add(r[static_cast<size_t>(i)],
                                                       fv_mul(at(i, j), v[static_cast<size_t>(j)]));
        return r;
    }

  private:
    FieldPtr field_;
    int rows_ = 0, cols_ = 0;
    std::vector<FieldValue> a_;
};

// Matrix over a polynomial ring k[t] / k[x,y] (or constants when no
// variable occurs). Invertible as an automorphism iff det is a nonzero
// constant of k.
class PolyMatrix {
  public:
    PolyMatrix() = default;
    PolyMatrix(FieldPtr f, int rows, int cols)
        : field_(std::move(f)), rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows * cols), MPoly(field_)) {}

    static PolyMatrix identity(const FieldPtr& f, int n) {
        PolyMatrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = MPoly::constant(f, fv_one(f));
        return m;
    }

    static PolyMatrix from_fmatrix(const FMatrix& m) {
        PolyMatrix r(m.field(), m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r.at(i, j) = MPoly::constant(m.field(), m.at(i, j));
        return r;
    }

    // Companion matrix of a monic univariate polynomial (coefficients may
    // involve other variables): ones on the superdiagonal, last row
    // -c_0 .. -c_{n-1}, so det(lambda*1 - C) = p(lambda).
    static PolyMatrix companion(const FieldPtr& f, const std::vector<MPoly>& monic_coeffs) {
        int n = static_cast<int>(monic_coeffs.size()) - 1;
        if (n < 1 || !monic_coeffs.back().is_one())
            throw input_error("companion matrix requires a monic polynomial of degree >= 1");
        PolyMatrix m(f, n, n);
        for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = MPoly::constant(f, fv_one(f));
        for (int j = 0; j < n; ++j) m.at(n - 1, j) = -monic_coeffs[static_cast<size_t>(j)];
        return m;
    }

    const FieldPtr& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    MPoly& at(int i, int j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
    const MPoly& at(int i, int j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }

    bool operator==(const PolyMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                if (i == j && !at(i, j).is_one()) return false;
                if (i != j && !at(i, j).is_zero()) return false;
            }
        return true;
    }

    bool is_constant() const {
        for (const auto& e : a_)
            if (!e.is_constant()) return false;
        return true;
    }

    std::vector<std::string> variables() const {
        std::vector<std::string> vs;
        for (const auto& e : a_)
            for (const auto& v : e.vars())
                if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
        std::sort(vs.begin(), vs.end());
        return vs;
    }

    PolyMatrix operator*(const PolyMatrix& o) const {
        if (cols_ != o.rows_) throw domain_error("matrix dimension mismatch in product");
        PolyMatrix r(field_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        return r;
    }

    PolyMatrix operator+(const PolyMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix dimension mismatch");
        PolyMatrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] + o.a_[i];
        return r;
    }

    PolyMatrix operator-(const PolyMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix dimension mismatch");
        PolyMatrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] - o.a_[i];
        return r;
    }

    PolyMatrix operator-() const {
        PolyMatrix r = *this;
        for (auto& e : r.a_) e = -e;
        return r;
    }

    PolyMatrix transpose() const {
        PolyMatrix r(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    PolyMatrix substitute(const std::string& var, const MPoly& value) const {
        PolyMatrix r = *this;
        for (auto& e : r.a_) e = e.substitute(var, value);
        return r;
    }

    FMatrix eval(const std::map<std::string, FieldValue>& at_vals) const {
        FMatrix r(field_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).eval(at_vals);
        return r;
    }

    FMatrix constant_matrix() const {
        FMatrix r(field_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).constant_value();
        return r;
    }

    PolyMatrix direct_sum(const PolyMatrix& o) const {
        PolyMatrix r(field_, rows_ + o.rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int i = 0; i < o.rows_; ++i)
            for (int j = 0; j < o.cols_; ++j) r.at(rows_ + i, cols_ + j) = o.at(i, j);
        return r;
    }

    PolyMatrix submatrix(int r0, int c0, int nr, int nc) const {
        PolyMatrix r(field_, nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
        return r;
    }

    // Fraction-free Bareiss determinant; exact over any integral domain
    // of coefficients.
    MPoly det() const {
        if (rows_ != cols_) throw domain_error("determinant of non-square matrix");
        int n = rows_;
        if (n == 0) return MPoly::constant(field_, fv_one(field_));
        std::vector<MPoly> m = a_;
        auto el = [&](int i, int j) -> MPoly& { return m[static_cast<size_t>(i * n + j)]; };
        MPoly prev = MPoly::constant(field_, fv_one(field_));
        bool neg = false;
        for (int k = 0; k < n - 1; ++k) {
            int pr = -1;
            for (int i = k; i < n; ++i)
                if (!el(i, k).is_zero()) { pr = i; break; }
            if (pr < 0) return MPoly(field_);
            if (pr != k) {
                for (int j = 0; j < n; ++j) std::swap(el(pr, j), el(k, j));
                neg = !neg;
            }
            for (int i = k + 1; i < n; ++i) {
                for (int j = k + 1; j < n; ++j)
                    el(i, j) = (el(k, k) * el(i, j) - el(i, k) * el(k, j)).divexact(prev);
                el(i, k) = MPoly(field_);
            }
            prev = el(k, k);
        }
        MPoly d = el(n - 1, n - 1);
        return neg ? -d : d;
    }

    // Adjugate-based inverse; valid as an automorphism of the free module
    // only when det is a nonzero constant.
    PolyMatrix inverse() const {
        MPoly d = det();
        if (d.is_zero()) throw domain_error("matrix is singular");
        if (!d.is_constant())
            throw domain_error("matrix determinant is not a unit of the coefficient field");
        FieldValue dinv = fv_inv(d.constant_value());
        int n = rows_;
        PolyMatrix adj(field_, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                // cofactor of (j, i)
                PolyMatrix minor(field_, n - 1, n - 1);
                for (int r = 0, rr = 0; r < n; ++r) {
                    if (r == j) continue;
                    for (int c = 0, cc = 0; c < n; ++c) {
                        if (c == i) continue;
                        minor.at(rr, cc) = at(r, c);
                        ++cc;
                    }
                    ++rr;
                }
                MPoly cof = minor.det();
                if ((i + j) % 2 == 1) cof = -cof;
                adj.at(i, j) = cof * dinv;
            }
        return adj;
    }

    PolyMatrix conjugate_by(const PolyMatrix& g) const {  // g * this * g^{-1}
        return g * (*this) * g.inverse();
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            if (i) s += ",";
            s += "[";
            for (int j = 0; j < cols_; ++j) {
                if (j) s += ",";
                s += at(i, j).str();
            }
            s += "]";
        }
        return s + "]";
    }

    friend int pmatrix_cmp(const PolyMatrix& a, const PolyMatrix& b);

  private:
    FieldPtr field_;
    int rows_ = 0, cols_ = 0;
    std::vector<MPoly> a_;
};

inline int pmatrix_cmp(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_ ? -1 : 1;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_ ? -1 : 1;
    for (size_t i = 0; i < a.a_.size(); ++i) {
        int c = mpoly_cmp(a.a_[i], b.a_[i]);
        if (c != 0) return c;
    }
    return 0;
}

// det(lambda*1 - m) as a polynomial in kCharVar (other variables of the
// entries stay as coefficients). Monic of degree n.
inline MPoly char_poly_m(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw domain_error("characteristic polynomial of non-square matrix");
    for (const auto& v : m.variables())
        if (v == kCharVar) throw domain_error("matrix entries may not use the reserved variable");
    PolyMatrix lam = PolyMatrix::identity(m.field(), m.rows());
    MPoly x = MPoly::variable(m.field(), kCharVar);
    for (int i = 0; i < m.rows(); ++i) lam.at(i, i) = x;
    return (lam - m).det();
}

// Characteristic polynomial of a constant matrix, as a univariate Poly.
inline Poly char_poly(const FMatrix& m) {
    return char_poly_m(PolyMatrix::from_fmatrix(m)).to_poly(kCharVar);
}

// Matrix of multiplication by v on L viewed as k-vector space in the
// tower-flattened power basis; det equals the field norm N_{L/k}(v).
inline FMatrix regular_representation(const FieldValue& v, const FieldPtr& k) {
    const FieldPtr& L = v.field();
    if (!field_in_tower(L, k))
        throw domain_error("value does not lie in an extension of the requested base field");
    int n = tower_degree(L, k);
    FMatrix m(k, n, n);
    for (int j = 0; j < n; ++j) {
        ValVec e(static_cast<size_t>(n), fv_zero(k));
        e[static_cast<size_t>(j)] = fv_one(k);
        FieldValue bj = unflatten_coords(L, k, e);
        ValVec col = flatten_coords(fv_mul(v, bj), k);
        for (int i = 0; i < n; ++i) m.at(i, j) = col[static_cast<size_t>(i)];
    }
    return m;
}

// Field norm N_{L/k} via the regular representation.
inline FieldValue field_norm(const FieldValue& v, const FieldPtr& k) {
    return regular_representation(v, k).det();
}

inline FieldValue field_trace(const FieldValue& v, const FieldPtr& k) {
    FMatrix m = regular_representation(v, k);
    FieldValue t = fv_zero(k);
    for (int i = 0; i < m.rows(); ++i) t = fv_add(t, m.at(i, i));
    return t;
}

// Minimal polynomial of v over k (monic, via linear algebra on powers).
inline Poly min_poly(const FieldValue& v, const FieldPtr& k, const std::string& var = "x") {
    const FieldPtr& L = v.field();
    int n = tower_degree(L, k);
    std::vector<ValVec> powers;
    FieldValue p = fv_one(L);
    for (int m = 0;; ++m) {
        powers.push_back(flatten_coords(p, k));
        // solve: v^m in span of lower powers?
        FMatrix mat(k, n, m);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) mat.at(i, j) = powers[static_cast<size_t>(j)][static_cast<size_t>(i)];
        ValVec x;
        if (m > 0 && mat.solve(powers.back(), x)) {
            ValVec coeffs;
            for (int j = 0; j < m; ++j) coeffs.push_back(fv_neg(x[static_cast<size_t>(j)]));
            coeffs.push_back(fv_one(k));
            return Poly(k, var, std::move(coeffs));
        }
        p = fv_mul(p, v);
    }
}

}  // namespace motsym
