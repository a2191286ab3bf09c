#pragma once

// Shared generators for the unit-test suites. Kept independent of the
// library's own instance generators so tests remain an outside check.

#include "motsym/factor.hpp"
#include "motsym/matrix.hpp"
#include "motsym/symbols.hpp"

namespace tst {

using namespace motsym;

inline FieldPtr Q() { return FieldDesc::rationals(); }
inline FieldPtr Fp(long p) { return FieldDesc::prime(Int(p)); }

inline FieldPtr Fq(long p, std::vector<long> modulus, const std::string& var = "x") {
    FieldPtr base = Fp(p);
    ValVec m;
    for (long c : modulus) m.push_back(fv_from_int(base, Int(c)));
    return FieldDesc::extension(base, std::move(m), var);
}

inline FieldValue rnd_value(const FieldPtr& f, Rng& rng) {
    switch (f->kind) {
        case FieldDesc::Kind::Rationals:
            return FieldValue::rational(f, Rat(Int(rng.range(-9, 9)), Int(rng.range(1, 9))));
        case FieldDesc::Kind::Prime:
            return FieldValue::prime_residue(f, Int(rng.range(0, 1000)));
        case FieldDesc::Kind::Extension: {
            ValVec cs;
            for (int i = 0; i < f->ext_degree(); ++i) cs.push_back(rnd_value(f->base, rng));
            return FieldValue::extension(f, std::move(cs));
        }
        default:
            throw domain_error("rnd_value: unsupported field kind");
    }
}

inline FieldValue rnd_nonzero(const FieldPtr& f, Rng& rng) {
    for (;;) {
        FieldValue v = rnd_value(f, rng);
        if (!v.is_zero()) return v;
    }
}

inline Poly rnd_poly(const FieldPtr& f, const std::string& var, int deg, Rng& rng) {
    ValVec cs;
    for (int i = 0; i < deg; ++i) cs.push_back(rnd_value(f, rng));
    cs.push_back(rnd_nonzero(f, rng));
    return Poly(f, var, std::move(cs));
}

inline FMatrix rnd_fmatrix(const FieldPtr& f, int n, Rng& rng) {
    FMatrix m(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = rnd_value(f, rng);
    return m;
}

inline FMatrix rnd_invertible(const FieldPtr& f, int n, Rng& rng) {
    for (;;) {
        FMatrix m = rnd_fmatrix(f, n, rng);
        if (!m.det().is_zero()) return m;
    }
}

// Constant square matrix from integer entries.
inline PolyMatrix imat(const FieldPtr& f, const std::vector<std::vector<long>>& rows) {
    int n = static_cast<int>(rows.size());
    PolyMatrix m(f, n, static_cast<int>(rows[0].size()));
    for (int i = 0; i < n; ++i)
        for (size_t j = 0; j < rows[static_cast<size_t>(i)].size(); ++j)
            m.at(i, static_cast<int>(j)) = MPoly::from_int(f, rows[static_cast<size_t>(i)][j]);
    return m;
}

// Diagonal tuple of 1x1 integer scalars at d=0.
inline SymbolTuple scalars(const FieldPtr& f, const std::vector<long>& vals) {
    ValVec v;
    for (long x : vals) v.push_back(fv_from_int(f, Int(x)));
    return SymbolTuple::from_scalars(f, v);
}

// 1-variable linear polynomial a + b*var.
inline MPoly lin(const FieldPtr& f, const std::string& var, long a, long b) {
    return MPoly::from_int(f, a) + MPoly::variable(f, var) * MPoly::from_int(f, b);
}

// Cofactor-expansion determinant: the independent oracle for Bareiss.
inline MPoly det_cofactor(const PolyMatrix& m) {
    int n = m.rows();
    if (n == 0) return MPoly::constant(m.field(), fv_one(m.field()));
    if (n == 1) return m.at(0, 0);
    MPoly d(m.field());
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        PolyMatrix minor(m.field(), n - 1, n - 1);
        for (int r = 1; r < n; ++r)
            for (int c = 0, cc = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        MPoly term = m.at(0, j) * det_cofactor(minor);
        d = (j % 2 == 0) ? d + term : d - term;
    }
    return d;
}

}  // namespace tst
