#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "motsym/k0.hpp"
#include "motsym/symbols.hpp"

namespace motsym {

// One rewriting step on a chain. Terms are addressed by their position
// in the chain's canonical order at the time the move applies; every
// accepted run logs the chain after each step, so scripts are auditable.
struct Move {
    enum class Kind {
        WedgeDrop,        // remove term with an identity coordinate
        WedgeAdd,         // append a term with an identity coordinate
        Conjugate,        // simultaneous conjugation of one term
        BlockSplit,       // block upper-triangular term -> diagonal blocks
        BlockJoin,        // inverse: named terms -> supplied triangular composite
        Merge,            // direct sum of two equal-coefficient terms (or a doubled term)
        AddBoundary,      // add the boundary of a declared witness
        SubstituteFaces,  // t -> 1-t with negated coefficient (d=1 only)
    };

    Kind kind;
    int term = -1;                  // WedgeDrop, Conjugate, BlockSplit, SubstituteFaces
    std::vector<int> terms;         // BlockJoin (ordered), Merge
    std::vector<PolyMatrix> mats;   // Conjugate: {g}; BlockJoin: composite; WedgeAdd: tuple
    long coef = 1;                  // WedgeAdd
    std::vector<int> sizes;         // BlockSplit partition
    Chain witness;                  // AddBoundary (context d+1)
    std::string side;               // AddBoundary: Z1|Z2|Z3 (d=0) or D2 (d=1)

    std::string kind_name() const {
        switch (kind) {
            case Kind::WedgeDrop: return "wedgedrop";
            case Kind::WedgeAdd: return "wedgeadd";
            case Kind::Conjugate: return "conjugate";
            case Kind::BlockSplit: return "blocksplit";
            case Kind::BlockJoin: return "blockjoin";
            case Kind::Merge: return "merge";
            case Kind::AddBoundary: return "addboundary";
            case Kind::SubstituteFaces: return "subfaces";
        }
        return "?";
    }
};

struct CertificateScript {
    std::string name;
    SymbolContext context;  // context of start/goal chains (d = 0 or 1)
    Chain start;
    Chain goal;
    std::vector<Move> moves;
};

struct Verdict {
    bool accepted = false;
    int failed_move = -1;       // index of the violating move, -1 otherwise
    std::string message;        // violated condition or final mismatch
    std::vector<std::string> log;
    bool oracle_ok = false;     // the k0-class cross-check of the whole script
};

// Exact entrywise equality of a product of matrices against a target.
inline bool check_identity(const std::vector<PolyMatrix>& product, const PolyMatrix& rhs) {
    if (product.empty()) throw input_error("empty product");
    PolyMatrix acc = product[0];
    for (size_t i = 1; i < product.size(); ++i) acc = acc * product[i];
    return acc == rhs;
}

namespace detail {

inline const SymbolTuple& nth_term(const Chain& c, int idx, long* coef = nullptr) {
    if (idx < 0 || idx >= static_cast<int>(c.terms().size()))
        throw input_error("term index " + std::to_string(idx) + " out of range (chain has " +
                          std::to_string(c.terms().size()) + " terms)");
    auto it = c.terms().begin();
    std::advance(it, idx);
    if (coef) *coef = it->second;
    return it->first;
}

// side condition of Definition Z for d=1 witnesses of d=0 statements
inline std::optional<std::string> z_violation(const SymbolTuple& t, const std::string& side) {
    if (t.l() < 2) return "Z membership requires weight l >= 2";
    if (side == "Z1") {
        for (const auto& m : t.mats())
            if (m.is_constant()) return std::nullopt;
        return "Z1: no coordinate is constant in t";
    }
    if (side == "Z2") {
        for (int i = 0; i < t.l(); ++i)
            for (int j = i + 1; j < t.l(); ++j)
                if (t.mat(i) == t.mat(j)) return std::nullopt;
        return "Z2: no two coordinates are equal";
    }
    if (side == "Z3") {
        for (int i = 0; i < t.l(); ++i)
            for (int j = 0; j < t.l(); ++j) {
                if (i == j) continue;
                PolyMatrix one_minus = PolyMatrix::identity(t.field(), t.size()) - t.mat(j);
                if (t.mat(i) == one_minus) return std::nullopt;
            }
        return "Z3: no coordinate equals 1 - (another coordinate)";
    }
    return "unknown side condition tag '" + side + "'";
}

// k0 class of a list of signed tuples (d=0) or of their boundaries (d=1).
inline K0Class class_of(const SymbolContext& ctx, const std::vector<std::pair<SymbolTuple, long>>& ts,
                        std::uint64_t seed) {
    Chain c(ctx);
    for (const auto& [t, coef] : ts) c.add(t, coef);
    if (ctx.d == 0) return k0_class(c, seed);
    return k0_class(boundary(c), seed);
}

}  // namespace detail

// Apply one move to a chain; returns the removed and added signed terms
// (for the soundness delta) or throws input_error on violated conditions.
inline void apply_move(Chain& chain, const Move& mv,
                       std::vector<std::pair<SymbolTuple, long>>& removed,
                       std::vector<std::pair<SymbolTuple, long>>& added) {
    const SymbolContext& ctx = chain.context();
    auto commit = [&](const std::vector<std::pair<SymbolTuple, long>>& rem,
                      const std::vector<std::pair<SymbolTuple, long>>& add) {
        for (const auto& [t, c] : rem) chain.add(t, -c);
        for (const auto& [t, c] : add) chain.add(t, c);
        removed = rem;
        added = add;
    };

    switch (mv.kind) {
        case Move::Kind::WedgeDrop: {
            long c;
            const SymbolTuple& t = detail::nth_term(chain, mv.term, &c);
            if (!t.has_identity_coordinate())
                throw input_error("wedgedrop: no coordinate equals the identity matrix");
            commit({{t, c}}, {});
            return;
        }
        case Move::Kind::WedgeAdd: {
            SymbolTuple t = SymbolTuple::make(ctx.field, ctx.d, ctx.l, mv.mats);
            if (!t.has_identity_coordinate())
                throw input_error("wedgeadd: no coordinate equals the identity matrix");
            commit({}, {{t, mv.coef}});
            return;
        }
        case Move::Kind::Conjugate: {
            long c;
            const SymbolTuple& t = detail::nth_term(chain, mv.term, &c);
            if (mv.mats.size() != 1) throw input_error("conjugate: exactly one conjugator expected");
            const PolyMatrix& g = mv.mats[0];
            MPoly det = g.det();
            if (det.is_zero() || !det.is_constant())
                throw input_error("conjugate: conjugator is not invertible over the polynomial ring");
            PolyMatrix ginv = g.inverse();
            std::vector<PolyMatrix> ms;
            for (const auto& m : t.mats()) ms.push_back(g * m * ginv);
            SymbolTuple nt = SymbolTuple::make(ctx.field, ctx.d, ctx.l, std::move(ms));
            commit({{t, c}}, {{nt, c}});
            return;
        }
        case Move::Kind::BlockSplit: {
            long c;
            const SymbolTuple& t = detail::nth_term(chain, mv.term, &c);
            int total = 0;
            for (int s : mv.sizes) {
                if (s <= 0) throw input_error("blocksplit: sizes must be positive");
                total += s;
            }
            if (total != t.size()) throw input_error("blocksplit: sizes do not sum to the matrix size");
            // verify block upper-triangularity of every coordinate
            std::vector<int> offs{0};
            for (int s : mv.sizes) offs.push_back(offs.back() + s);
            for (int mi = 0; mi < t.l(); ++mi) {
                const PolyMatrix& m = t.mat(mi);
                for (size_t bi = 0; bi < mv.sizes.size(); ++bi)
                    for (size_t bj = 0; bj < bi; ++bj)
                        for (int r = offs[bi]; r < offs[bi + 1]; ++r)
                            for (int cc = offs[bj]; cc < offs[bj + 1]; ++cc)
                                if (!m.at(r, cc).is_zero())
                                    throw input_error(
                                        "blocksplit: coordinate " + std::to_string(mi) +
                                        " is not block upper-triangular for the partition");
            }
            std::vector<std::pair<SymbolTuple, long>> add;
            for (size_t b = 0; b < mv.sizes.size(); ++b) {
                std::vector<PolyMatrix> ms;
                for (const auto& m : t.mats())
                    ms.push_back(m.submatrix(offs[b], offs[b], mv.sizes[b], mv.sizes[b]));
                add.emplace_back(SymbolTuple::make(ctx.field, ctx.d, ctx.l, std::move(ms)), c);
            }
            commit({{t, c}}, add);
            return;
        }
        case Move::Kind::BlockJoin: {
            if (mv.terms.empty()) throw input_error("blockjoin: no terms named");
            std::vector<std::pair<SymbolTuple, long>> rem;
            long c0 = 0;
            for (size_t i = 0; i < mv.terms.size(); ++i) {
                long c;
                const SymbolTuple& t = detail::nth_term(chain, mv.terms[i], &c);
                if (i == 0) c0 = c;
                else if (c != c0) throw input_error("blockjoin: terms have different coefficients");
                rem.emplace_back(t, c0);
            }
            SymbolTuple comp = SymbolTuple::make(ctx.field, ctx.d, ctx.l, mv.mats);
            // the named terms must be the diagonal blocks of the composite
            std::vector<int> sizes;
            for (const auto& [t, c] : rem) sizes.push_back(t.size());
            int total = 0;
            for (int s : sizes) total += s;
            if (total != comp.size())
                throw input_error("blockjoin: block sizes do not sum to the composite size");
            std::vector<int> offs{0};
            for (int s : sizes) offs.push_back(offs.back() + s);
            for (int mi = 0; mi < comp.l(); ++mi) {
                const PolyMatrix& m = comp.mat(mi);
                for (size_t bi = 0; bi < sizes.size(); ++bi) {
                    for (size_t bj = 0; bj < bi; ++bj)
                        for (int r = offs[bi]; r < offs[bi + 1]; ++r)
                            for (int cc = offs[bj]; cc < offs[bj + 1]; ++cc)
                                if (!m.at(r, cc).is_zero())
                                    throw input_error("blockjoin: composite is not block upper-triangular");
                    PolyMatrix blk = m.submatrix(offs[bi], offs[bi], sizes[bi], sizes[bi]);
                    if (blk != rem[bi].first.mat(mi))
                        throw input_error("blockjoin: diagonal block " + std::to_string(bi) +
                                          " of coordinate " + std::to_string(mi) +
                                          " does not match the named term");
                }
            }
            commit(rem, {{comp, c0}});
            return;
        }
        case Move::Kind::Merge: {
            if (mv.terms.size() != 2) throw input_error("merge: exactly two term indices expected");
            if (mv.terms[0] == mv.terms[1]) {
                long c;
                const SymbolTuple& t = detail::nth_term(chain, mv.terms[0], &c);
                if (c == 0 || c == 1 || c == -1)
                    throw input_error("merge: doubling a term needs |coefficient| >= 2");
                long s = c > 0 ? 1 : -1;
                commit({{t, 2 * s}}, {{direct_sum(t, t), s}});
                return;
            }
            long c1, c2;
            const SymbolTuple& t1 = detail::nth_term(chain, mv.terms[0], &c1);
            const SymbolTuple& t2 = detail::nth_term(chain, mv.terms[1], &c2);
            if (c1 != c2) throw input_error("merge: terms have different coefficients");
            commit({{t1, c1}, {t2, c1}}, {{direct_sum(t1, t2), c1}});
            return;
        }
        case Move::Kind::AddBoundary: {
            if (mv.witness.context().field && !(field_equal(mv.witness.context().field, ctx.field)))
                throw input_error("addboundary: witness field mismatch");
            if (mv.witness.context().l != ctx.l)
                throw input_error("addboundary: witness weight mismatch");
            if (mv.witness.context().d != ctx.d + 1)
                throw input_error("addboundary: witness must live one simplicial degree up");
            Chain faces(ctx);
            if (ctx.d == 0) {
                if (mv.side != "Z1" && mv.side != "Z2" && mv.side != "Z3")
                    throw input_error("addboundary: d=1 witness needs a Z side condition tag");
                for (const auto& [t, c] : mv.witness.terms())
                    if (auto viol = detail::z_violation(t, mv.side))
                        throw input_error("addboundary: witness term violates " + mv.side + ": " + *viol);
                faces = boundary(mv.witness);
            } else if (ctx.d == 1) {
                if (mv.side != "D2")
                    throw input_error("addboundary: d=2 witness carries the side tag D2");
                faces = boundary2(mv.witness);
            } else {
                throw input_error("addboundary: unsupported chain degree");
            }
            std::vector<std::pair<SymbolTuple, long>> add;
            for (const auto& [t, c] : faces.terms()) add.emplace_back(t, c);
            commit({}, add);
            return;
        }
        case Move::Kind::SubstituteFaces: {
            if (ctx.d != 1) throw input_error("subfaces: only d=1 chains");
            long c;
            const SymbolTuple& t = detail::nth_term(chain, mv.term, &c);
            MPoly omt = MPoly::constant(ctx.field, fv_one(ctx.field)) - MPoly::variable(ctx.field, "t");
            SymbolTuple nt = t.substitute("t", omt, 1);
            commit({{t, c}}, {{nt, -c}});
            return;
        }
    }
    throw input_error("unknown move kind");
}

// Run a certificate: every move's side conditions are verified, the
// k0 class of the (d=0 chain | d=1 boundary) is asserted unchanged at
// every class-preserving step, and the final chain must equal the goal
// syntactically. The verdict carries a step log and the end-to-end
// oracle cross-check.
inline Verdict run_certificate(const CertificateScript& script, std::uint64_t seed = 0x5eedf00d,
                               bool want_log = true) {
    Verdict v;
    Chain cur = script.start;
    if (script.goal.context() != script.context || cur.context() != script.context) {
        v.message = "start/goal context mismatch";
        v.failed_move = -1;
        return v;
    }
    if (want_log) v.log.push_back("start: " + cur.str());

    std::vector<Chain> witnesses;
    for (size_t i = 0; i < script.moves.size(); ++i) {
        const Move& mv = script.moves[i];
        std::vector<std::pair<SymbolTuple, long>> removed, added;
        try {
            apply_move(cur, mv, removed, added);
        } catch (const input_error& e) {
            v.failed_move = static_cast<int>(i);
            v.message = std::string("move ") + std::to_string(i) + " (" + mv.kind_name() +
                        "): " + e.what();
            return v;
        }

        // soundness: the local change preserves the decidable class
        try {
            if (mv.kind == Move::Kind::AddBoundary) {
                witnesses.push_back(mv.witness);
                if (script.context.d == 1) {
                    K0Class delta = detail::class_of(script.context, added, seed);
                    if (!delta.is_empty())
                        throw domain_error("boundary faces have nonzero d=0 class");
                }
            } else {
                K0Class before = detail::class_of(script.context, removed, seed);
                K0Class after = detail::class_of(script.context, added, seed);
                if (!(before == after))
                    throw domain_error("move changed the d=0 class: " + before.str() + " vs " +
                                       after.str());
            }
        } catch (const error& e) {
            v.failed_move = static_cast<int>(i);
            v.message = std::string("soundness assertion at move ") + std::to_string(i) + " (" +
                        mv.kind_name() + "): " + e.what();
            return v;
        }

        if (want_log)
            v.log.push_back("after " + std::to_string(i) + " " + mv.kind_name() + ": " + cur.str());
    }

    if (cur != script.goal) {
        v.failed_move = static_cast<int>(script.moves.size());
        v.message = "final chain does not equal the goal: " + cur.str() + " vs " + script.goal.str();
        return v;
    }

    // end-to-end oracle cross-check against the decidable quotient
    try {
        if (script.context.d == 0) {
            K0Class lhs = k0_class(script.start, seed);
            for (const auto& w : witnesses) lhs = lhs + k0_class(boundary(w), seed);
            K0Class rhs = k0_class(script.goal, seed);
            v.oracle_ok = lhs == rhs;
        } else {
            v.oracle_ok = k0_class(boundary(script.start), seed) == k0_class(boundary(script.goal), seed);
        }
    } catch (const error& e) {
        v.oracle_ok = false;
        v.message = std::string("oracle cross-check failed to evaluate: ") + e.what();
        return v;
    }
    if (!v.oracle_ok) {
        v.message = "oracle cross-check failed: start + boundaries != goal in the canonical class";
        return v;
    }

    v.accepted = true;
    v.message = "accepted";
    return v;
}

// The relation established by an accepted d=0 script, pushed through the
// oracle: k0_class(start - goal - sum of witness boundaries); empty for
// every sound certificate.
inline K0Class certificate_residual_class(const CertificateScript& script,
                                          std::uint64_t seed = 0x5eedf00d) {
    if (script.context.d != 0) throw domain_error("residual class is defined for d=0 scripts");
    K0Class cls = k0_class(script.start, seed) - k0_class(script.goal, seed);
    for (const auto& mv : script.moves)
        if (mv.kind == Move::Kind::AddBoundary) cls = cls + k0_class(boundary(mv.witness), seed);
    return cls;
}

}  // namespace motsym
