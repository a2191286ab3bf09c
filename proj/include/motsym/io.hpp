#pragma once

// Parsers and serializers for the external text formats: field
// descriptors, polynomial entries, matrices, symbol tuples, chains,
// Milnor elements, and certificate scripts. All formats are plain text
// and auditable; serialization round-trips through the parsers.

#include <cctype>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "motsym/certificate.hpp"
#include "motsym/milnor.hpp"
#include "motsym/symbols.hpp"

namespace motsym {
namespace io {

// ---------------------------------------------------------------------------
// cursor

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    explicit Cursor(const std::string& str) : s(str) {}

    void skip() {
        while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) != 0)) ++pos;
    }
    bool eof() {
        skip();
        return pos >= s.size();
    }
    char peek() {
        skip();
        if (pos >= s.size()) throw input_error("unexpected end of input");
        return s[pos];
    }
    char take() {
        char c = peek();
        ++pos;
        return c;
    }
    bool accept(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw input_error(std::string("expected '") + c + "' at offset " + std::to_string(pos) +
                              " near ..." + s.substr(pos, 24));
    }
    std::string ident() {
        skip();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos) throw input_error("expected identifier at offset " + std::to_string(start));
        return s.substr(start, pos - start);
    }
    Int integer() {
        skip();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw input_error("expected integer at offset " + std::to_string(start));
        return Int(s.substr(start, pos - start));
    }
    std::string quoted() {
        expect('"');
        size_t start = pos;
        while (pos < s.size() && s[pos] != '"') ++pos;
        if (pos >= s.size()) throw input_error("unterminated string");
        std::string out = s.substr(start, pos - start);
        ++pos;
        return out;
    }
    // a key that may or may not be quoted
    std::string key() {
        skip();
        if (pos < s.size() && s[pos] == '"') return quoted();
        return ident();
    }
};

// ---------------------------------------------------------------------------
// expression AST for polynomial / rational-function entries

struct Expr {
    enum class Op { Lit, Var, Add, Sub, Mul, Div, Pow, Neg };
    Op op = Op::Lit;
    Int lit;
    std::string var;
    int exp = 0;
    std::unique_ptr<Expr> a, b;
};

inline std::unique_ptr<Expr> parse_expr(Cursor& c);

inline std::unique_ptr<Expr> parse_base(Cursor& c) {
    c.skip();
    char ch = c.peek();
    auto e = std::make_unique<Expr>();
    if (ch == '(') {
        c.take();
        e = parse_expr(c);
        c.expect(')');
        return e;
    }
    if (ch == '-') {
        c.take();
        e->op = Expr::Op::Neg;
        e->a = parse_base(c);
        return e;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        e->op = Expr::Op::Lit;
        e->lit = c.integer();
        return e;
    }
    e->op = Expr::Op::Var;
    e->var = c.ident();
    return e;
}

inline std::unique_ptr<Expr> parse_factor(Cursor& c) {
    auto e = parse_base(c);
    if (c.accept('^')) {
        auto p = std::make_unique<Expr>();
        p->op = Expr::Op::Pow;
        p->exp = static_cast<int>(c.integer().get_si());
        if (p->exp < 0) throw input_error("negative exponents are not supported");
        p->a = std::move(e);
        return p;
    }
    return e;
}

inline std::unique_ptr<Expr> parse_term(Cursor& c) {
    auto e = parse_factor(c);
    for (;;) {
        if (c.accept('*')) {
            auto n = std::make_unique<Expr>();
            n->op = Expr::Op::Mul;
            n->a = std::move(e);
            n->b = parse_factor(c);
            e = std::move(n);
        } else if (c.accept('/')) {
            auto n = std::make_unique<Expr>();
            n->op = Expr::Op::Div;
            n->a = std::move(e);
            n->b = parse_factor(c);
            e = std::move(n);
        } else {
            return e;
        }
    }
}

inline std::unique_ptr<Expr> parse_expr(Cursor& c) {
    auto e = parse_term(c);
    for (;;) {
        c.skip();
        if (c.pos < c.s.size() && (c.s[c.pos] == '+' || c.s[c.pos] == '-')) {
            char op = c.take();
            auto n = std::make_unique<Expr>();
            n->op = op == '+' ? Expr::Op::Add : Expr::Op::Sub;
            n->a = std::move(e);
            n->b = parse_term(c);
            e = std::move(n);
        } else {
            return e;
        }
    }
}

// resolve an identifier: a simplicial variable, or a generator of the
// coefficient field tower (as a constant)
inline MPoly resolve_var(const FieldPtr& k, const std::vector<std::string>& vars,
                         const std::string& name) {
    for (const auto& v : vars)
        if (v == name) return MPoly::variable(k, name);
    for (FieldPtr cur = k; cur && cur->kind == FieldDesc::Kind::Extension; cur = cur->base) {
        if (cur->var == name) {
            ValVec gen(static_cast<size_t>(cur->ext_degree()), fv_zero(cur->base));
            if (gen.size() > 1) gen[1] = fv_one(cur->base);
            else gen[0] = fv_neg(cur->modulus[0]);
            return MPoly::constant(k, fv_embed(k, FieldValue::extension(cur, std::move(gen))));
        }
    }
    throw input_error("unknown variable '" + name + "'");
}

inline MPoly eval_mpoly(const Expr& e, const FieldPtr& k, const std::vector<std::string>& vars) {
    switch (e.op) {
        case Expr::Op::Lit: return MPoly::constant(k, fv_from_int(k, e.lit));
        case Expr::Op::Var: return resolve_var(k, vars, e.var);
        case Expr::Op::Add: return eval_mpoly(*e.a, k, vars) + eval_mpoly(*e.b, k, vars);
        case Expr::Op::Sub: return eval_mpoly(*e.a, k, vars) - eval_mpoly(*e.b, k, vars);
        case Expr::Op::Mul: return eval_mpoly(*e.a, k, vars) * eval_mpoly(*e.b, k, vars);
        case Expr::Op::Div: {
            MPoly d = eval_mpoly(*e.b, k, vars);
            if (!d.is_constant()) throw input_error("division by a non-constant polynomial entry");
            return eval_mpoly(*e.a, k, vars) * fv_inv(d.constant_value());
        }
        case Expr::Op::Pow: return eval_mpoly(*e.a, k, vars).pow(e.exp);
        case Expr::Op::Neg: return -eval_mpoly(*e.a, k, vars);
    }
    throw input_error("bad expression");
}

// evaluate in a rational function field (or any field): full division
inline FieldValue eval_value(const Expr& e, const FieldPtr& f) {
    switch (e.op) {
        case Expr::Op::Lit: return fv_from_int(f, e.lit);
        case Expr::Op::Var: {
            if (f->kind == FieldDesc::Kind::RatFunc && f->var == e.var) {
                ValVec t = {fv_zero(f->base), fv_one(f->base)};
                return FieldValue::ratfunc(f, std::move(t), {fv_one(f->base)});
            }
            FieldPtr base = f->kind == FieldDesc::Kind::RatFunc ? f->base : f;
            MPoly m = resolve_var(base, {}, e.var);
            return fv_embed(f, m.constant_value());
        }
        case Expr::Op::Add: return fv_add(eval_value(*e.a, f), eval_value(*e.b, f));
        case Expr::Op::Sub: return fv_sub(eval_value(*e.a, f), eval_value(*e.b, f));
        case Expr::Op::Mul: return fv_mul(eval_value(*e.a, f), eval_value(*e.b, f));
        case Expr::Op::Div: return fv_div(eval_value(*e.a, f), eval_value(*e.b, f));
        case Expr::Op::Pow: return fv_pow(eval_value(*e.a, f), Int(e.exp));
        case Expr::Op::Neg: return fv_neg(eval_value(*e.a, f));
    }
    throw input_error("bad expression");
}

// ---------------------------------------------------------------------------
// field descriptors

inline FieldPtr parse_field(Cursor& c) {
    std::string head = c.ident();
    FieldPtr f;
    if (head == "Q") {
        f = FieldDesc::rationals();
    } else if (head == "Fp") {
        c.expect('(');
        Int p = c.integer();
        c.expect(')');
        f = FieldDesc::prime(p);
    } else if (head == "Fq") {
        c.expect('(');
        Int p = c.integer();
        c.expect(',');
        FieldPtr base = FieldDesc::prime(p);
        auto e = parse_expr(c);
        // the modulus may use any single variable name
        std::string var = "x";
        std::function<void(const Expr&)> findvar = [&](const Expr& x) {
            if (x.op == Expr::Op::Var) var = x.var;
            if (x.a) findvar(*x.a);
            if (x.b) findvar(*x.b);
        };
        findvar(*e);
        MPoly m = eval_mpoly(*e, base, {var});
        Poly mod = m.to_poly(var);
        if (!mod.is_monic()) throw input_error("extension modulus must be monic");
        c.expect(')');
        f = FieldDesc::extension(base, mod.coeffs(), var);
    } else if (head == "Ext") {
        c.expect('(');
        FieldPtr base = parse_field(c);
        c.expect(',');
        auto e = parse_expr(c);
        c.expect(',');
        std::string var = c.ident();
        c.expect(')');
        MPoly m = eval_mpoly(*e, base, {var});
        f = FieldDesc::extension(base, m.to_poly(var).coeffs(), var);
    } else {
        throw input_error("unknown field descriptor '" + head + "'");
    }
    // rational-function suffixes: Q(t), Fq(5,x^2+2)(t), ...
    while (c.accept('(')) {
        std::string var = c.ident();
        c.expect(')');
        f = FieldDesc::ratfunc(f, var);
    }
    return f;
}

inline FieldPtr parse_field(const std::string& s) {
    Cursor c(s);
    FieldPtr f = parse_field(c);
    if (!c.eof()) throw input_error("trailing characters in field descriptor: " + s);
    return f;
}

// ---------------------------------------------------------------------------
// matrices, tuples, chains

inline PolyMatrix parse_matrix(Cursor& c, const FieldPtr& k, const std::vector<std::string>& vars) {
    c.expect('[');
    std::vector<std::vector<MPoly>> rows;
    for (;;) {
        c.expect('[');
        std::vector<MPoly> row;
        if (!c.accept(']')) {
            for (;;) {
                auto e = parse_expr(c);
                row.push_back(eval_mpoly(*e, k, vars));
                if (c.accept(',')) continue;
                c.expect(']');
                break;
            }
        }
        rows.push_back(std::move(row));
        if (c.accept(',')) continue;
        c.expect(']');
        break;
    }
    int nr = static_cast<int>(rows.size());
    int nc = nr > 0 ? static_cast<int>(rows[0].size()) : 0;
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != nc) throw input_error("ragged matrix rows");
    PolyMatrix m(k, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
}

struct TupleHeader {
    FieldPtr field;
    int d = 0, l = 1;
};

inline SymbolTuple parse_tuple(Cursor& c) {
    c.expect('{');
    FieldPtr field;
    int d = -1, l = -1;
    std::vector<PolyMatrix> mats;
    bool have_mats = false;
    for (;;) {
        std::string key = c.key();
        c.expect(':');
        if (key == "field") {
            field = parse_field(c.quoted());
        } else if (key == "d") {
            d = static_cast<int>(c.integer().get_si());
        } else if (key == "l") {
            l = static_cast<int>(c.integer().get_si());
        } else if (key == "mats") {
            if (!field || d < 0) throw input_error("mats must come after field and d");
            c.expect('[');
            auto vars = allowed_vars(d);
            if (!c.accept(']')) {
                for (;;) {
                    mats.push_back(parse_matrix(c, field, vars));
                    if (c.accept(',')) continue;
                    c.expect(']');
                    break;
                }
            }
            have_mats = true;
        } else {
            throw input_error("unknown tuple key '" + key + "'");
        }
        if (c.accept(',')) continue;
        c.expect('}');
        break;
    }
    if (!field || d < 0 || l < 0 || !have_mats) throw input_error("tuple needs field, d, l, mats");
    return SymbolTuple::make(field, d, l, std::move(mats));
}

inline Chain parse_chain(Cursor& c) {
    c.expect('[');
    std::vector<std::pair<SymbolTuple, long>> terms;
    if (!c.accept(']')) {
        for (;;) {
            c.expect('{');
            long coef = 1;
            bool have_tuple = false;
            SymbolTuple t;
            for (;;) {
                std::string key = c.key();
                c.expect(':');
                if (key == "coef") {
                    coef = static_cast<long>(c.integer().get_si());
                } else if (key == "tuple") {
                    t = parse_tuple(c);
                    have_tuple = true;
                } else {
                    throw input_error("unknown chain term key '" + key + "'");
                }
                if (c.accept(',')) continue;
                c.expect('}');
                break;
            }
            if (!have_tuple) throw input_error("chain term needs a tuple");
            terms.emplace_back(std::move(t), coef);
            if (c.accept(',')) continue;
            c.expect(']');
            break;
        }
    }
    if (terms.empty()) throw input_error("cannot infer the context of an empty chain literal");
    Chain ch(terms[0].first.context());
    for (auto& [t, coef] : terms) ch.add(t, coef);
    return ch;
}

// empty chains carry their context explicitly: {context: {...}, terms: []}
inline Chain parse_chain_or_empty(Cursor& c, const SymbolContext& ctx) {
    c.skip();
    if (c.peek() == '[') {
        size_t save = c.pos;
        c.take();
        if (c.accept(']')) return Chain(ctx);
        c.pos = save;
        return parse_chain(c);
    }
    throw input_error("expected a chain literal");
}

// ---------------------------------------------------------------------------
// Milnor elements

inline MilnorElement parse_milnor(Cursor& c) {
    c.expect('{');
    FieldPtr field;
    int l = -1;
    std::vector<std::pair<ValVec, long>> terms;
    for (;;) {
        std::string key = c.key();
        c.expect(':');
        if (key == "field") {
            field = parse_field(c.quoted());
        } else if (key == "l") {
            l = static_cast<int>(c.integer().get_si());
        } else if (key == "terms") {
            if (!field) throw input_error("terms must come after field");
            c.expect('[');
            if (!c.accept(']')) {
                for (;;) {
                    c.expect('{');
                    long coef = 1;
                    ValVec sym;
                    for (;;) {
                        std::string k2 = c.key();
                        c.expect(':');
                        if (k2 == "coef") {
                            coef = static_cast<long>(c.integer().get_si());
                        } else if (k2 == "symbol") {
                            c.expect('[');
                            for (;;) {
                                std::string coord = c.quoted();
                                Cursor cc(coord);
                                auto e = parse_expr(cc);
                                if (!cc.eof()) throw input_error("trailing characters in coordinate");
                                sym.push_back(eval_value(*e, field));
                                if (c.accept(',')) continue;
                                c.expect(']');
                                break;
                            }
                        } else {
                            throw input_error("unknown symbol key '" + k2 + "'");
                        }
                        if (c.accept(',')) continue;
                        c.expect('}');
                        break;
                    }
                    terms.emplace_back(std::move(sym), coef);
                    if (c.accept(',')) continue;
                    c.expect(']');
                    break;
                }
            }
        } else {
            throw input_error("unknown milnor key '" + key + "'");
        }
        if (c.accept(',')) continue;
        c.expect('}');
        break;
    }
    if (!field || l < 0) throw input_error("milnor element needs field and l");
    MilnorElement m(field, l);
    for (auto& [sym, coef] : terms) m.add(sym, coef);
    return m;
}

inline MilnorElement parse_milnor(const std::string& s) {
    Cursor c(s);
    MilnorElement m = parse_milnor(c);
    if (!c.eof()) throw input_error("trailing characters after milnor element");
    return m;
}

// ---------------------------------------------------------------------------
// certificates

inline SymbolContext parse_context(Cursor& c) {
    c.expect('{');
    SymbolContext ctx;
    for (;;) {
        std::string key = c.key();
        c.expect(':');
        if (key == "field") ctx.field = parse_field(c.quoted());
        else if (key == "d") ctx.d = static_cast<int>(c.integer().get_si());
        else if (key == "l") ctx.l = static_cast<int>(c.integer().get_si());
        else throw input_error("unknown context key '" + key + "'");
        if (c.accept(',')) continue;
        c.expect('}');
        break;
    }
    if (!ctx.field) throw input_error("context needs a field");
    return ctx;
}

inline std::vector<int> parse_int_list(Cursor& c) {
    c.expect('[');
    std::vector<int> out;
    if (!c.accept(']')) {
        for (;;) {
            out.push_back(static_cast<int>(c.integer().get_si()));
            if (c.accept(',')) continue;
            c.expect(']');
            break;
        }
    }
    return out;
}

inline Move parse_move_line(const std::string& line, const SymbolContext& ctx) {
    Cursor c(line);
    std::string kind = c.ident();
    Move m;
    auto vars = allowed_vars(ctx.d);
    if (kind == "wedgedrop") m.kind = Move::Kind::WedgeDrop;
    else if (kind == "wedgeadd") m.kind = Move::Kind::WedgeAdd;
    else if (kind == "conjugate") m.kind = Move::Kind::Conjugate;
    else if (kind == "blocksplit") m.kind = Move::Kind::BlockSplit;
    else if (kind == "blockjoin") m.kind = Move::Kind::BlockJoin;
    else if (kind == "merge") m.kind = Move::Kind::Merge;
    else if (kind == "addboundary") m.kind = Move::Kind::AddBoundary;
    else if (kind == "subfaces") m.kind = Move::Kind::SubstituteFaces;
    else throw input_error("unknown move kind '" + kind + "'");

    while (!c.eof()) {
        std::string key = c.ident();
        c.expect('=');
        if (key == "term") {
            m.term = static_cast<int>(c.integer().get_si());
        } else if (key == "terms") {
            m.terms = parse_int_list(c);
        } else if (key == "sizes") {
            m.sizes = parse_int_list(c);
        } else if (key == "coef") {
            m.coef = static_cast<long>(c.integer().get_si());
        } else if (key == "side") {
            m.side = c.ident();
        } else if (key == "g") {
            m.mats = {parse_matrix(c, ctx.field, vars)};
        } else if (key == "mats") {
            c.expect('[');
            for (;;) {
                m.mats.push_back(parse_matrix(c, ctx.field, vars));
                if (c.accept(',')) continue;
                c.expect(']');
                break;
            }
        } else if (key == "tuple") {
            SymbolTuple t = parse_tuple(c);
            m.mats = t.mats();
        } else if (key == "witness") {
            m.witness = parse_chain(c);
        } else {
            throw input_error("unknown move key '" + key + "'");
        }
    }
    return m;
}

inline CertificateScript parse_certificate(const std::string& text) {
    // header: one brace-balanced object; then one move per line
    size_t hstart = text.find('{');
    if (hstart == std::string::npos) throw input_error("certificate has no header object");
    int depth = 0;
    size_t hend = hstart;
    for (size_t i = hstart; i < text.size(); ++i) {
        if (text[i] == '{') ++depth;
        if (text[i] == '}') {
            --depth;
            if (depth == 0) {
                hend = i + 1;
                break;
            }
        }
    }
    if (depth != 0) throw input_error("unbalanced certificate header");
    std::string header = text.substr(hstart, hend - hstart);

    CertificateScript s;
    Cursor c(header);
    c.expect('{');
    bool have_start = false, have_goal = false;
    std::string start_text, goal_text;
    for (;;) {
        std::string key = c.key();
        c.expect(':');
        if (key == "name") {
            s.name = c.quoted();
        } else if (key == "context") {
            s.context = parse_context(c);
        } else if (key == "start" || key == "goal") {
            // capture the bracket-balanced chain text, parse after context
            c.skip();
            size_t from = c.pos;
            int d2 = 0;
            do {
                char ch = c.take();
                if (ch == '[') ++d2;
                if (ch == ']') --d2;
            } while (d2 != 0);
            std::string chunk = header.substr(from, c.pos - from);
            if (key == "start") {
                start_text = chunk;
                have_start = true;
            } else {
                goal_text = chunk;
                have_goal = true;
            }
        } else {
            throw input_error("unknown certificate header key '" + key + "'");
        }
        if (c.accept(',')) continue;
        c.expect('}');
        break;
    }
    if (!s.context.field || !have_start || !have_goal)
        throw input_error("certificate header needs context, start and goal");
    {
        Cursor cs(start_text);
        s.start = parse_chain_or_empty(cs, s.context);
        Cursor cg(goal_text);
        s.goal = parse_chain_or_empty(cg, s.context);
    }

    std::istringstream rest(text.substr(hend));
    std::string line;
    while (std::getline(rest, line)) {
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        if (line[a] == '#') continue;
        s.moves.push_back(parse_move_line(line.substr(a), s.context));
    }
    return s;
}

// ---------------------------------------------------------------------------
// serializers

inline std::string write_chain(const Chain& c) { return c.str(); }

inline std::string write_move(const Move& m) {
    std::string s = m.kind_name();
    switch (m.kind) {
        case Move::Kind::WedgeDrop:
        case Move::Kind::SubstituteFaces:
            s += " term=" + std::to_string(m.term);
            break;
        case Move::Kind::WedgeAdd: {
            s += " coef=" + std::to_string(m.coef) + " mats=[";
            for (size_t i = 0; i < m.mats.size(); ++i) {
                if (i) s += ",";
                s += m.mats[i].str();
            }
            s += "]";
            break;
        }
        case Move::Kind::Conjugate:
            s += " term=" + std::to_string(m.term) + " g=" + m.mats[0].str();
            break;
        case Move::Kind::BlockSplit: {
            s += " term=" + std::to_string(m.term) + " sizes=[";
            for (size_t i = 0; i < m.sizes.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(m.sizes[i]);
            }
            s += "]";
            break;
        }
        case Move::Kind::BlockJoin: {
            s += " terms=[";
            for (size_t i = 0; i < m.terms.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(m.terms[i]);
            }
            s += "] mats=[";
            for (size_t i = 0; i < m.mats.size(); ++i) {
                if (i) s += ",";
                s += m.mats[i].str();
            }
            s += "]";
            break;
        }
        case Move::Kind::Merge: {
            s += " terms=[" + std::to_string(m.terms[0]) + "," + std::to_string(m.terms[1]) + "]";
            break;
        }
        case Move::Kind::AddBoundary:
            s += " witness=" + m.witness.str() + " side=" + m.side;
            break;
    }
    return s;
}

inline std::string write_certificate(const CertificateScript& s) {
    std::string out = "{name:\"" + s.name + "\", context:" + s.context.str() +
                      ", start:" + s.start.str() + ", goal:" + s.goal.str() + "}\n";
    for (const auto& m : s.moves) out += write_move(m) + "\n";
    return out;
}

}  // namespace io
}  // namespace motsym
