#include "pcirc/term.hpp"

#include "pcirc/arithmetic.hpp"
#include "pcirc/reduction.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <vector>

namespace pcirc {

TermPtr make_const(const BigInt& n) {
    auto t = std::make_shared<Term>();
    t->op = TermOp::Const;
    t->value = n;
    return t;
}

TermPtr make_var(const std::string& name) {
    auto t = std::make_shared<Term>();
    t->op = TermOp::Var;
    t->name = name;
    return t;
}

TermPtr make_op(TermOp op, TermPtr a, TermPtr b) {
    auto t = std::make_shared<Term>();
    t->op = op;
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
}

ParseError::ParseError(std::size_t p, const std::string& msg)
    : std::runtime_error("column " + std::to_string(p) + ": " + msg), pos(p) {}

namespace {

// ---- lexer ----

enum class Tok { Num, Ident, Op, End };

struct Token {
    Tok kind;
    std::string text;
    BigInt num;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
    static const char* ops[] = {"<<^", ">>^", "<=", ">=", "<", ">", "=", "+", "-", "*", "^", "&", "|", "!", "(", ")"};
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        const std::size_t col = i + 1;
        if (std::isdigit(c)) {
            std::size_t j = i;
            BigInt v = 0;
            if (s.compare(i, 2, "0b") == 0 || s.compare(i, 2, "0B") == 0) {
                j = i + 2;
                if (j >= s.size() || (s[j] != '0' && s[j] != '1')) throw ParseError(col, "binary literal needs digits");
                while (j < s.size() && (s[j] == '0' || s[j] == '1')) v = v * 2 + (s[j++] - '0');
            } else {
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) v = v * 10 + (s[j++] - '0');
            }
            if (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                throw ParseError(j + 1, "unexpected character after number");
            out.push_back({Tok::Num, s.substr(i, j - i), v, col});
            i = j;
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), 0, col});
            i = j;
            continue;
        }
        bool matched = false;
        for (const char* op : ops) {
            std::string o(op);
            if (s.compare(i, o.size(), o) == 0) {
                out.push_back({Tok::Op, o, 0, col});
                i += o.size();
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError(col, std::string("unexpected character '") + s[i] + "'");
    }
    out.push_back({Tok::End, "", 0, s.size() + 1});
    return out;
}

// ---- parser ----

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    Parsed run() {
        Parsed p = parse_or();
        if (peek().kind != Tok::End) throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
        return p;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
    bool is_op(const char* o, std::size_t k = 0) const { return peek(k).kind == Tok::Op && peek(k).text == o; }
    const Token& next() { return toks_[i_++]; }
    void expect(const char* o) {
        if (!is_op(o)) throw ParseError(peek().pos, std::string("expected '") + o + "'");
        ++i_;
    }

    static TermPtr term(const Parsed& p, std::size_t pos) {
        if (auto t = std::get_if<TermPtr>(&p)) return *t;
        throw ParseError(pos, "expected a term, found a formula");
    }
    static FormulaPtr formula(const Parsed& p, std::size_t pos) {
        if (auto f = std::get_if<FormulaPtr>(&p)) return *f;
        throw ParseError(pos, "expected a formula, found a term");
    }

    static FormulaPtr connective(Formula::Kind k, FormulaPtr a, FormulaPtr b = nullptr) {
        auto f = std::make_shared<Formula>();
        f->kind = k;
        f->a = std::move(a);
        f->b = std::move(b);
        return f;
    }
    static FormulaPtr atom(Rel r, TermPtr l, TermPtr rhs) {
        auto f = std::make_shared<Formula>();
        f->kind = Formula::Kind::Atom;
        f->rel = r;
        f->lhs = std::move(l);
        f->rhs = std::move(rhs);
        return f;
    }

    static TermPtr at(TermPtr t, std::size_t pos) {
        auto m = std::make_shared<Term>(*t);
        m->pos = pos;
        return m;
    }

    Parsed parse_or() {
        std::size_t p0 = peek().pos;
        Parsed l = parse_and();
        while (is_op("|")) {
            std::size_t p = next().pos;
            Parsed r = parse_and();
            l = connective(Formula::Kind::Or, formula(l, p0), formula(r, p + 1));
        }
        return l;
    }

    Parsed parse_and() {
        std::size_t p0 = peek().pos;
        Parsed l = parse_not();
        while (is_op("&")) {
            std::size_t p = next().pos;
            Parsed r = parse_not();
            l = connective(Formula::Kind::And, formula(l, p0), formula(r, p + 1));
        }
        return l;
    }

    Parsed parse_not() {
        if (is_op("!")) {
            std::size_t p = next().pos;
            return connective(Formula::Kind::Not, formula(parse_not(), p + 1));
        }
        return parse_rel();
    }

    Parsed parse_rel() {
        std::size_t p0 = peek().pos;
        if (is_op("(")) {
            // A parenthesized formula stands alone; anything else re-parses as a term.
            std::size_t save = i_;
            Parsed inner = parse_primary();
            if (std::holds_alternative<FormulaPtr>(inner)) return inner;
            i_ = save;
        }
        Parsed l = parse_add();
        static const char* rels[] = {"<=", ">=", "<", ">", "="};
        for (const char* r : rels) {
            if (!is_op(r)) continue;
            std::size_t p = next().pos;
            TermPtr a = term(l, p0);
            TermPtr b = term(parse_add(), p + 1);
            std::string rs(r);
            if (rs == "<=") return atom(Rel::Le, a, b);
            if (rs == ">=") return atom(Rel::Le, b, a);
            if (rs == "=") return atom(Rel::Eq, a, b);
            if (rs == ">") std::swap(a, b);
            return connective(Formula::Kind::And, atom(Rel::Le, a, b),
                              connective(Formula::Kind::Not, atom(Rel::Eq, a, b)));
        }
        return l;
    }

    TermPtr parse_add() {
        std::size_t p0 = peek().pos;
        TermPtr l = parse_mul(p0);
        while (is_op("+") || is_op("-")) {
            const Token& t = next();
            TermOp op = t.text == "+" ? TermOp::Add : TermOp::Sub;
            TermPtr r = parse_mul(peek().pos);
            l = at(make_op(op, l, r), t.pos);
        }
        return l;
    }

    TermPtr parse_mul(std::size_t p0) {
        TermPtr l = parse_shift(p0);
        while (is_op("*")) {
            std::size_t p = next().pos;
            TermPtr r = parse_shift(peek().pos);
            l = at(make_op(TermOp::Mul, l, r), p);
        }
        return l;
    }

    TermPtr parse_shift(std::size_t p0) {
        TermPtr l = parse_unary(p0);
        if (is_op("<<^") || is_op(">>^")) {
            const Token& t = next();
            TermOp op = t.text == "<<^" ? TermOp::MulPow2 : TermOp::DivPow2;
            TermPtr r = parse_shift(peek().pos);
            return at(make_op(op, l, r), t.pos);
        }
        return l;
    }

    TermPtr parse_unary(std::size_t p0) {
        if (is_op("-")) {
            std::size_t p = next().pos;
            bool literal = peek().kind == Tok::Num;
            TermPtr a = parse_unary(peek().pos);
            if (literal && a->op == TermOp::Const) return at(make_const(-a->value), p);
            return at(make_op(TermOp::Neg, a), p);
        }
        return term(parse_primary(), p0);
    }

    Parsed parse_primary() {
        const Token& t = peek();
        if (t.kind == Tok::Num) {
            next();
            if (is_op("^")) {
                if (t.num != 2) throw ParseError(t.pos, "only base 2 is supported");
                std::size_t p = next().pos;
                TermPtr e = parse_unary(peek().pos);
                return at(make_op(TermOp::MulPow2, make_const(1), e), p);
            }
            return at(make_const(t.num), t.pos);
        }
        if (t.kind == Tok::Ident) {
            next();
            if (t.text == "tower" && is_op("(")) {
                next();
                TermPtr k = term(parse_or(), peek().pos);
                expect(")");
                return at(make_op(TermOp::Tower, k), t.pos);
            }
            return at(make_var(t.text), t.pos);
        }
        if (is_op("(")) {
            next();
            Parsed p = parse_or();
            expect(")");
            return p;
        }
        if (t.kind == Tok::End) throw ParseError(t.pos, "unexpected end of input");
        throw ParseError(t.pos, "unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

// ---- printing ----

int prec(const Term& t) {
    switch (t.op) {
        case TermOp::Add:
        case TermOp::Sub: return 1;
        case TermOp::Mul: return 2;
        case TermOp::MulPow2:
            if (t.a->op == TermOp::Const && t.a->value == 1) return 5;
            return 3;
        case TermOp::DivPow2: return 3;
        case TermOp::Neg: return 4;
        case TermOp::Const: return t.value < 0 ? 4 : 5;
        default: return 5;
    }
}

std::string print(const Term& t, int ctx) {
    std::string s;
    switch (t.op) {
        case TermOp::Const: s = t.value.str(); break;
        case TermOp::Var: s = t.name; break;
        case TermOp::Add: s = print(*t.a, 1) + " + " + print(*t.b, 2); break;
        case TermOp::Sub: s = print(*t.a, 1) + " - " + print(*t.b, 2); break;
        case TermOp::Mul: s = print(*t.a, 2) + " * " + print(*t.b, 3); break;
        case TermOp::MulPow2:
            if (prec(t) == 5)
                s = "2^" + print(*t.b, 5);
            else
                s = print(*t.a, 4) + " <<^ " + print(*t.b, 3);
            break;
        case TermOp::DivPow2: s = print(*t.a, 4) + " >>^ " + print(*t.b, 3); break;
        case TermOp::Neg: s = "-" + print(*t.a, t.a->op == TermOp::Const ? 6 : 4); break;
        case TermOp::Tower: s = "tower(" + print(*t.a, 0) + ")"; break;
    }
    return prec(t) < ctx ? "(" + s + ")" : s;
}

std::string print(const Formula& f, int ctx) {
    std::string s;
    int p = 4;
    switch (f.kind) {
        case Formula::Kind::Atom:
            s = print(*f.lhs, 0) + (f.rel == Rel::Le ? " <= " : " = ") + print(*f.rhs, 0);
            break;
        case Formula::Kind::Not:
            p = 3;
            s = "!" + print(*f.a, 3);
            break;
        case Formula::Kind::And:
            p = 2;
            s = print(*f.a, 2) + " & " + print(*f.b, 3);
            break;
        case Formula::Kind::Or:
            p = 1;
            s = print(*f.a, 1) + " | " + print(*f.b, 2);
            break;
    }
    return p < ctx ? "(" + s + ")" : s;
}

}  // namespace

Parsed parse(const std::string& src) { return Parser(src).run(); }

TermPtr parse_term(const std::string& src) {
    Parsed p = parse(src);
    if (auto t = std::get_if<TermPtr>(&p)) return *t;
    throw ParseError(1, "expected a term, found a formula");
}

std::string to_string(const TermPtr& t) { return print(*t, 0); }
std::string to_string(const FormulaPtr& f) { return print(*f, 0); }

std::size_t term_size(const TermPtr& t) {
    switch (t->op) {
        case TermOp::Const:
        case TermOp::Var: return 0;
        case TermOp::Neg:
        case TermOp::Tower: return 1 + term_size(t->a);
        default: return 1 + term_size(t->a) + term_size(t->b);
    }
}

TermPtr term_of(const Circuit& c) {
    std::vector<TermPtr> memo(c.size());
    auto signed_sum = [](const std::vector<std::pair<TermPtr, int>>& parts) {
        TermPtr s;
        for (const auto& [t, sg] : parts) {
            if (!s)
                s = sg > 0 ? t : make_op(TermOp::Neg, t);
            else
                s = make_op(sg > 0 ? TermOp::Add : TermOp::Sub, s, t);
        }
        return s;
    };
    std::function<TermPtr(VertexId)> vt = [&](VertexId x) -> TermPtr {
        if (memo[x]) return memo[x];
        const Vertex& vx = c.v[x];
        if (vx.leaf == LeafKind::Zero) return memo[x] = make_const(0);
        if (vx.leaf == LeafKind::Var) return memo[x] = make_var(vx.var);
        std::vector<Edge> out = vx.out;
        std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
        std::vector<std::pair<TermPtr, int>> parts;
        for (const auto& e : out) parts.emplace_back(vt(e.to), e.sign);
        return memo[x] = make_op(TermOp::MulPow2, make_const(1), signed_sum(parts));
    };
    std::vector<std::pair<TermPtr, int>> parts;
    for (VertexId m : c.marked()) parts.emplace_back(vt(m), c.v[m].mark);
    if (parts.empty()) return make_const(0);
    return signed_sum(parts);
}

namespace {

constexpr long kMaxTower = 100000;

// Value of a macro argument; only small constant arithmetic.
std::optional<BigInt> small_value(const Term& t, const Assignment& lets) {
    auto rec = [&](auto&& self, const Term& u) -> std::optional<BigInt> {
        switch (u.op) {
            case TermOp::Const: return u.value;
            case TermOp::Var: {
                auto it = lets.find(u.name);
                if (it == lets.end()) return std::nullopt;
                return it->second;
            }
            case TermOp::Neg: {
                auto a = self(self, *u.a);
                if (!a) return std::nullopt;
                return BigInt(-*a);
            }
            case TermOp::Add:
            case TermOp::Sub:
            case TermOp::Mul: {
                auto a = self(self, *u.a);
                auto b = self(self, *u.b);
                if (!a || !b) return std::nullopt;
                if (u.op == TermOp::Add) return BigInt(*a + *b);
                if (u.op == TermOp::Sub) return BigInt(*a - *b);
                return BigInt(*a * *b);
            }
            default: return std::nullopt;
        }
    };
    return rec(rec, t);
}

TermPtr expand(const TermPtr& t, const Assignment& lets) {
    switch (t->op) {
        case TermOp::Const:
        case TermOp::Var: return t;
        case TermOp::Tower: {
            auto k = small_value(*t->a, lets);
            if (!k || *k < 0 || *k > kMaxTower)
                throw ParseError(t->pos, "tower(k) needs a constant k in [0, " + std::to_string(kMaxTower) + "]");
            TermPtr r = make_const(1);
            for (long i = 0; i < k->convert_to<long>(); ++i) r = make_op(TermOp::MulPow2, make_const(1), r);
            return r;
        }
        default: {
            TermPtr a = expand(t->a, lets);
            TermPtr b = t->b ? expand(t->b, lets) : nullptr;
            if (a == t->a && b == t->b) return t;
            auto m = std::make_shared<Term>(*t);
            m->a = a;
            m->b = b;
            return m;
        }
    }
}

}  // namespace

TermPtr expand_macros(const TermPtr& t, const Assignment& lets) { return expand(t, lets); }

Circuit tau(const TermPtr& t0, const Assignment* eta) {
    static const Assignment none;
    TermPtr t = expand(t0, eta ? *eta : none);
    auto rec = [&](auto&& self, const Term& u) -> Circuit {
        switch (u.op) {
            case TermOp::Const: return u.value == 0 ? trivial_circuit() : from_integer(u.value);
            case TermOp::Var: {
                if (!eta) {
                    Circuit c;
                    c.set_mark(c.add_var(u.name), 1);
                    return c;
                }
                auto it = eta->find(u.name);
                if (it == eta->end()) throw UnboundVariable("unbound variable '" + u.name + "'");
                return from_integer(it->second);
            }
            case TermOp::Add: return add(self(self, *u.a), self(self, *u.b));
            case TermOp::Sub: return subtract(self(self, *u.a), self(self, *u.b));
            case TermOp::Mul: return multiply(self(self, *u.a), self(self, *u.b));
            case TermOp::MulPow2: return mul_pow2(self(self, *u.a), self(self, *u.b));
            case TermOp::DivPow2: return div_pow2_unchecked(self(self, *u.a), self(self, *u.b));
            case TermOp::Neg: return negate(self(self, *u.a));
            case TermOp::Tower: break;
        }
        throw std::logic_error("tau: unexpanded macro");
    };
    return rec(rec, *t);
}

namespace {

struct Realizer {
    const Assignment& eta;
    const RealizeOptions& opt;
    std::optional<Witness> failure;

    void check(const Circuit& c) const {
        if (c.num_vertices() > opt.max_vertices)
            throw BudgetExceeded("circuit exceeds " + std::to_string(opt.max_vertices) + " vertices");
    }

    std::optional<Circuit> finish(const Circuit& c, const Term& u, const std::string& path) {
        check(c);
        auto r = reduce(c);
        if (!r) failure = Witness{path.empty() ? "root" : path, print(u, 0)};
        return r;
    }

    std::optional<Circuit> run(const Term& u, const std::string& path) {
        auto child = [&](int i) { return path.empty() ? std::to_string(i) : path + "." + std::to_string(i); };
        switch (u.op) {
            case TermOp::Const: return from_integer(u.value);
            case TermOp::Var: {
                auto it = eta.find(u.name);
                if (it == eta.end()) throw UnboundVariable("unbound variable '" + u.name + "'");
                return from_integer(it->second);
            }
            case TermOp::Neg: {
                auto a = run(*u.a, child(0));
                if (!a) return std::nullopt;
                return finish(negate(*a), u, path);
            }
            case TermOp::Tower: throw std::logic_error("realize: unexpanded macro");
            default: break;
        }
        auto a = run(*u.a, child(0));
        if (!a) return std::nullopt;
        auto b = run(*u.b, child(1));
        if (!b) return std::nullopt;
        switch (u.op) {
            case TermOp::Add: return finish(add(*a, *b), u, path);
            case TermOp::Sub: return finish(subtract(*a, *b), u, path);
            case TermOp::Mul: return finish(multiply(*a, *b), u, path);
            case TermOp::MulPow2: return finish(mul_pow2(*a, *b), u, path);
            case TermOp::DivPow2: {
                Circuit w = div_pow2_unchecked(*a, *b);
                return finish(w, u, path);
            }
            default: break;
        }
        throw std::logic_error("realize: bad operator");
    }
};

}  // namespace

Realized realize(const TermPtr& t, const Assignment& eta, const RealizeOptions& opt) {
    TermPtr e = expand(t, eta);
    Realizer r{eta, opt, std::nullopt};
    auto c = r.run(*e, "");
    if (!c) return {std::nullopt, r.failure};
    auto n = normalize(*c);
    if (!n) return {std::nullopt, Witness{"root", to_string(e)}};
    r.check(*n);
    return {std::move(n), std::nullopt};
}

namespace {

Truth kleene_and(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::Undefined || b == Truth::Undefined) return Truth::Undefined;
    return Truth::True;
}

Truth kleene_or(Truth a, Truth b) {
    if (a == Truth::True || b == Truth::True) return Truth::True;
    if (a == Truth::Undefined || b == Truth::Undefined) return Truth::Undefined;
    return Truth::False;
}

}  // namespace

EvalOutcome eval_formula(const FormulaPtr& f, const Assignment& eta, const RealizeOptions& opt) {
    switch (f->kind) {
        case Formula::Kind::Atom: {
            Realized d = realize(make_op(TermOp::Sub, f->lhs, f->rhs), eta, opt);
            if (!d.circuit) return {Truth::Undefined, d.undefined};
            int s = sign_of_reduced(*d.circuit);
            bool holds = f->rel == Rel::Le ? s <= 0 : s == 0;
            return {holds ? Truth::True : Truth::False, std::nullopt};
        }
        case Formula::Kind::Not: {
            EvalOutcome a = eval_formula(f->a, eta, opt);
            if (a.value == Truth::Undefined) return a;
            return {a.value == Truth::True ? Truth::False : Truth::True, std::nullopt};
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            EvalOutcome a = eval_formula(f->a, eta, opt);
            EvalOutcome b = eval_formula(f->b, eta, opt);
            Truth v = f->kind == Formula::Kind::And ? kleene_and(a.value, b.value) : kleene_or(a.value, b.value);
            std::optional<Witness> w;
            if (v == Truth::Undefined) w = a.value == Truth::Undefined ? a.witness : b.witness;
            return {v, w};
        }
    }
    throw std::logic_error("eval_formula: bad formula");
}

const char* to_string(Truth t) {
    switch (t) {
        case Truth::True: return "True";
        case Truth::False: return "False";
        case Truth::Undefined: return "Undefined";
    }
    return "?";
}

}  // namespace pcirc
