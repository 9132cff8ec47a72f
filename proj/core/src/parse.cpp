#include "orw/parse.hpp"

#include <algorithm>
#include <cctype>

namespace orw {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    enum class T { Ident, Number, Sym, End } type;
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view s, std::size_t line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
                ++i;
            out.push_back({Token::T::Ident, std::string(s.substr(start, i - start)), start + 1});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Token::T::Number, std::string(s.substr(start, i - start)), start + 1});
        } else if (std::string_view("+-*/()^,{}").find(c) != std::string_view::npos) {
            out.push_back({Token::T::Sym, std::string(1, c), start + 1});
            ++i;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, start + 1);
        }
    }
    out.push_back({Token::T::End, "", s.size() + 1});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, std::size_t line) : toks_(std::move(toks)), line_(line) {}

    ExprPtr parse_all() {
        auto e = sum();
        if (peek().type != Token::T::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_;

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    bool is_sym(const char* s) const { return peek().type == Token::T::Sym && peek().text == s; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, peek().column); }
    void expect(const char* s) {
        if (!is_sym(s)) fail(std::string("expected '") + s + "'");
        ++pos_;
    }

    bool starts_factor() const {
        const Token& t = peek();
        return t.type == Token::T::Ident || t.type == Token::T::Number || (t.type == Token::T::Sym && t.text == "(");
    }

    ExprPtr sum() {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Sum;
        e->column = peek().column;
        int sign = 1;
        if (is_sym("-")) {
            sign = -1;
            ++pos_;
        } else if (is_sym("+")) {
            ++pos_;
        }
        e->addends.emplace_back(sign, product());
        while (is_sym("+") || is_sym("-")) {
            sign = next().text == "-" ? -1 : 1;
            e->addends.emplace_back(sign, product());
        }
        if (e->addends.size() == 1 && e->addends[0].first == 1) return e->addends[0].second;
        return e;
    }

    ExprPtr product() {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Product;
        e->column = peek().column;
        e->factors.push_back(factor());
        for (;;) {
            if (is_sym("*")) {
                ++pos_;
                e->factors.push_back(factor());
            } else if (starts_factor()) {
                e->factors.push_back(factor());
            } else {
                break;
            }
        }
        if (e->factors.size() == 1) return e->factors[0];
        return e;
    }

    ExprPtr factor() {
        auto e = std::make_shared<Expr>();
        const Token t = peek();
        e->column = t.column;
        if (t.type == Token::T::Number) {
            ++pos_;
            e->kind = Expr::Kind::Number;
            Rational num(t.text, 10);
            if (is_sym("/")) {
                ++pos_;
                if (peek().type != Token::T::Number) fail("expected denominator");
                Rational den(next().text, 10);
                if (den == 0) fail("zero denominator");
                num /= den;
            }
            e->number = num;
            return e;
        }
        if (is_sym("(")) {
            ++pos_;
            auto inner = sum();
            expect(")");
            return inner;
        }
        if (t.type != Token::T::Ident) fail(t.type == Token::T::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
        ++pos_;
        if (t.text == "_") {
            e->kind = Expr::Kind::Hole;
            return e;
        }
        if (t.text == "lambda") {
            e->kind = Expr::Kind::Lambda;
            if (is_sym("^")) {
                ++pos_;
                int sign = 1;
                if (is_sym("-")) {
                    sign = -1;
                    ++pos_;
                }
                if (peek().type != Token::T::Number) fail("expected exponent");
                e->power = sign * std::stoi(next().text);
            }
            return e;
        }
        if (is_sym("(")) {
            ++pos_;
            if (t.text == "leibniz") {
                e->kind = Expr::Kind::Leibniz;
                if (peek().type != Token::T::Ident) fail("expected operator name");
                e->name = next().text;
                expect(",");
                if (peek().type != Token::T::Ident) fail("expected sequence variable");
                e->name2 = next().text;
                expect(")");
                return e;
            }
            e->kind = t.text == "NF" ? Expr::Kind::NF : Expr::Kind::Apply;
            e->name = t.text;
            if (is_sym(")")) {
                auto one = std::make_shared<Expr>();
                one->kind = Expr::Kind::Number;
                one->number = 1;
                one->column = peek().column;
                e->arg = one;
            } else {
                e->arg = sum();
            }
            expect(")");
            return e;
        }
        if (is_sym("{")) {
            ++pos_;
            e->kind = Expr::Kind::Plug;
            e->name = t.text;
            e->arg = sum();
            expect("}");
            return e;
        }
        e->kind = Expr::Kind::Ident;
        e->name = t.text;
        return e;
    }
};

[[noreturn]] void eval_fail(const Expr& e, const std::string& msg) { throw ParseError(msg, 1, e.column); }

Rational lambda_power(const Expr& e, const Signature& sig) {
    if (!sig.lambda) eval_fail(e, "lambda is not set");
    const Rational& l = *sig.lambda;
    if (e.power < 0 && l == 0) eval_fail(e, "lambda^-1 needs lambda != 0");
    Rational r = 1;
    for (int i = 0; i < std::abs(e.power); ++i) r *= l;
    if (e.power < 0) r = 1 / r;
    return r;
}

// Context parsing: monomial-with-hole from a product expression.
void collect_factors(const Expr& e, std::vector<const Expr*>& out) {
    if (e.kind == Expr::Kind::Product) {
        for (const auto& f : e.factors) collect_factors(*f, out);
    } else {
        out.push_back(&e);
    }
}

Context build_context(const Expr& e, const Signature& sig, bool& found);

Monomial expr_to_monomial(const Expr& e, const Signature& sig) {
    Polynomial p = evaluate(e, sig);
    if (p.term_count() != 1 || p.terms().begin()->second != 1) eval_fail(e, "expected a single monomial");
    return p.terms().begin()->first;
}

Context build_context(const Expr& e, const Signature& sig, bool& found) {
    std::vector<const Expr*> fs;
    collect_factors(e, fs);
    std::vector<Atom> left, right;
    std::optional<Context> inner;
    std::optional<SymbolId> inner_op;
    for (const Expr* f : fs) {
        auto push = [&](const Monomial& m) {
            auto& dst = found ? right : left;
            dst.insert(dst.end(), m.atoms().begin(), m.atoms().end());
        };
        if (f->kind == Expr::Kind::Hole) {
            if (found) eval_fail(*f, "context has more than one hole");
            found = true;
            continue;
        }
        if (f->kind == Expr::Kind::Apply) {
            bool sub = false;
            auto op = find_operator(f->name);
            if (!op || !sig.has_operator(*op)) eval_fail(*f, "unknown operator '" + f->name + "'");
            Context c = build_context(*f->arg, sig, sub);
            if (sub) {
                if (found) eval_fail(*f, "context has more than one hole");
                found = true;
                inner = c;
                inner_op = *op;
                continue;
            }
            push(Monomial::bracket(*op, c.plug(Monomial())));
            continue;
        }
        push(expr_to_monomial(*f, sig));
    }
    if (!found) return Context::left_right(Monomial(left), Monomial(right));
    if (!inner) return Context::left_right(Monomial(left), Monomial(right));
    std::vector<ContextFrame> frames;
    ContextFrame top;
    top.left = std::move(left);
    top.right = std::move(right);
    top.op = *inner_op;
    frames.push_back(std::move(top));
    frames.insert(frames.end(), inner->frames().begin(), inner->frames().end());
    return Context(std::move(frames));
}

}  // namespace

ExprPtr parse_expr(std::string_view text, std::size_t line) {
    Parser p(tokenize(text, line), line);
    return p.parse_all();
}

bool Signature::has_generator(SymbolId g) const { return std::find(gens.begin(), gens.end(), g) != gens.end(); }
bool Signature::has_operator(SymbolId op) const { return std::find(ops.begin(), ops.end(), op) != ops.end(); }

Polynomial evaluate(const Expr& e, const Signature& sig, const EvalHooks& hooks) {
    switch (e.kind) {
        case Expr::Kind::Sum: {
            Polynomial out;
            for (const auto& [sign, t] : e.addends) {
                Polynomial p = evaluate(*t, sig, hooks);
                if (sign < 0) out -= p;
                else out += p;
            }
            return out;
        }
        case Expr::Kind::Product: {
            Polynomial out = Polynomial::constant(1);
            for (const auto& f : e.factors) {
                out = out * evaluate(*f, sig, hooks);
                if (out.is_zero()) break;
            }
            return out;
        }
        case Expr::Kind::Number:
            return Polynomial::constant(e.number);
        case Expr::Kind::Lambda:
            return Polynomial::constant(lambda_power(e, sig));
        case Expr::Kind::Ident: {
            if (hooks.variable) {
                if (auto v = hooks.variable(e.name)) return *v;
            }
            auto g = find_generator(e.name);
            if (!g || !sig.has_generator(*g)) eval_fail(e, "unknown generator '" + e.name + "'");
            return Polynomial(Monomial::generator(*g));
        }
        case Expr::Kind::Apply: {
            auto op = find_operator(e.name);
            if (!op || !sig.has_operator(*op)) eval_fail(e, "unknown operator '" + e.name + "'");
            return evaluate(*e.arg, sig, hooks).apply(*op);
        }
        case Expr::Kind::NF: {
            Polynomial inner = evaluate(*e.arg, sig, hooks);
            if (!hooks.normal_form) eval_fail(e, "NF(...) is only allowed in rule targets");
            return hooks.normal_form(inner);
        }
        case Expr::Kind::Leibniz: {
            auto op = find_operator(e.name);
            if (!op || !sig.has_operator(*op)) eval_fail(e, "unknown operator '" + e.name + "'");
            if (!hooks.leibniz) eval_fail(e, "leibniz(...) is only allowed in rule targets");
            return hooks.leibniz(*op, e.name2);
        }
        case Expr::Kind::Hole:
            eval_fail(e, "hole '_' outside a context");
        case Expr::Kind::Plug:
            eval_fail(e, "context pattern outside a template");
    }
    return {};
}

Polynomial parse_polynomial(std::string_view text, const Signature& sig) {
    return evaluate(*parse_expr(text), sig);
}

Monomial parse_monomial(std::string_view text, const Signature& sig) {
    auto e = parse_expr(text);
    return expr_to_monomial(*e, sig);
}

Context parse_context(std::string_view text, const Signature& sig) {
    auto e = parse_expr(text);
    bool found = false;
    Context c = build_context(*e, sig, found);
    if (!found) throw ParseError("context has no hole '_'", 1, 1);
    return c;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// ---- printing ----

namespace {

void print_atoms(std::span<const Atom> atoms, std::string& out) {
    bool first = true;
    for (const Atom& a : atoms) {
        if (!first) out += '*';
        first = false;
        if (a.is_bracket) {
            out += operator_name(a.sym);
            out += '(';
            if (a.inner.is_one()) out += '1';
            else print_atoms(a.inner.atoms(), out);
            out += ')';
        } else {
            out += generator_name(a.sym);
        }
    }
}

}  // namespace

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const Monomial& m) {
    if (m.is_one()) return "1";
    std::string out;
    print_atoms(m.atoms(), out);
    return out;
}

std::string to_string(const Polynomial& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : a.terms()) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        if (m.is_one()) {
            out += to_string(mag);
        } else {
            if (mag != 1) out += to_string(mag) + "*";
            out += to_string(m);
        }
    }
    return out;
}

std::string to_string(const Context& q) {
    std::string inner = "_";
    const auto& fr = q.frames();
    for (std::size_t k = fr.size(); k-- > 0;) {
        std::string s;
        if (!fr[k].left.empty()) {
            print_atoms(fr[k].left, s);
            s += '*';
        }
        s += inner;
        if (!fr[k].right.empty()) {
            s += '*';
            print_atoms(fr[k].right, s);
        }
        if (k > 0) inner = operator_name(fr[k - 1].op) + "(" + s + ")";
        else inner = s;
    }
    return inner;
}

}  // namespace orw
