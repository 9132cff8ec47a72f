#include "orw/system_file.hpp"

#include <fstream>
#include <sstream>

namespace orw {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

bool valid_name(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
    return true;
}

// check identifiers of a target and find negative lambda powers
void check_target(const Expr& e, const RuleSchema& r, const Signature& sig, std::size_t line, std::size_t offset,
                  const std::vector<bool>& in_lhs) {
    auto fail = [&](const std::string& msg) { throw ParseError(msg, line, offset + e.column); };
    auto var_index = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < r.vars.size(); ++i)
            if (r.vars[i].name == name) return static_cast<int>(i);
        return -1;
    };
    switch (e.kind) {
        case Expr::Kind::Ident: {
            int v = var_index(e.name);
            if (v >= 0) {
                if (!in_lhs[v]) fail("variable '" + e.name + "' does not occur in the source");
                return;
            }
            auto g = find_generator(e.name);
            if (!g || !sig.has_generator(*g)) fail("unknown generator or variable '" + e.name + "'");
            return;
        }
        case Expr::Kind::Lambda:
            if (e.power < 0 && sig.lambda && *sig.lambda == 0) fail("lambda^" + std::to_string(e.power) + " needs lambda != 0");
            return;
        case Expr::Kind::Leibniz: {
            int v = var_index(e.name2);
            if (v < 0 || !r.vars[v].seq) fail("leibniz needs a sequence variable");
            auto op = find_operator(e.name);
            if (!op || !sig.has_operator(*op)) fail("unknown operator '" + e.name + "'");
            return;
        }
        case Expr::Kind::Apply: {
            auto op = find_operator(e.name);
            if (!op || !sig.has_operator(*op)) fail("unknown operator '" + e.name + "'");
            break;
        }
        case Expr::Kind::Hole:
        case Expr::Kind::Plug:
            fail("contexts are not allowed in rule targets");
        default:
            break;
    }
    for (const auto& [s, t] : e.addends) check_target(*t, r, sig, line, offset, in_lhs);
    for (const auto& f : e.factors) check_target(*f, r, sig, line, offset, in_lhs);
    if (e.arg) check_target(*e.arg, r, sig, line, offset, in_lhs);
}

void mark_vars(const Pattern& p, std::vector<bool>& seen) {
    for (const auto& e : p) {
        if (e.kind == PatternElem::Kind::Var) seen[e.var] = true;
        else if (e.kind == PatternElem::Kind::Bracket) mark_vars(e.inner, seen);
    }
}

}  // namespace

RuleSchema parse_rule(std::string_view text, const Signature& sig, std::size_t line) {
    RuleSchema r;
    std::size_t colon = std::string_view::npos;
    std::size_t paren = text.find('(');
    std::size_t first_colon = text.find(':');
    if (paren != std::string_view::npos && paren < first_colon) {
        r.name = trim(text.substr(0, paren));
        std::size_t close = text.find(')', paren);
        if (close == std::string_view::npos) throw ParseError("unclosed variable list", line, paren + 1);
        // split on commas keeping spaces (constraint codes are space separated)
        std::string_view list = text.substr(paren + 1, close - paren - 1);
        std::size_t pos = 0;
        while (pos <= list.size()) {
            std::size_t comma = list.find(',', pos);
            std::string item = trim(list.substr(pos, comma == std::string_view::npos ? list.size() - pos : comma - pos));
            pos = comma == std::string_view::npos ? list.size() + 1 : comma + 1;
            if (item.empty()) continue;
            MetaVar v;
            auto c = item.find(':');
            v.name = trim(item.substr(0, c));
            if (!valid_name(v.name)) throw ParseError("bad variable name '" + v.name + "'", line, paren + 2);
            if (c != std::string::npos) {
                for (const auto& code : words(item.substr(c + 1))) {
                    if (code == "ne") v.ne = true;
                    else if (code == "nf") v.nf = true;
                    else if (code == "phi") v.phi = true;
                    else if (code == "nb") v.nb = true;
                    else if (code == "seq") v.seq = true;
                    else throw ParseError("unknown constraint '" + code + "' (expected ne, nf, phi, nb, seq)", line, paren + 2);
                }
            }
            auto g = find_generator(v.name);
            if (g && sig.has_generator(*g)) throw ParseError("variable '" + v.name + "' shadows a generator", line, paren + 2);
            r.vars.push_back(std::move(v));
        }
        colon = text.find(':', close);
    } else {
        colon = first_colon;
        if (colon == std::string_view::npos) throw ParseError("expected ':' after the rule name", line, 1);
        r.name = trim(text.substr(0, colon));
    }
    if (!valid_name(r.name)) throw ParseError("bad rule name '" + r.name + "'", line, 1);
    if (colon == std::string_view::npos) throw ParseError("expected ':' after the rule name", line, 1);
    std::string_view body = text.substr(colon + 1);
    std::size_t arrow = body.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected '->'", line, colon + 2);
    const std::size_t lhs_off = colon + 1;
    const std::size_t rhs_off = colon + 1 + arrow + 2;
    try {
        auto lhs = parse_expr(body.substr(0, arrow), line);
        r.lhs = pattern_from_expr(*lhs, r.vars, sig);
    } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), line, lhs_off + e.column());
    }
    if (r.lhs.empty()) throw ParseError("a rule source must not be 1", line, lhs_off + 1);
    std::vector<bool> in_lhs(r.vars.size(), false);
    mark_vars(r.lhs, in_lhs);
    for (std::size_t i = 0; i < r.vars.size(); ++i)
        if (!in_lhs[i] && r.vars[i].seq) throw ParseError("sequence variable must occur in the source", line, lhs_off + 1);
    r.target_text = trim(body.substr(arrow + 2));
    try {
        r.rhs = parse_expr(body.substr(arrow + 2), line);
    } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), line, rhs_off + e.column());
    }
    check_target(*r.rhs, r, sig, line, rhs_off, in_lhs);
    return r;
}

Polygraph parse_system(std::string_view text) {
    Polygraph X;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    bool have_lambda = false;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto sp = line.find_first_of(" \t");
        std::string key = line.substr(0, sp);
        std::string rest = sp == std::string::npos ? std::string() : trim(line.substr(sp));
        auto need_value = [&] {
            if (rest.empty()) throw ParseError("'" + key + "' needs a value", lineno, key.size() + 1);
        };
        if (key == "name") {
            need_value();
            X.name = rest;
        } else if (key == "ops") {
            for (const auto& w : words(rest)) {
                if (!valid_name(w)) throw ParseError("bad operator name '" + w + "'", lineno, 1);
                X.ops.push_back(intern_operator(w));
            }
        } else if (key == "gens") {
            for (const auto& w : words(rest)) {
                if (!valid_name(w) || w == "lambda" || w == "NF" || w == "leibniz")
                    throw ParseError("bad generator name '" + w + "'", lineno, 1);
                X.gens.push_back(intern_generator(w));
            }
        } else if (key == "lambda") {
            need_value();
            try {
                X.lambda = Rational(rest, 10);
                X.lambda.canonicalize();
            } catch (const std::invalid_argument&) {
                throw ParseError("lambda must be a rational p or p/q", lineno, sp + 2);
            }
            have_lambda = true;
        } else if (key == "phi") {
            need_value();
            X.phi = rest;
        } else if (key == "measure") {
            need_value();
            X.measure = rest;
        } else if (key == "companion") {
            need_value();
            X.companion = rest;
        } else if (key == "machine") {
            need_value();
            X.machine = rest;
        } else if (key == "rule") {
            need_value();
            Signature sig = X.signature();
            if (!have_lambda) sig.lambda.reset();
            try {
                X.rules.push_back(parse_rule(rest, sig, lineno));
            } catch (const ParseError& e) {
                std::string msg = std::string(e.what()).substr(std::string(e.what()).find(": ") + 2);
                throw ParseError(msg, lineno, sp + 1 + e.column());
            }
        } else {
            throw ParseError("unknown directive '" + key + "'", lineno, 1);
        }
    }
    return X;
}

Polygraph load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open system file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str());
}

std::string export_system(const Polygraph& X) {
    std::ostringstream out;
    if (!X.name.empty()) out << "name " << X.name << "\n";
    out << "ops";
    for (auto op : X.ops) out << ' ' << operator_name(op);
    out << "\ngens";
    for (auto g : X.gens) out << ' ' << generator_name(g);
    out << "\nlambda " << to_string(X.lambda) << "\n";
    if (!X.phi.empty()) out << "phi " << X.phi << "\n";
    if (!X.measure.empty()) out << "measure " << X.measure << "\n";
    if (!X.companion.empty()) out << "companion " << X.companion << "\n";
    if (!X.machine.empty()) out << "machine " << X.machine << "\n";
    for (const auto& r : X.rules) {
        out << "rule " << r.name;
        if (!r.vars.empty()) {
            out << '(';
            for (std::size_t i = 0; i < r.vars.size(); ++i) {
                const auto& v = r.vars[i];
                out << (i ? ", " : "") << v.name;
                std::string codes;
                if (v.seq) codes += " seq";
                if (v.ne) codes += " ne";
                if (v.nf) codes += " nf";
                if (v.phi) codes += " phi";
                if (v.nb) codes += " nb";
                if (!codes.empty()) out << ':' << codes;
            }
            out << ')';
        }
        out << ": " << to_string(r.lhs, r.vars) << " -> " << r.target_text << "\n";
    }
    return out.str();
}

}  // namespace orw
