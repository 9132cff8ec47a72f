#include "orw/pattern.hpp"

#include <algorithm>

namespace orw {

namespace {

void pattern_into(const Expr& e, const std::vector<MetaVar>& vars, const Signature& sig, Pattern& out) {
    auto fail = [&](const std::string& msg) -> ParseError { return ParseError(msg, 1, e.column); };
    switch (e.kind) {
        case Expr::Kind::Product:
            for (const auto& f : e.factors) pattern_into(*f, vars, sig, out);
            return;
        case Expr::Kind::Number:
            if (e.number != 1) throw fail("a rule source must be a monomial");
            return;
        case Expr::Kind::Ident: {
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (vars[i].name == e.name) {
                    PatternElem p;
                    p.kind = PatternElem::Kind::Var;
                    p.var = static_cast<int>(i);
                    out.push_back(std::move(p));
                    return;
                }
            }
            auto g = find_generator(e.name);
            if (!g || !sig.has_generator(*g)) throw fail("unknown generator or variable '" + e.name + "'");
            PatternElem p;
            p.sym = *g;
            out.push_back(std::move(p));
            return;
        }
        case Expr::Kind::Apply: {
            auto op = find_operator(e.name);
            if (!op || !sig.has_operator(*op)) throw fail("unknown operator '" + e.name + "'");
            PatternElem p;
            p.kind = PatternElem::Kind::Bracket;
            p.sym = *op;
            pattern_into(*e.arg, vars, sig, p.inner);
            out.push_back(std::move(p));
            return;
        }
        default:
            throw fail("a rule source must be a monomial pattern");
    }
}

void print_pattern(const Pattern& p, const std::vector<MetaVar>& vars, std::string& out) {
    bool first = true;
    for (const auto& e : p) {
        if (!first) out += ' ';
        first = false;
        switch (e.kind) {
            case PatternElem::Kind::Gen: out += generator_name(e.sym); break;
            case PatternElem::Kind::Var: out += vars[e.var].name; break;
            case PatternElem::Kind::Bracket:
                out += operator_name(e.sym) + "(";
                print_pattern(e.inner, vars, out);
                out += ")";
                break;
        }
    }
}

void instantiate_into(const Pattern& p, const Binding& b, std::vector<Atom>& out) {
    for (const auto& e : p) {
        switch (e.kind) {
            case PatternElem::Kind::Gen: out.push_back(Atom{e.sym, false, {}}); break;
            case PatternElem::Kind::Var: {
                auto a = b.values[e.var].atoms();
                out.insert(out.end(), a.begin(), a.end());
                break;
            }
            case PatternElem::Kind::Bracket: {
                std::vector<Atom> inner;
                instantiate_into(e.inner, b, inner);
                out.push_back(Atom{e.sym, true, Monomial(std::move(inner))});
                break;
            }
        }
    }
}

bool atom_matches_head(const PatternElem& e, const Atom& a) {
    switch (e.kind) {
        case PatternElem::Kind::Gen: return !a.is_bracket && a.sym == e.sym;
        case PatternElem::Kind::Bracket: return a.is_bracket && a.sym == e.sym;
        default: return true;
    }
}

class Matcher {
public:
    Matcher(const std::vector<MetaVar>& vars, const ConstraintOracle& oracle) : vars_(vars), oracle_(oracle) {
        b_.values.assign(vars.size(), Monomial());
        b_.parts.assign(vars.size(), {});
        bound_.assign(vars.size(), 0);
    }

    using Cont = std::function<void()>;
    void seq(std::span<const PatternElem> pat, std::size_t pi, std::span<const Atom> atoms, std::size_t ai,
             std::size_t end, const Cont& cont) {
        if (pi == pat.size()) {
            if (ai == end) cont();
            return;
        }
        const PatternElem& e = pat[pi];
        switch (e.kind) {
            case PatternElem::Kind::Gen:
                if (ai < end && !atoms[ai].is_bracket && atoms[ai].sym == e.sym) seq(pat, pi + 1, atoms, ai + 1, end, cont);
                return;
            case PatternElem::Kind::Bracket: {
                if (ai >= end || !atoms[ai].is_bracket || atoms[ai].sym != e.sym) return;
                auto inner = atoms[ai].inner.atoms();
                Cont next = [&] { seq(pat, pi + 1, atoms, ai + 1, end, cont); };
                seq(std::span<const PatternElem>(e.inner), 0, inner, 0, inner.size(), next);
                return;
            }
            case PatternElem::Kind::Var: {
                const MetaVar& v = vars_[e.var];
                if (bound_[e.var]) {
                    auto want = b_.values[e.var].atoms();
                    if (ai + want.size() > end) return;
                    for (std::size_t k = 0; k < want.size(); ++k)
                        if (!(atoms[ai + k] == want[k])) return;
                    seq(pat, pi + 1, atoms, ai + want.size(), end, cont);
                    return;
                }
                // the rest of the pattern needs at least this many atoms
                std::size_t need = 0;
                for (std::size_t k = pi + 1; k < pat.size(); ++k)
                    if (pat[k].kind != PatternElem::Kind::Var) ++need;
                if (ai + need > end) return;
                std::size_t max_len = end - ai - need;
                std::size_t min_len = v.seq ? 2 : 0;
                for (std::size_t len = min_len; len <= max_len; ++len) {
                    Monomial value = slice(atoms, ai, ai + len);
                    std::vector<Monomial> parts;
                    if (v.seq) {
                        bool ok = true;
                        for (std::size_t k = ai; k < ai + len && ok; ++k) {
                            Monomial one({atoms[k]});
                            ok = satisfies(v, one, oracle_);
                            parts.push_back(std::move(one));
                        }
                        if (!ok) continue;
                    } else if (!satisfies(v, value, oracle_)) {
                        continue;
                    }
                    b_.values[e.var] = std::move(value);
                    b_.parts[e.var] = std::move(parts);
                    bound_[e.var] = 1;
                    seq(pat, pi + 1, atoms, ai + len, end, cont);
                    bound_[e.var] = 0;
                    b_.values[e.var] = Monomial();
                    b_.parts[e.var].clear();
                }
                return;
            }
        }
    }

    const Binding& binding() const { return b_; }

private:
    static Monomial slice(std::span<const Atom> atoms, std::size_t b, std::size_t e) {
        return Monomial(std::vector<Atom>(atoms.begin() + b, atoms.begin() + e));
    }

    const std::vector<MetaVar>& vars_;
    const ConstraintOracle& oracle_;
    Binding b_;
    std::vector<char> bound_;
};

struct LevelFrame {
    std::span<const Atom> atoms;
    std::size_t index;  // bracket atom entered at this level
};

Context context_at(const std::vector<LevelFrame>& stack, std::span<const Atom> atoms, std::size_t i, std::size_t j,
                   std::vector<std::size_t>& path) {
    std::vector<ContextFrame> frames;
    for (const auto& f : stack) {
        ContextFrame cf;
        cf.left.assign(f.atoms.begin(), f.atoms.begin() + f.index);
        cf.right.assign(f.atoms.begin() + f.index + 1, f.atoms.end());
        cf.op = f.atoms[f.index].sym;
        frames.push_back(std::move(cf));
        path.push_back(f.index);
    }
    ContextFrame last;
    last.left.assign(atoms.begin(), atoms.begin() + i);
    last.right.assign(atoms.begin() + j, atoms.end());
    frames.push_back(std::move(last));
    return Context(std::move(frames));
}

void occurrences_rec(const Pattern& p, const std::vector<MetaVar>& vars, std::span<const Atom> atoms,
                     std::vector<LevelFrame>& stack, std::size_t flat_base, const ConstraintOracle& oracle,
                     std::vector<Occurrence>& out) {
    const std::size_t n = atoms.size();
    const bool head_fixed = !p.empty() && p.front().kind != PatternElem::Kind::Var;
    const bool tail_fixed = !p.empty() && p.back().kind != PatternElem::Kind::Var;
    std::size_t flat_i = flat_base;
    for (std::size_t i = 0; i < n; ++i) {
        if (!head_fixed || atom_matches_head(p.front(), atoms[i])) {
            std::size_t flat_j = flat_i;
            for (std::size_t j = i + 1; j <= n; ++j) {
                flat_j += atoms[j - 1].is_bracket ? 2 + atoms[j - 1].inner.flat_length() : 1;
                if (tail_fixed && !atom_matches_head(p.back(), atoms[j - 1])) continue;
                Matcher m(vars, oracle);
                m.seq(std::span<const PatternElem>(p), 0, atoms, i, j, [&] {
                    Occurrence o;
                    o.binding = m.binding();
                    o.begin = i;
                    o.end = j;
                    o.flat_start = flat_i;
                    o.flat_end = flat_j;
                    o.context = context_at(stack, atoms, i, j, o.path);
                    out.push_back(std::move(o));
                });
            }
        }
        if (atoms[i].is_bracket) {
            stack.push_back({atoms, i});
            occurrences_rec(p, vars, atoms[i].inner.atoms(), stack, flat_i + 1, oracle, out);
            stack.pop_back();
        }
        flat_i += atoms[i].is_bracket ? 2 + atoms[i].inner.flat_length() : 1;
    }
}

void factors_rec(std::span<const Atom> atoms, std::vector<LevelFrame>& stack, std::size_t flat_base,
                 std::size_t max_breadth, const FactorLookup& lookup, std::vector<std::pair<std::size_t, Occurrence>>& out) {
    const std::size_t n = atoms.size();
    std::size_t flat_i = flat_base;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t flat_j = flat_i;
        for (std::size_t j = i + 1; j <= n && j - i <= max_breadth; ++j) {
            flat_j += atoms[j - 1].is_bracket ? 2 + atoms[j - 1].inner.flat_length() : 1;
            Monomial f(std::vector<Atom>(atoms.begin() + i, atoms.begin() + j));
            const std::vector<std::size_t>* rules = lookup(f);
            if (!rules) continue;
            for (std::size_t r : *rules) {
                Occurrence o;
                o.begin = i;
                o.end = j;
                o.flat_start = flat_i;
                o.flat_end = flat_j;
                o.context = context_at(stack, atoms, i, j, o.path);
                out.emplace_back(r, std::move(o));
            }
        }
        if (atoms[i].is_bracket) {
            stack.push_back({atoms, i});
            factors_rec(atoms[i].inner.atoms(), stack, flat_i + 1, max_breadth, lookup, out);
            stack.pop_back();
        }
        flat_i += atoms[i].is_bracket ? 2 + atoms[i].inner.flat_length() : 1;
    }
}

}  // namespace

std::vector<std::pair<std::size_t, Occurrence>> find_factor_occurrences(const Monomial& m, std::size_t max_breadth,
                                                                        const FactorLookup& lookup) {
    std::vector<std::pair<std::size_t, Occurrence>> out;
    std::vector<LevelFrame> stack;
    factors_rec(m.atoms(), stack, 0, max_breadth, lookup, out);
    return out;
}

Pattern pattern_from_expr(const Expr& e, const std::vector<MetaVar>& vars, const Signature& sig) {
    Pattern p;
    pattern_into(e, vars, sig, p);
    return p;
}

Pattern literal_pattern(const Monomial& m) {
    Pattern p;
    for (const Atom& a : m.atoms()) {
        PatternElem e;
        e.sym = a.sym;
        if (a.is_bracket) {
            e.kind = PatternElem::Kind::Bracket;
            e.inner = literal_pattern(a.inner);
        }
        p.push_back(std::move(e));
    }
    return p;
}

bool is_literal(const Pattern& p) {
    for (const auto& e : p) {
        if (e.kind == PatternElem::Kind::Var) return false;
        if (e.kind == PatternElem::Kind::Bracket && !is_literal(e.inner)) return false;
    }
    return true;
}

std::size_t pattern_fixed_size(const Pattern& p) {
    std::size_t n = 0;
    for (const auto& e : p) {
        if (e.kind == PatternElem::Kind::Gen) ++n;
        else if (e.kind == PatternElem::Kind::Bracket) n += 1 + pattern_fixed_size(e.inner);
    }
    return n;
}

std::string to_string(const Pattern& p, const std::vector<MetaVar>& vars) {
    if (p.empty()) return "1";
    std::string out;
    print_pattern(p, vars, out);
    return out;
}

Monomial instantiate(const Pattern& p, const Binding& b) {
    std::vector<Atom> atoms;
    instantiate_into(p, b, atoms);
    return Monomial(std::move(atoms));
}

int compare_bindings(const Binding& a, const Binding& b) {
    PresentationLess less;
    for (std::size_t i = 0; i < a.values.size() && i < b.values.size(); ++i) {
        if (less(a.values[i], b.values[i])) return -1;
        if (less(b.values[i], a.values[i])) return 1;
    }
    return 0;
}

bool satisfies(const MetaVar& v, const Monomial& m, const ConstraintOracle& oracle) {
    if (v.ne && m.is_one()) return false;
    if (v.nb && m.is_single_bracket()) return false;
    if (v.phi && !(oracle.phi ? oracle.phi(m) : oracle.normal(m))) return false;
    if (v.nf && !(oracle.phi ? oracle.phi(m) : oracle.normal(m))) return false;
    return true;
}

std::vector<Occurrence> find_occurrences(const Pattern& p, const std::vector<MetaVar>& vars, const Monomial& m,
                                         const ConstraintOracle& oracle) {
    std::vector<Occurrence> out;
    std::vector<LevelFrame> stack;
    occurrences_rec(p, vars, m.atoms(), stack, 0, oracle, out);
    std::stable_sort(out.begin(), out.end(), [](const Occurrence& a, const Occurrence& b) {
        if (a.flat_end != b.flat_end) return a.flat_end < b.flat_end;
        if (a.flat_start != b.flat_start) return a.flat_start > b.flat_start;
        return compare_bindings(a.binding, b.binding) < 0;
    });
    return out;
}

std::vector<Binding> match_whole(const Pattern& p, const std::vector<MetaVar>& vars, const Monomial& m,
                                 const ConstraintOracle& oracle) {
    std::vector<Binding> out;
    Matcher mt(vars, oracle);
    auto atoms = m.atoms();
    mt.seq(std::span<const PatternElem>(p), 0, atoms, 0, atoms.size(), [&] { out.push_back(mt.binding()); });
    std::stable_sort(out.begin(), out.end(), [](const Binding& a, const Binding& b) { return compare_bindings(a, b) < 0; });
    return out;
}

}  // namespace orw
