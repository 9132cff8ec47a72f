#include "orw/derivation.hpp"

#include <stdexcept>

namespace orw {

int compare_weights(const Weight& a, const Weight& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

std::string to_string(const Weight& w) {
    std::string out = "(";
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
    return out + ")";
}

Weight derivation_value(const DerivationSpec& spec, const Monomial& m) {
    Weight total(spec.arity, 0);
    auto atoms = m.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i];
        Weight w = a.is_bracket ? spec.op_act(a.sym, derivation_value(spec, a.inner)) : spec.gen_weight(a.sym);
        if (atoms.size() > 1) w = spec.act(m.slice(0, i), w, m.slice(i + 1, atoms.size()));
        for (std::size_t k = 0; k < spec.arity; ++k) total[k] += w[k];
    }
    return total;
}

long long count_occurrences(const CountMeasureSpec& spec, const Monomial& m) {
    ConstraintOracle none;
    none.normal = [](const Monomial&) { return true; };
    return static_cast<long long>(find_occurrences(spec.pattern, spec.vars, m, none).size());
}

const std::vector<std::string>& derivation_names() {
    static const std::vector<std::string> names{"diff-weight", "rb-weight", "pd-weight", "op-count"};
    return names;
}

DerivationSpec derivation_by_name(std::string_view name) {
    DerivationSpec d;
    d.name = std::string(name);
    if (name == "diff-weight") {
        d.arity = 3;
        d.gen_weight = [](SymbolId) { return Weight{0, 0, 1}; };
        d.act = [](const Monomial&, const Weight& n, const Monomial&) { return n; };
        d.op_act = [](SymbolId, const Weight& n) {
            return Weight{std::max(n[0] + n[1] + n[2] - 1, 0LL), n[1] + 1, n[2]};
        };
        return d;
    }
    if (name == "rb-weight" || name == "pd-weight") {
        // every operator acts alike; in pd-weight these are D and P
        d.arity = 2;
        d.gen_weight = [](SymbolId) { return Weight{0, 0}; };
        d.act = [](const Monomial& l, const Weight& n, const Monomial& r) {
            long long deg = static_cast<long long>(l.operator_count() + r.operator_count());
            return Weight{n[0], n[1] + deg * n[0]};
        };
        d.op_act = [](SymbolId, const Weight& n) { return Weight{n[0] + 1, n[1] + n[0] + 1}; };
        return d;
    }
    if (name == "op-count") {
        d.arity = 1;
        d.gen_weight = [](SymbolId) { return Weight{0}; };
        d.act = [](const Monomial&, const Weight& n, const Monomial&) { return n; };
        d.op_act = [](SymbolId, const Weight& n) { return Weight{n[0] + 1}; };
        return d;
    }
    throw std::invalid_argument("unknown derivation '" + std::string(name) + "'");
}

namespace {

void collect_idents(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == Expr::Kind::Ident) out.push_back(e.name);
    for (const auto& [s, t] : e.addends) collect_idents(*t, out);
    for (const auto& f : e.factors) collect_idents(*f, out);
    if (e.arg) collect_idents(*e.arg, out);
}

}  // namespace

CountMeasureSpec count_measure(std::string_view pattern_text, const Polygraph& X) {
    CountMeasureSpec spec;
    spec.name = "count:" + std::string(pattern_text);
    auto e = parse_expr(pattern_text);
    std::vector<std::string> ids;
    collect_idents(*e, ids);
    Signature sig = X.signature();
    for (const auto& id : ids) {
        auto g = find_generator(id);
        if (g && sig.has_generator(*g)) continue;
        bool known = false;
        for (const auto& v : spec.vars) known = known || v.name == id;
        if (!known) spec.vars.push_back(MetaVar{id});
    }
    spec.pattern = pattern_from_expr(*e, spec.vars, sig);
    return spec;
}

Weight TerminationMeasure::value(const Monomial& m) const {
    if (derivation) return derivation_value(*derivation, m);
    if (count) return Weight{count_occurrences(*count, m)};
    throw std::logic_error("empty termination measure");
}

TerminationMeasure measure_by_name(std::string_view name, const Polygraph& X) {
    TerminationMeasure t;
    t.name = std::string(name);
    if (name.starts_with("count:")) t.count = count_measure(name.substr(6), X);
    else t.derivation = derivation_by_name(name);
    return t;
}

}  // namespace orw
