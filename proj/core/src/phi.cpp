#include "orw/phi.hpp"

#include <stdexcept>

namespace orw {

namespace {

constexpr SymbolId kNone = ~SymbolId{0};

SymbolId op_id(std::string_view name) {
    auto id = find_operator(name);
    return id ? *id : kNone;
}

bool is_op(const Atom& a, SymbolId op) { return a.is_bracket && a.sym == op; }

// no two adjacent P atoms anywhere
bool no_pp(std::span<const Atom> atoms, SymbolId p) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0 && is_op(atoms[i], p) && is_op(atoms[i - 1], p)) return false;
        if (atoms[i].is_bracket && !no_pp(atoms[i].inner.atoms(), p)) return false;
    }
    return true;
}

bool d_theta_atom(const Atom& a, SymbolId d) {
    const Atom* cur = &a;
    while (cur->is_bracket) {
        if (cur->sym != d || cur->inner.breadth() != 1) return false;
        cur = &cur->inner.atoms()[0];
    }
    return true;
}

bool phi_d(std::span<const Atom> atoms, SymbolId d) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i];
        if (is_op(a, d) && a.inner.is_one()) return false;
        if (i > 0 && is_op(a, d) && is_op(atoms[i - 1], d)) return false;
        if (a.is_bracket && !phi_d(a.inner.atoms(), d)) return false;
    }
    return true;
}

bool phi_pd(std::span<const Atom> atoms, SymbolId d, SymbolId p) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Atom& a = atoms[i];
        if (i > 0 && a.is_bracket && atoms[i - 1].is_bracket) return false;
        if (is_op(a, d)) {
            if (a.inner.is_one()) return false;
            if (a.inner.breadth() == 1 && is_op(a.inner.atoms()[0], p)) return false;
        }
        if (a.is_bracket && !phi_pd(a.inner.atoms(), d, p)) return false;
    }
    return true;
}

bool phi_i(std::span<const Atom> atoms) {
    for (const Atom& a : atoms) {
        if (!a.is_bracket) continue;
        if (a.inner.breadth() == 1 && is_op(a.inner.atoms()[0], a.sym)) return false;
        if (!phi_i(a.inner.atoms())) return false;
    }
    return true;
}

}  // namespace

const std::vector<std::string>& phi_names() {
    static const std::vector<std::string> names{"Phi_P", "Phi_D", "Phi_PD", "D_theta_star", "Phi_I"};
    return names;
}

bool phi_member(std::string_view name, const Monomial& m) {
    if (name == "Phi_P") return no_pp(m.atoms(), op_id("P"));
    if (name == "Phi_D") return phi_d(m.atoms(), op_id("D"));
    if (name == "Phi_PD") return phi_pd(m.atoms(), op_id("D"), op_id("P"));
    if (name == "D_theta_star") {
        SymbolId d = op_id("D");
        for (const Atom& a : m.atoms())
            if (!d_theta_atom(a, d)) return false;
        return true;
    }
    if (name == "Phi_I") return phi_i(m.atoms());
    throw std::invalid_argument("unknown Phi predicate '" + std::string(name) + "'");
}

std::function<bool(const Monomial&)> phi_predicate(std::string_view name) {
    phi_member(name, Monomial());  // validates the name
    std::string n(name);
    return [n](const Monomial& m) { return phi_member(n, m); };
}

}  // namespace orw
