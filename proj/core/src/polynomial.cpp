#include "orw/terms.hpp"

namespace orw {

Polynomial::Polynomial(const Monomial& m, const Rational& c) {
    if (c != 0) terms_.emplace(m, c);
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(Monomial(), c); }

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<Monomial> Polynomial::support() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.push_back(m);
    return out;
}

std::size_t Polynomial::hash() const {
    std::size_t h = terms_.size();
    for (const auto& [m, c] : terms_) {
        h = h * 1000003u ^ m.hash();
        h = h * 1000003u ^ std::hash<std::string>{}(c.get_str());
    }
    return h;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& b) {
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& b) {
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Polynomial Polynomial::apply(SymbolId op) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(Monomial::bracket(op, m), c);
    return out;
}

Polynomial Polynomial::left_multiply(const Monomial& m) const {
    Polynomial out;
    for (const auto& [t, c] : terms_) out.terms_.emplace(m * t, c);
    return out;
}

Polynomial Polynomial::right_multiply(const Monomial& m) const {
    Polynomial out;
    for (const auto& [t, c] : terms_) out.terms_.emplace(t * m, c);
    return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [x, c] : a.terms_)
        for (const auto& [y, d] : b.terms_) out.add_term(x * y, c * d);
    return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
        if (!(i->first == j->first) || i->second != j->second) return false;
    return true;
}

}  // namespace orw
