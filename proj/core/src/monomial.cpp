#include "orw/terms.hpp"

#include <algorithm>

namespace orw {
namespace {

inline std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline std::size_t atom_hash(const Atom& a) {
    std::size_t h = a.is_bracket ? 0x51ed27 : 0x2545f4;
    h = mix(h, a.sym);
    if (a.is_bracket) h = mix(h, a.inner.hash() + 1);
    return h;
}

int compare_seq(std::span<const Atom> a, std::span<const Atom> b, bool nested) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Atom& x = a[i];
        const Atom& y = b[i];
        if (x.is_bracket != y.is_bracket) return x.is_bracket ? 1 : -1;
        if (x.sym != y.sym) return x.sym < y.sym ? -1 : 1;
        if (x.is_bracket) {
            if (int c = compare_seq(x.inner.atoms(), y.inner.atoms(), true)) return c;
        }
    }
    if (a.size() == b.size()) return 0;
    // inside a bracket the shorter word continues with r:OP, which sorts last
    bool a_shorter = a.size() < b.size();
    if (nested) return a_shorter ? 1 : -1;
    return a_shorter ? -1 : 1;
}

}  // namespace

Monomial::Monomial(std::vector<Atom> atoms) {
    if (atoms.empty()) return;
    auto rep = std::make_shared<Rep>();
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const Atom& a : atoms) {
        h = mix(h, atom_hash(a));
        if (a.is_bracket) {
            rep->size += 1 + static_cast<std::uint32_t>(a.inner.size());
            rep->flat_length += 2 + static_cast<std::uint32_t>(a.inner.flat_length());
            rep->ops += 1 + static_cast<std::uint32_t>(a.inner.operator_count());
            rep->depth = std::max<std::uint32_t>(rep->depth, 1 + static_cast<std::uint32_t>(a.inner.depth()));
        } else {
            rep->size += 1;
            rep->flat_length += 1;
        }
    }
    rep->hash = h;
    rep->atoms = std::move(atoms);
    rep_ = std::move(rep);
}

Monomial Monomial::generator(SymbolId g) { return Monomial({Atom{g, false, {}}}); }

Monomial Monomial::bracket(SymbolId op, Monomial inner) {
    return Monomial({Atom{op, true, std::move(inner)}});
}

std::span<const Atom> Monomial::atoms() const {
    if (!rep_) return {};
    return rep_->atoms;
}

std::size_t Monomial::breadth() const { return rep_ ? rep_->atoms.size() : 0; }
std::size_t Monomial::depth() const { return rep_ ? rep_->depth : 0; }
std::size_t Monomial::size() const { return rep_ ? rep_->size : 0; }
std::size_t Monomial::flat_length() const { return rep_ ? rep_->flat_length : 0; }
std::size_t Monomial::operator_count() const { return rep_ ? rep_->ops : 0; }
std::size_t Monomial::hash() const { return rep_ ? rep_->hash : 0x1234567; }

Monomial Monomial::slice(std::size_t begin, std::size_t end) const {
    auto a = atoms();
    if (begin == 0 && end == a.size()) return *this;
    return Monomial(std::vector<Atom>(a.begin() + static_cast<std::ptrdiff_t>(begin),
                                      a.begin() + static_cast<std::ptrdiff_t>(end)));
}

bool Monomial::is_single_bracket() const { return breadth() == 1 && atoms()[0].is_bracket; }

bool operator==(const Monomial& a, const Monomial& b) {
    if (a.rep_ == b.rep_) return true;
    if (!a.rep_ || !b.rep_) return false;
    if (a.rep_->hash != b.rep_->hash || a.rep_->size != b.rep_->size) return false;
    return a.rep_->atoms == b.rep_->atoms;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    std::vector<Atom> atoms;
    atoms.reserve(a.breadth() + b.breadth());
    atoms.insert(atoms.end(), a.atoms().begin(), a.atoms().end());
    atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
    return Monomial(std::move(atoms));
}

int compare_flat(const Monomial& a, const Monomial& b) {
    if (a == b) return 0;
    return compare_seq(a.atoms(), b.atoms(), false);
}

bool PresentationLess::operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return compare_flat(a, b) > 0;
}

Measure measure(const Monomial& m) { return {m.breadth(), m.depth(), m.size()}; }

}  // namespace orw
