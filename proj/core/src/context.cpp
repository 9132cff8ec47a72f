#include "orw/terms.hpp"

namespace orw {
namespace {

std::vector<Atom> concat(const std::vector<Atom>& a, std::span<const Atom> mid, const std::vector<Atom>& b) {
    std::vector<Atom> out;
    out.reserve(a.size() + mid.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::size_t atoms_size(const std::vector<Atom>& v) {
    std::size_t s = 0;
    for (const Atom& a : v) s += a.is_bracket ? 1 + a.inner.size() : 1;
    return s;
}

std::size_t atoms_flat(const std::vector<Atom>& v) {
    std::size_t s = 0;
    for (const Atom& a : v) s += a.is_bracket ? 2 + a.inner.flat_length() : 1;
    return s;
}

}  // namespace

Context::Context() : frames_(1) {}

Context::Context(std::vector<ContextFrame> frames) : frames_(std::move(frames)) {
    if (frames_.empty()) frames_.resize(1);
}

Context Context::left_right(const Monomial& left, const Monomial& right) {
    ContextFrame f;
    f.left.assign(left.atoms().begin(), left.atoms().end());
    f.right.assign(right.atoms().begin(), right.atoms().end());
    return Context({f});
}

bool Context::is_trivial() const {
    return frames_.size() == 1 && frames_[0].left.empty() && frames_[0].right.empty();
}

std::size_t Context::size() const {
    std::size_t s = 1;
    for (std::size_t k = 0; k < frames_.size(); ++k) {
        s += atoms_size(frames_[k].left) + atoms_size(frames_[k].right);
        if (k + 1 < frames_.size()) s += 1;
    }
    return s;
}

std::size_t Context::hole_flat_offset() const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < frames_.size(); ++k) {
        off += atoms_flat(frames_[k].left);
        if (k + 1 < frames_.size()) off += 1;
    }
    return off;
}

Monomial Context::plug(const Monomial& m) const {
    const ContextFrame& last = frames_.back();
    Monomial cur(concat(last.left, m.atoms(), last.right));
    for (std::size_t k = frames_.size() - 1; k-- > 0;) {
        Atom a{frames_[k].op, true, cur};
        cur = Monomial(concat(frames_[k].left, std::span<const Atom>(&a, 1), frames_[k].right));
    }
    return cur;
}

Polynomial Context::plug(const Polynomial& a) const {
    Polynomial out;
    for (const auto& [m, c] : a.terms()) out.add_term(plug(m), c);
    return out;
}

Context Context::compose(const Context& inner) const {
    std::vector<ContextFrame> out(frames_.begin(), frames_.end() - 1);
    const ContextFrame& p = frames_.back();
    const ContextFrame& q = inner.frames_.front();
    ContextFrame merged;
    merged.left = concat(p.left, q.left, {});
    merged.right = concat(q.right, {}, p.right);
    merged.op = q.op;
    out.push_back(std::move(merged));
    out.insert(out.end(), inner.frames_.begin() + 1, inner.frames_.end());
    return Context(std::move(out));
}

Context Context::within(const Monomial& left, const Monomial& right) const {
    return Context::left_right(left, right).compose(*this);
}

Context Context::within_bracket(SymbolId op) const {
    std::vector<ContextFrame> out;
    ContextFrame top;
    top.op = op;
    out.push_back(std::move(top));
    out.insert(out.end(), frames_.begin(), frames_.end());
    return Context(std::move(out));
}

}  // namespace orw
