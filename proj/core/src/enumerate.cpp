#include "orw/enumerate.hpp"

namespace orw {

MonomialEnumerator::MonomialEnumerator(Alphabet alphabet) : alpha_(std::move(alphabet)) {
    seq_.push_back({Monomial()});
    atoms_.push_back({});
}

const std::vector<Monomial>& MonomialEnumerator::atoms_of(std::size_t n) {
    while (atoms_.size() <= n) {
        std::size_t k = atoms_.size();
        std::vector<Monomial> out;
        if (k == 1) {
            for (SymbolId g : alpha_.gens) out.push_back(Monomial::generator(g));
        }
        const auto& inner = exactly(k - 1);
        for (SymbolId op : alpha_.ops)
            for (const Monomial& m : inner) out.push_back(Monomial::bracket(op, m));
        atoms_.push_back(std::move(out));
    }
    return atoms_[n];
}

const std::vector<Monomial>& MonomialEnumerator::exactly(std::size_t n) {
    while (seq_.size() <= n) {
        std::size_t k = seq_.size();
        std::vector<Monomial> out;
        for (std::size_t first = 1; first <= k; ++first) {
            const auto& heads = atoms_of(first);
            const auto& tails = exactly(k - first);
            for (const Monomial& h : heads)
                for (const Monomial& t : tails) out.push_back(h * t);
        }
        seq_.push_back(std::move(out));
    }
    return seq_[n];
}

std::vector<Monomial> MonomialEnumerator::up_to(std::size_t n) {
    std::vector<Monomial> out;
    for (std::size_t k = 0; k <= n; ++k) {
        const auto& v = exactly(k);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

void MonomialEnumerator::for_each_up_to(std::size_t n, const std::function<void(const Monomial&)>& fn,
                                        std::size_t memo_limit) {
    for (std::size_t k = 0; k <= n; ++k) {
        if (k <= memo_limit || k < seq_.size()) {
            for (const Monomial& m : exactly(k)) fn(m);
            continue;
        }
        for (std::size_t first = 1; first <= k; ++first) {
            if (first == k) {
                // single atoms of size k: brackets around size k-1 (streamed recursively if needed)
                if (k == 1) {
                    for (SymbolId g : alpha_.gens) fn(Monomial::generator(g));
                }
                if (k - 1 < seq_.size() || k - 1 <= memo_limit) {
                    for (SymbolId op : alpha_.ops)
                        for (const Monomial& m : exactly(k - 1)) fn(Monomial::bracket(op, m));
                } else {
                    for (SymbolId op : alpha_.ops) {
                        std::size_t target = k - 1;
                        for_each_up_to(target, [&](const Monomial& m) {
                            if (m.size() == target) fn(Monomial::bracket(op, m));
                        }, memo_limit);
                    }
                }
                continue;
            }
            const auto& heads = atoms_of(first);
            const auto& tails = exactly(k - first);
            for (const Monomial& h : heads)
                for (const Monomial& t : tails) fn(h * t);
        }
    }
}

std::uint64_t MonomialEnumerator::count(std::size_t n) {
    // c(0)=1, a(1)=|Z|+|Ω|, a(k)=|Ω| c(k-1), c(k)=sum a(j) c(k-j)
    std::vector<std::uint64_t> c{1}, a{0};
    for (std::size_t k = 1; k <= n; ++k) {
        a.push_back((k == 1 ? alpha_.gens.size() : 0) + alpha_.ops.size() * c[k - 1]);
        std::uint64_t s = 0;
        for (std::size_t j = 1; j <= k; ++j) s += a[j] * c[k - j];
        c.push_back(s);
    }
    return c[n];
}

std::vector<Context> contexts_of_size(MonomialEnumerator& en, std::size_t n) {
    std::vector<Context> out;
    if (n == 0) return out;
    // left * centre * right where centre is the hole or op(context)
    for (std::size_t centre = 1; centre <= n; ++centre) {
        std::vector<Context> centres;
        if (centre == 1) centres.push_back(Context());
        else {
            for (SymbolId op : en.alphabet().ops)
                for (const Context& c : contexts_of_size(en, centre - 1)) centres.push_back(c.within_bracket(op));
        }
        for (std::size_t l = 0; l + centre <= n; ++l) {
            std::size_t r = n - centre - l;
            for (const Monomial& left : en.exactly(l))
                for (const Monomial& right : en.exactly(r))
                    for (const Context& c : centres) out.push_back(c.within(left, right));
        }
    }
    return out;
}

std::vector<Context> contexts_up_to(MonomialEnumerator& en, std::size_t n) {
    std::vector<Context> out;
    for (std::size_t k = 1; k <= n; ++k) {
        auto v = contexts_of_size(en, k);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

Monomial random_monomial(std::mt19937_64& rng, const Alphabet& alpha, std::size_t size) {
    if (size == 0) return Monomial();
    std::vector<Atom> atoms;
    std::size_t left = size;
    while (left > 0) {
        std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(left, 1 + left / 2))(rng);
        if (k == 1 && !alpha.gens.empty() &&
            (alpha.ops.empty() || std::uniform_int_distribution<int>(0, 3)(rng) != 0)) {
            SymbolId g = alpha.gens[std::uniform_int_distribution<std::size_t>(0, alpha.gens.size() - 1)(rng)];
            atoms.push_back(Atom{g, false, {}});
        } else if (!alpha.ops.empty()) {
            SymbolId op = alpha.ops[std::uniform_int_distribution<std::size_t>(0, alpha.ops.size() - 1)(rng)];
            atoms.push_back(Atom{op, true, random_monomial(rng, alpha, k - 1)});
        } else {
            continue;
        }
        left -= k;
    }
    return Monomial(std::move(atoms));
}

}  // namespace orw
