// Exhaustive and random generation of monomials and contexts by size.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "orw/terms.hpp"

namespace orw {

struct Alphabet {
    std::vector<SymbolId> gens, ops;
};

class MonomialEnumerator {
public:
    explicit MonomialEnumerator(Alphabet alphabet);

    const Alphabet& alphabet() const { return alpha_; }
    // all monomials of exactly this size, memoized
    const std::vector<Monomial>& exactly(std::size_t n);
    std::vector<Monomial> up_to(std::size_t n);
    // Streams every monomial of size <= n. Sizes above memo_limit are built on
    // the fly from memoized smaller sizes instead of being stored.
    void for_each_up_to(std::size_t n, const std::function<void(const Monomial&)>& fn, std::size_t memo_limit = 7);
    std::uint64_t count(std::size_t n);

private:
    const std::vector<Monomial>& atoms_of(std::size_t n);

    Alphabet alpha_;
    std::vector<std::vector<Monomial>> seq_;    // by size
    std::vector<std::vector<Monomial>> atoms_;  // single atoms by size
    std::vector<std::uint64_t> counts_;
};

// Contexts whose size (hole counted as one atom) is exactly / at most n.
std::vector<Context> contexts_of_size(MonomialEnumerator& en, std::size_t n);
std::vector<Context> contexts_up_to(MonomialEnumerator& en, std::size_t n);

Monomial random_monomial(std::mt19937_64& rng, const Alphabet& alpha, std::size_t size);

}  // namespace orw
