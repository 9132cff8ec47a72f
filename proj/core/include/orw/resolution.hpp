// Squier generators of a reduced convergent system, the right and bracketed
// contraction on monomials, and boundaries of low-dimensional generators.
#pragma once

#include <string>
#include <vector>

#include "orw/phi.hpp"
#include "orw/rewriter.hpp"

namespace orw {

enum class EssentialKind { Reduced, EssentialGen, EssentialBracket, NonEssential };
std::string to_string(EssentialKind k);

EssentialKind essential_kind(Rewriter& rw, const Monomial& m);

// Reduction path from a to its normal form: right part first (inside a
// leading bracket before that), then the step at the left-factor redex.
// Throws RewriteError when a reducible monomial has no redex at its left
// end, which cannot happen in a reduced system.
RewritePath sigma_path(Rewriter& rw, const Polynomial& a);

struct SquierTuple {
    bool epsilon = false;          // first component is the empty marker
    std::vector<Monomial> parts;   // u1 .. u_{n+1}; parts[0] unused when epsilon
    std::size_t dimension() const { return parts.size() - 1; }
    Monomial product() const;      // u1 u2 ... u_{n+1}
    std::size_t size() const;
};
std::string to_string(const SquierTuple& t);

// Top-level prefixes other than 1 and m itself are normal forms.
bool left_factors_normal(Rewriter& rw, const Monomial& m);

// Sq_n with total size <= bound, n >= 1
std::vector<SquierTuple> squier_generators(Rewriter& rw, std::size_t n, std::size_t bound);

struct Boundary {
    std::size_t dimension = 1;
    Monomial source;
    Polynomial target;          // dimension 1
    RewritePath left, right;    // dimension 2
};
Boundary boundary(Rewriter& rw, const SquierTuple& t);

}  // namespace orw
