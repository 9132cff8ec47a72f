#pragma once

#include <string>
#include <vector>

#include "orw/enumerate.hpp"
#include "orw/parse.hpp"
#include "orw/presets.hpp"

namespace orw::test {

inline Signature sig(const std::vector<std::string>& gens, const std::vector<std::string>& ops,
                     Rational lambda = 1) {
    Signature s;
    for (const auto& g : gens) s.gens.push_back(intern_generator(g));
    for (const auto& o : ops) s.ops.push_back(intern_operator(o));
    s.lambda = lambda;
    return s;
}

inline Alphabet alphabet(const Signature& s) { return {s.gens, s.ops}; }

inline Monomial mono(const std::string& text, const Signature& s) { return parse_monomial(text, s); }
inline Polynomial poly(const std::string& text, const Signature& s) { return parse_polynomial(text, s); }

}  // namespace orw::test
