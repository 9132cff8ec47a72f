#include "orw/polygraph.hpp"

#include <stdexcept>

namespace orw {

RuleSchema ground_rule(std::string name, const Monomial& lhs, const Polynomial& rhs) {
    if (lhs.is_one()) throw std::invalid_argument("rule source must not be 1");
    if (rhs.coefficient(lhs) != 0) throw std::invalid_argument("rule source " + to_string(lhs) + " occurs in its target");
    RuleSchema r;
    r.name = std::move(name);
    r.lhs = literal_pattern(lhs);
    r.ground_rhs = rhs;
    r.target_text = to_string(rhs);
    return r;
}

Signature Polygraph::signature() const {
    Signature s;
    s.gens = gens;
    s.ops = ops;
    s.lambda = lambda;
    return s;
}

Alphabet Polygraph::alphabet() const { return Alphabet{gens, ops}; }

std::size_t Polygraph::rule_index(std::string_view rule_name) const {
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (rules[i].name == rule_name) return i;
    throw std::out_of_range("no rule named '" + std::string(rule_name) + "'");
}

}  // namespace orw
