// Termination measures: derivations into ordered weight modules, and
// occurrence counts of a pattern.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orw/pattern.hpp"
#include "orw/polygraph.hpp"

namespace orw {

using Weight = std::vector<long long>;

int compare_weights(const Weight& a, const Weight& b);  // lexicographic
std::string to_string(const Weight& w);

struct DerivationSpec {
    std::string name;
    std::size_t arity = 0;
    std::function<Weight(SymbolId gen)> gen_weight;
    // left . n . right
    std::function<Weight(const Monomial& left, const Weight& n, const Monomial& right)> act;
    std::function<Weight(SymbolId op, const Weight& n)> op_act;
};

// extends the generator weights by d(ab) = d(a).b + a.d(b), d(1) = 0, d(op(a)) = op(d(a))
Weight derivation_value(const DerivationSpec& spec, const Monomial& m);

struct CountMeasureSpec {
    std::string name;
    Pattern pattern;
    std::vector<MetaVar> vars;
};

long long count_occurrences(const CountMeasureSpec& spec, const Monomial& m);

// diff-weight, rb-weight, pd-weight, op-count
const std::vector<std::string>& derivation_names();
DerivationSpec derivation_by_name(std::string_view name);
// "count:<pattern>": identifiers that are not generators of X act as unconstrained variables
CountMeasureSpec count_measure(std::string_view pattern_text, const Polygraph& X);

struct TerminationMeasure {
    std::string name;
    std::optional<DerivationSpec> derivation;
    std::optional<CountMeasureSpec> count;

    Weight value(const Monomial& m) const;
};

TerminationMeasure measure_by_name(std::string_view name, const Polygraph& X);

}  // namespace orw
