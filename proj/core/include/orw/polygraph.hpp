// Rule schemas and the systems (polygraphs) that bundle them.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "orw/enumerate.hpp"
#include "orw/parse.hpp"
#include "orw/pattern.hpp"

namespace orw {

struct RuleSchema {
    std::string name;
    std::vector<MetaVar> vars;
    Pattern lhs;
    ExprPtr rhs;             // schema target; null for ground rules
    Polynomial ground_rhs;   // target of a ground rule
    std::string target_text;  // as written, for export

    bool is_ground() const { return rhs == nullptr; }
};

RuleSchema ground_rule(std::string name, const Monomial& lhs, const Polynomial& rhs);

struct Polygraph {
    std::string name;
    std::vector<SymbolId> gens, ops;
    Rational lambda = 1;
    std::vector<RuleSchema> rules;
    std::string phi;        // Phi predicate name, or empty
    std::string measure;    // bundled termination measure, or empty
    std::string companion;  // preset whose normal forms NF(...) refers to, or empty
    std::string machine;    // preset automaton name, or empty

    Signature signature() const;
    Alphabet alphabet() const;
    std::size_t rule_index(std::string_view rule_name) const;  // throws if absent
};

using PolygraphPtr = std::shared_ptr<const Polygraph>;

}  // namespace orw
