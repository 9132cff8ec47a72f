// Ground completion of a system against a monomial order.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orw/branchings.hpp"

namespace orw {

struct AddedRule {
    std::string name;
    Monomial lhs;
    Polynomial rhs;
    std::size_t round = 0;
    std::string provenance;  // the critical branching it resolves
};

// a critical branching found not joinable
struct Obstruction {
    std::size_t round = 0;
    std::string kind;
    Monomial source;
    std::string left_rule, right_rule;
};

struct CompletionReport {
    std::vector<AddedRule> added;
    std::size_t rounds = 0;  // rounds run, including the final check
    bool fixpoint = false;
    std::vector<std::string> residual;  // non-joinable sources left when max_rounds is hit
    bool sound = true;                  // every added lhs - rhs reduces to 0 in the result
    std::vector<Obstruction> obstructions;
    std::size_t undecided = 0;  // obstructions whose join search hit its cap
};

struct CompletionResult {
    Polygraph system;
    CompletionReport report;
};

class CompletionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Round r enumerates critical branchings with sources up to bound - (r - 1),
// orients each non-joinable difference by its largest monomial and adds it
// as a ground rule. Throws CompletionError if a current rule does not
// decrease, or if a difference has no strictly largest monomial.
CompletionResult complete(const Polygraph& X, const MonomialOrder& orientation, std::size_t bound,
                          std::size_t max_rounds);

// The rule of reference that r instantiates: its lhs is a whole match of the
// rule's lhs and r's rhs equals the rule's target modulo the completed system.
std::optional<std::string> instance_of(Rewriter& completed, Rewriter& reference, const AddedRule& r);

}  // namespace orw
