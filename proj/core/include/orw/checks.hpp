// Bounded checks on a system: reducedness and termination evidence.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orw/derivation.hpp"
#include "orw/rewriter.hpp"

namespace orw {

struct ReducedReport {
    bool left_reduced = true;
    bool right_reduced = true;
    std::size_t bound = 0;
    std::size_t instances = 0;
    std::vector<std::string> witnesses;

    bool reduced() const { return left_reduced && right_reduced; }
};

ReducedReport check_reduced(Rewriter& rw, std::size_t bound, std::size_t max_witnesses = 20);

struct TerminationReport {
    bool pass = true;
    std::string measure;
    std::size_t bound = 0;
    std::size_t instances = 0;
    std::optional<std::string> counterexample;
    // context-compatibility sampling found a violation; the rule check alone
    // is then not a termination argument
    std::vector<std::string> warnings;
};

// rule instances up to the bound, plus context-compatibility sampling on
// small monomials and contexts (sample_bound, context_bound)
TerminationReport check_termination(Rewriter& rw, const TerminationMeasure& measure, std::size_t bound,
                                     std::size_t sample_bound = 4, std::size_t context_bound = 3);

}  // namespace orw
