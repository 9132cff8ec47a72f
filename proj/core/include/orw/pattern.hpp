// Monomial-shaped patterns with metavariables, and occurrence matching.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orw/parse.hpp"
#include "orw/terms.hpp"

namespace orw {

struct MetaVar {
    std::string name;
    bool ne = false;   // != 1
    bool nf = false;   // normal form
    bool phi = false;  // member of the system's Phi predicate
    bool nb = false;   // not a single bracket atom
    bool seq = false;  // sequence of >= 2 atoms, each atom checked individually
};

struct PatternElem {
    enum class Kind { Gen, Bracket, Var } kind = Kind::Gen;
    SymbolId sym = 0;                // generator or operator
    std::vector<PatternElem> inner;  // Bracket contents
    int var = -1;
};
using Pattern = std::vector<PatternElem>;

// Pattern from a lhs expression; identifiers naming a metavariable become Var.
Pattern pattern_from_expr(const Expr& e, const std::vector<MetaVar>& vars, const Signature& sig);
Pattern literal_pattern(const Monomial& m);
bool is_literal(const Pattern& p);
std::size_t pattern_fixed_size(const Pattern& p);  // atoms that are not metavariables
std::string to_string(const Pattern& p, const std::vector<MetaVar>& vars);

struct Binding {
    std::vector<Monomial> values;             // by metavariable index
    std::vector<std::vector<Monomial>> parts;  // atoms of sequence variables
    friend bool operator==(const Binding&, const Binding&) = default;
};

Monomial instantiate(const Pattern& p, const Binding& b);
// least under presentation order, compared variable by variable
int compare_bindings(const Binding& a, const Binding& b);

struct Occurrence {
    Context context;
    Binding binding;
    std::size_t flat_start = 0, flat_end = 0;  // span of the redex in the flat word
    std::vector<std::size_t> path;              // bracket atom indices from the root
    std::size_t begin = 0, end = 0;             // atom span at that level
};

// Decides metavariable constraints that need outside knowledge.
struct ConstraintOracle {
    std::function<bool(const Monomial&)> normal;  // for nf
    std::function<bool(const Monomial&)> phi;     // for phi
};

bool satisfies(const MetaVar& v, const Monomial& m, const ConstraintOracle& oracle);

// Every occurrence of the pattern in m, at every level. Ordered by redex end in
// the flat word ascending, then start descending (innermost first), then binding.
std::vector<Occurrence> find_occurrences(const Pattern& p, const std::vector<MetaVar>& vars, const Monomial& m,
                                         const ConstraintOracle& oracle);
// Every factor of m (any level, at most max_breadth atoms) that lookup maps to
// rule indices, as (rule, occurrence) with empty bindings. Unordered.
using FactorLookup = std::function<const std::vector<std::size_t>*(const Monomial&)>;
std::vector<std::pair<std::size_t, Occurrence>> find_factor_occurrences(const Monomial& m, std::size_t max_breadth,
                                                                        const FactorLookup& lookup);

// Occurrences covering the whole of m (trivial context).
std::vector<Binding> match_whole(const Pattern& p, const std::vector<MetaVar>& vars, const Monomial& m,
                                 const ConstraintOracle& oracle);

}  // namespace orw
