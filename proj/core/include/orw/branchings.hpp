// Local branchings: classification, critical branchings from flat-word
// overlaps, joinability and Groebner-Shirshov triviality.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orw/presets.hpp"
#include "orw/rewriter.hpp"

namespace orw {

enum class BranchingKind { Aspherical, Additive, Peiffer, Overlapping };
std::string to_string(BranchingKind k);

// throws std::invalid_argument unless both steps act on support monomials of ambient
BranchingKind classify(const Step& a, const Step& b, const Polynomial& ambient);

// "coincident": two distinct steps with the same lhs occurrence (trivial context),
// e.g. two splittings of D(u v w)
enum class CriticalKind { Intersection, Inclusion, Coincident };
std::string to_string(CriticalKind k);

struct CriticalBranching {
    CriticalKind kind = CriticalKind::Intersection;
    Monomial source;
    Step left, right;  // intersection: left redex first; inclusion: left is outer
    // intersection: source = u v w, left lhs = u v, right lhs = v w
    Monomial u, v, w;
    // inclusion: source = context plugged with the inner lhs
    Context context;
};

// Critical branchings whose source has size <= bound, sorted by source size,
// source flat word, then rule indices.
std::vector<CriticalBranching> critical_pairs(Rewriter& rw, std::size_t bound);
// Same order, one at a time; for bounds where the full list does not fit in memory.
void for_each_critical_pair(Rewriter& rw, std::size_t bound, const std::function<void(const CriticalBranching&)>& fn);

// A branching is minimal iff its redexes overlap and together cover the whole source.
bool is_minimal(const std::vector<Step>& steps, const Monomial& source);

// Tuples of n distinct co-initial steps, sources of size <= bound, whose
// overlap graph is connected and whose redexes cover the whole source.
std::vector<std::vector<Step>> critical_n_branchings(Rewriter& rw, std::size_t n, std::size_t bound);

enum class JoinMethod { NormalForm, Outermost, Search, None };
std::string to_string(JoinMethod m);

struct JoinResult {
    bool joinable = false;
    JoinMethod method = JoinMethod::None;  // what found the join
    bool decided = true;                   // false: the search hit its cap without finding a join
    Polynomial left_nf, right_nf;          // leftmost-innermost normal forms
    RewritePath left, right;               // filled when paths are requested
};

// Joinability of critical branchings of one rewriter. Equal normal forms join a
// branching, which decides it for a convergent system. When they differ (the
// system is not confluent, or not yet), the leftmost-outermost normal forms are
// compared, then the difference of the targets is searched for a reduction to 0
// over every choice of steps, keeping at most search_cap distinct results per term.
class JoinChecker {
public:
    explicit JoinChecker(Rewriter& rw, std::size_t search_cap = 4096);
    ~JoinChecker();

    JoinResult check(const CriticalBranching& cb, bool with_paths = false);
    // after rules were added to the rewriter
    void reset();

private:
    Rewriter& rw_;
    std::size_t cap_;
    std::unique_ptr<Rewriter> outer_;
};

JoinResult joinable(Rewriter& rw, const CriticalBranching& cb, bool with_paths = false);

// -1, 0, 1; throws IncomparableError for a partial order that cannot decide
using MonomialOrder = std::function<int(const Monomial&, const Monomial&)>;
class IncomparableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
// derivation weight, then size, then flat word
MonomialOrder derivation_order(const std::string& measure, const Polygraph& X);

// The composition (target of left) - (target of right) reduces to 0 with every
// reduction step rewriting a monomial below the source.
bool gs_trivial(Rewriter& rw, const MonomialOrder& order, const CriticalBranching& cb);

// Family templates. Returns the group of the first template that matches.
std::optional<std::string> classify_family(const Polygraph& X, const std::vector<FamilyTemplate>& families,
                                           const CriticalBranching& cb);
// Does the monomial match a template source (without the redex-position check)?
bool matches_template(const std::string& source_template, const Polygraph& X, const Monomial& m);

}  // namespace orw
