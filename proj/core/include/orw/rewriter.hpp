// The rewriting engine: steps, normal forms, paths and strategies.
#pragma once

#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "orw/polygraph.hpp"

namespace orw {

class RewriteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// fuel ran out, or a rewriting cycle was found
class FuelExhausted : public RewriteError {
public:
    FuelExhausted(const std::string& msg, std::string term) : RewriteError(msg), term_(std::move(term)) {}
    const std::string& term() const { return term_; }

private:
    std::string term_;
};

struct Step {
    std::size_t rule = 0;
    Binding binding;
    Context context;
    Monomial lhs;
    Polynomial rhs;
    Monomial source;    // context plugged with lhs
    Polynomial target;  // context plugged with rhs
    std::size_t flat_start = 0, flat_end = 0;
};

bool same_step(const Step& a, const Step& b);

struct PathStep {
    Rational coefficient;  // the step rewrites coefficient * source
    Step step;
    Polynomial result;
};

struct RewritePath {
    Polynomial start;
    std::vector<PathStep> steps;
    const Polynomial& end() const { return steps.empty() ? start : steps.back().result; }
};

// Redex choice within a monomial. Leftmost-innermost is the default; the
// other is used to look for joins in systems that are not confluent.
enum class Strategy { LeftmostInnermost, LeftmostOutermost };

// One ground instance of a rule schema.
struct Instance {
    std::size_t rule = 0;
    Binding binding;
    Monomial lhs;
};

class Rewriter {
public:
    static constexpr std::size_t kDefaultFuel = 1000000;

    // companion evaluates NF(...) markers; without one the system itself is used
    explicit Rewriter(PolygraphPtr system, std::shared_ptr<Rewriter> companion = nullptr);

    const Polygraph& system() const { return *sys_; }
    PolygraphPtr system_ptr() const { return sys_; }
    const std::shared_ptr<Rewriter>& companion() const { return companion_; }
    void set_fuel(std::size_t fuel) { fuel_limit_ = fuel; }
    std::size_t fuel() const { return fuel_limit_; }
    void set_strategy(Strategy s);
    Strategy strategy() const { return strategy_; }

    ConstraintOracle oracle();
    Polynomial rule_target(std::size_t rule, const Binding& b);

    std::vector<Occurrence> match(std::size_t rule, const Monomial& m);
    // every (rule, occurrence) in m, in strategy order
    std::vector<std::pair<std::size_t, Occurrence>> occurrences(const Monomial& m);
    // the same as steps
    std::vector<Step> steps(const Monomial& m);
    std::optional<Step> first_step(const Monomial& m);
    bool is_normal(const Monomial& m);
    bool is_normal(const Polynomial& a);

    Polynomial normal_form(const Monomial& m);
    Polynomial normal_form(const Polynomial& a);

    // deterministic strategy: the maximal reducible support monomial, first step
    std::optional<PathStep> rewrite_once(const Polynomial& a);
    RewritePath normalize(const Polynomial& a);
    Polynomial normalize_random(const Polynomial& a, std::mt19937_64& rng);

    static Polynomial apply(const Polynomial& a, const Rational& c, const Step& s);
    Step make_step(std::size_t rule, const Binding& b, const Context& q, std::size_t flat_start = 0,
                   std::size_t flat_end = 0);

    // ground instances with lhs size <= bound, by rule then lhs then binding
    std::vector<Instance> instances(std::size_t bound);
    std::vector<Instance> instances(std::size_t rule, std::size_t bound);

    // Appends a rule. The system is copied on the first call and no longer
    // shares state with system_ptr() values handed out before.
    void add_rule(RuleSchema rule);

    void clear_caches();

private:
    struct RhsKey {
        std::size_t rule;
        std::vector<Monomial> values;
        friend bool operator==(const RhsKey&, const RhsKey&) = default;
    };
    struct RhsKeyHash {
        std::size_t operator()(const RhsKey& k) const;
    };

    Polynomial nf_rec(const Monomial& m);
    void index_rule(std::size_t r);
    std::vector<std::pair<std::size_t, Occurrence>> literal_occurrences(const Monomial& m);
    void spend(const Monomial& m);

    PolygraphPtr sys_;
    std::shared_ptr<Polygraph> own_;
    // rules without metavariables, by lhs
    std::unordered_map<Monomial, std::vector<std::size_t>, MonomialHash> literal_;
    std::size_t literal_breadth_ = 0;
    std::vector<std::size_t> schema_rules_;
    std::shared_ptr<Rewriter> companion_;
    std::function<bool(const Monomial&)> phi_;
    std::size_t fuel_limit_ = kDefaultFuel;
    Strategy strategy_ = Strategy::LeftmostInnermost;
    std::size_t fuel_used_ = 0;
    int depth_ = 0;
    std::unordered_map<Monomial, std::optional<Step>, MonomialHash> first_;
    std::unordered_map<Monomial, Polynomial, MonomialHash> nf_;
    std::unordered_set<Monomial, MonomialHash> active_;
    std::unordered_map<RhsKey, Polynomial, RhsKeyHash> rhs_;
    std::unique_ptr<MonomialEnumerator> enum_;
};

std::string to_string(const Step& s, const Polygraph& X);

}  // namespace orw
