#include "orw/checks.hpp"

#include <random>

namespace orw {

ReducedReport check_reduced(Rewriter& rw, std::size_t bound, std::size_t max_witnesses) {
    ReducedReport rep;
    rep.bound = bound;
    const Polygraph& X = rw.system();
    for (const Instance& inst : rw.instances(bound)) {
        ++rep.instances;
        for (const Step& s : rw.steps(inst.lhs)) {
            if (s.context.is_trivial() && s.rule == inst.rule && s.binding == inst.binding) continue;
            rep.left_reduced = false;
            if (rep.witnesses.size() < max_witnesses) {
                std::string what = s.context.is_trivial() ? "shares its source with " : "contains the redex of ";
                rep.witnesses.push_back("left: " + X.rules[inst.rule].name + " at " + to_string(inst.lhs) + " " + what +
                                        to_string(s, X));
            }
        }
        Polynomial t = rw.rule_target(inst.rule, inst.binding);
        for (const auto& [m, c] : t.terms()) {
            if (rw.is_normal(m)) continue;
            rep.right_reduced = false;
            if (rep.witnesses.size() < max_witnesses)
                rep.witnesses.push_back("right: target of " + X.rules[inst.rule].name + " at " + to_string(inst.lhs) +
                                        " has reducible " + to_string(m));
            break;
        }
    }
    return rep;
}

TerminationReport check_termination(Rewriter& rw, const TerminationMeasure& measure, std::size_t bound,
                                    std::size_t sample_bound, std::size_t context_bound) {
    TerminationReport rep;
    rep.measure = measure.name;
    rep.bound = bound;
    const Polygraph& X = rw.system();
    for (const Instance& inst : rw.instances(bound)) {
        ++rep.instances;
        Weight src = measure.value(inst.lhs);
        const Polynomial target = rw.rule_target(inst.rule, inst.binding);
        for (const auto& [m, c] : target.terms()) {
            Weight w = measure.value(m);
            if (compare_weights(src, w) > 0) continue;
            rep.pass = false;
            if (!rep.counterexample)
                rep.counterexample = X.rules[inst.rule].name + ": " + to_string(inst.lhs) + " " + to_string(src) +
                                     " does not exceed " + to_string(m) + " " + to_string(w);
        }
    }

    // context compatibility on small cases
    MonomialEnumerator en(X.alphabet());
    auto small = en.up_to(sample_bound);
    auto contexts = contexts_up_to(en, context_bound);
    std::vector<Weight> weights;
    for (const auto& m : small) weights.push_back(measure.value(m));
    // random ordered pairs (fixed seed) against every small context
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
    for (int trial = 0; trial < 4000 && rep.warnings.empty(); ++trial) {
        std::size_t i = pick(rng), j = pick(rng);
        if (compare_weights(weights[i], weights[j]) <= 0) continue;
        for (const Context& q : contexts) {
            Monomial a = q.plug(small[i]), b = q.plug(small[j]);
            Weight wa = measure.value(a), wb = measure.value(b);
            if (compare_weights(wa, wb) > 0) continue;
            rep.warnings.push_back("not context-compatible: " + to_string(small[i]) + " " + to_string(weights[i]) +
                                   " > " + to_string(small[j]) + " " + to_string(weights[j]) + " but " +
                                   to_string(a) + " " + to_string(wa) + " <= " + to_string(b) + " " + to_string(wb));
            break;
        }
    }
    return rep;
}

}  // namespace orw
