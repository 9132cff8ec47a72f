#include "orw/completion.hpp"

#include "orw/automaton.hpp"

namespace orw {

namespace {

void check_orientation(Rewriter& rw, const MonomialOrder& order, std::size_t bound) {
    const Polygraph& X = rw.system();
    for (const auto& inst : rw.instances(bound)) {
        Polynomial rhs = rw.rule_target(inst.rule, inst.binding);
        for (const auto& [m, c] : rhs.terms())
            if (order(m, inst.lhs) >= 0)
                throw CompletionError("orientation does not decrease on " + X.rules[inst.rule].name + ": " +
                                      to_string(inst.lhs) + " -> " + to_string(rhs));
    }
}

}  // namespace

CompletionResult complete(const Polygraph& X, const MonomialOrder& orientation, std::size_t bound,
                          std::size_t max_rounds) {
    CompletionResult res{X, {}};
    auto rw = make_rewriter(X);
    check_orientation(*rw, orientation, bound);

    JoinChecker join(*rw);
    std::size_t horizon = bound;
    for (std::size_t round = 1; round <= max_rounds && horizon > 0; ++round, --horizon) {
        res.report.rounds = round;
        // find the failures with warm caches first; adding a rule clears them
        std::vector<CriticalBranching> failing;
        for_each_critical_pair(*rw, horizon, [&](const CriticalBranching& cb) {
            JoinResult j = join.check(cb);
            if (j.joinable) return;
            if (!j.decided) ++res.report.undecided;
            const Polygraph& Y = rw->system();
            res.report.obstructions.push_back(
                {round, to_string(cb.kind), cb.source, Y.rules[cb.left.rule].name, Y.rules[cb.right.rule].name});
            failing.push_back(cb);
        });
        std::size_t added = 0;
        for (const auto& cb : failing) {
            Polynomial diff = rw->normal_form(cb.left.target) - rw->normal_form(cb.right.target);
            if (diff.is_zero()) continue;
            const Polygraph& Y = rw->system();
            std::string where = to_string(cb.source) + " [" + Y.rules[cb.left.rule].name + ", " +
                                Y.rules[cb.right.rule].name + "]";
            const Monomial* lead = nullptr;
            for (const auto& [m, c] : diff.terms()) {
                if (!lead) {
                    lead = &m;
                    continue;
                }
                int cmp = orientation(m, *lead);
                if (cmp == 0) throw CompletionError("cannot orient " + to_string(diff));
                if (cmp > 0) lead = &m;
            }
            Monomial lm = *lead;
            Rational c = diff.coefficient(lm);
            Polynomial rhs = diff;
            rhs.add_term(lm, -c);
            rhs *= Rational(-1) / c;

            AddedRule ar;
            ar.name = "c" + std::to_string(round) + "_" + std::to_string(++added);
            ar.lhs = lm;
            ar.rhs = rhs;
            ar.round = round;
            ar.provenance = where;
            rw->add_rule(ground_rule(ar.name, lm, rhs));
            join.reset();
            res.report.added.push_back(std::move(ar));
        }
        if (added == 0) {
            res.report.fixpoint = true;
            break;
        }
    }
    if (!res.report.fixpoint && horizon > 0)
        for_each_critical_pair(*rw, horizon, [&](const CriticalBranching& cb) {
            if (!join.check(cb).joinable) res.report.residual.push_back(to_string(cb.source));
        });

    for (const auto& ar : res.report.added)
        if (!rw->normal_form(Polynomial(ar.lhs) - ar.rhs).is_zero()) res.report.sound = false;
    res.system = rw->system();
    return res;
}

std::optional<std::string> instance_of(Rewriter& completed, Rewriter& reference, const AddedRule& r) {
    const Polygraph& R = reference.system();
    const std::size_t len = flatten(r.lhs).size();
    for (std::size_t i = 0; i < R.rules.size(); ++i)
        for (const auto& o : reference.match(i, r.lhs)) {
            if (o.flat_start != 0 || o.flat_end != len) continue;
            Polynomial diff = r.rhs - reference.rule_target(i, o.binding);
            if (completed.normal_form(diff).is_zero()) return R.rules[i].name;
        }
    return std::nullopt;
}

}  // namespace orw
