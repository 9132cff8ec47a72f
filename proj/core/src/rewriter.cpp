#include "orw/rewriter.hpp"

#include <algorithm>

#include "orw/phi.hpp"

namespace orw {

namespace {

constexpr std::size_t kMemoCap = 1000000;

bool step_before(const Occurrence& a, std::size_t ra, const Occurrence& b, std::size_t rb, Strategy st) {
    if (st == Strategy::LeftmostOutermost) {
        if (a.flat_start != b.flat_start) return a.flat_start < b.flat_start;
        if (a.flat_end != b.flat_end) return a.flat_end > b.flat_end;
    } else {
        if (a.flat_end != b.flat_end) return a.flat_end < b.flat_end;
        if (a.flat_start != b.flat_start) return a.flat_start > b.flat_start;
    }
    if (ra != rb) return ra < rb;
    return compare_bindings(a.binding, b.binding) < 0;
}

Rational power(const Rational& x, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

void count_var_uses(const Pattern& p, std::vector<std::size_t>& uses) {
    for (const auto& e : p) {
        if (e.kind == PatternElem::Kind::Var) ++uses[e.var];
        else if (e.kind == PatternElem::Kind::Bracket) count_var_uses(e.inner, uses);
    }
}

}  // namespace

bool same_step(const Step& a, const Step& b) {
    return a.rule == b.rule && a.binding == b.binding && a.context == b.context;
}

std::size_t Rewriter::RhsKeyHash::operator()(const RhsKey& k) const {
    std::size_t h = k.rule * 0x9e3779b97f4a7c15ULL;
    for (const auto& m : k.values) h ^= m.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

Rewriter::Rewriter(PolygraphPtr system, std::shared_ptr<Rewriter> companion)
    : sys_(std::move(system)), companion_(std::move(companion)) {
    if (!sys_->phi.empty()) phi_ = phi_predicate(sys_->phi);
    for (std::size_t r = 0; r < sys_->rules.size(); ++r) index_rule(r);
}

void Rewriter::index_rule(std::size_t r) {
    const RuleSchema& rs = sys_->rules[r];
    if (rs.vars.empty() && is_literal(rs.lhs)) {
        Monomial lhs = instantiate(rs.lhs, Binding{});
        literal_[lhs].push_back(r);
        literal_breadth_ = std::max(literal_breadth_, lhs.breadth());
    } else {
        schema_rules_.push_back(r);
    }
}

void Rewriter::add_rule(RuleSchema rule) {
    if (!own_) {
        own_ = std::make_shared<Polygraph>(*sys_);
        sys_ = own_;
    }
    own_->rules.push_back(std::move(rule));
    index_rule(own_->rules.size() - 1);
    clear_caches();
}

std::vector<std::pair<std::size_t, Occurrence>> Rewriter::literal_occurrences(const Monomial& m) {
    if (literal_.empty()) return {};
    return find_factor_occurrences(m, literal_breadth_, [this](const Monomial& f) -> const std::vector<std::size_t>* {
        auto it = literal_.find(f);
        return it == literal_.end() ? nullptr : &it->second;
    });
}

ConstraintOracle Rewriter::oracle() {
    ConstraintOracle o;
    o.normal = [this](const Monomial& m) { return is_normal(m); };
    o.phi = phi_;
    return o;
}

Polynomial Rewriter::rule_target(std::size_t rule, const Binding& b) {
    const RuleSchema& r = sys_->rules.at(rule);
    if (r.is_ground()) return r.ground_rhs;
    RhsKey key{rule, b.values};
    if (auto it = rhs_.find(key); it != rhs_.end()) return it->second;
    EvalHooks hooks;
    hooks.variable = [&](const std::string& name) -> std::optional<Polynomial> {
        for (std::size_t i = 0; i < r.vars.size(); ++i)
            if (r.vars[i].name == name) return Polynomial(b.values[i]);
        return std::nullopt;
    };
    hooks.normal_form = [&](const Polynomial& p) {
        return companion_ ? companion_->normal_form(p) : normal_form(p);
    };
    hooks.leibniz = [&](SymbolId op, const std::string& seq) {
        std::size_t vi = r.vars.size();
        for (std::size_t i = 0; i < r.vars.size(); ++i)
            if (r.vars[i].name == seq) vi = i;
        if (vi == r.vars.size() || !r.vars[vi].seq) throw RewriteError("leibniz needs a sequence variable, got '" + seq + "'");
        const auto& parts = b.parts[vi];
        const std::size_t n = parts.size();
        Polynomial out;
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
            std::vector<Atom> atoms;
            int k = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::size_t{1} << i)) {
                    atoms.push_back(Atom{op, true, parts[i]});
                    ++k;
                } else {
                    auto a = parts[i].atoms();
                    atoms.insert(atoms.end(), a.begin(), a.end());
                }
            }
            out.add_term(Monomial(std::move(atoms)), power(sys_->lambda, k - 1));
        }
        return out;
    };
    Polynomial t = evaluate(*r.rhs, sys_->signature(), hooks);
    if (rhs_.size() > kMemoCap) rhs_.clear();
    rhs_.emplace(std::move(key), t);
    return t;
}

std::vector<Occurrence> Rewriter::match(std::size_t rule, const Monomial& m) {
    const RuleSchema& r = sys_->rules.at(rule);
    return find_occurrences(r.lhs, r.vars, m, oracle());
}

Step Rewriter::make_step(std::size_t rule, const Binding& b, const Context& q, std::size_t flat_start,
                         std::size_t flat_end) {
    Step s;
    s.rule = rule;
    s.binding = b;
    s.context = q;
    s.lhs = instantiate(sys_->rules[rule].lhs, b);
    s.rhs = rule_target(rule, b);
    s.source = q.plug(s.lhs);
    s.target = q.plug(s.rhs);
    s.flat_start = flat_start;
    s.flat_end = flat_end;
    return s;
}

std::vector<std::pair<std::size_t, Occurrence>> Rewriter::occurrences(const Monomial& m) {
    std::vector<std::pair<std::size_t, Occurrence>> all = literal_occurrences(m);
    for (std::size_t r : schema_rules_)
        for (auto& o : match(r, m)) all.emplace_back(r, std::move(o));
    std::stable_sort(all.begin(), all.end(),
                     [this](const auto& a, const auto& b) { return step_before(a.second, a.first, b.second, b.first, strategy_); });
    return all;
}

std::vector<Step> Rewriter::steps(const Monomial& m) {
    auto all = occurrences(m);
    std::vector<Step> out;
    out.reserve(all.size());
    for (const auto& [r, o] : all) out.push_back(make_step(r, o.binding, o.context, o.flat_start, o.flat_end));
    return out;
}

std::optional<Step> Rewriter::first_step(const Monomial& m) {
    if (auto it = first_.find(m); it != first_.end()) return it->second;
    std::optional<std::pair<std::size_t, Occurrence>> best;
    ConstraintOracle orc = oracle();
    for (std::size_t r : schema_rules_) {
        const RuleSchema& rs = sys_->rules[r];
        auto occ = find_occurrences(rs.lhs, rs.vars, m, orc);
        // occurrences come innermost first
        if (strategy_ == Strategy::LeftmostInnermost) {
            if (!occ.empty() && (!best || step_before(occ.front(), r, best->second, best->first, strategy_)))
                best.emplace(r, std::move(occ.front()));
            continue;
        }
        for (auto& o : occ)
            if (!best || step_before(o, r, best->second, best->first, strategy_)) best.emplace(r, std::move(o));
    }
    for (auto& [r, o] : literal_occurrences(m))
        if (!best || step_before(o, r, best->second, best->first, strategy_)) best.emplace(r, std::move(o));
    std::optional<Step> s;
    if (best) s = make_step(best->first, best->second.binding, best->second.context, best->second.flat_start,
                            best->second.flat_end);
    if (first_.size() > kMemoCap) first_.clear();
    first_.emplace(m, s);
    return s;
}

bool Rewriter::is_normal(const Monomial& m) { return !first_step(m).has_value(); }

bool Rewriter::is_normal(const Polynomial& a) {
    for (const auto& [m, c] : a.terms())
        if (!is_normal(m)) return false;
    return true;
}

void Rewriter::spend(const Monomial& m) {
    if (++fuel_used_ > fuel_limit_)
        throw FuelExhausted("fuel exhausted after " + std::to_string(fuel_limit_) + " steps (non-termination suspected)",
                            to_string(m));
}

Polynomial Rewriter::nf_rec(const Monomial& m) {
    if (auto it = nf_.find(m); it != nf_.end()) return it->second;
    auto s = first_step(m);
    if (!s) return Polynomial(m);
    if (!active_.insert(m).second) throw FuelExhausted("rewriting cycle (non-termination suspected)", to_string(m));
    spend(m);
    Polynomial out;
    for (const auto& [t, c] : s->target.terms()) {
        Polynomial sub = nf_rec(t);
        sub *= c;
        out += sub;
    }
    active_.erase(m);
    nf_.emplace(m, out);
    return out;
}

Polynomial Rewriter::normal_form(const Monomial& m) { return normal_form(Polynomial(m)); }

Polynomial Rewriter::normal_form(const Polynomial& a) {
    const bool top = depth_ == 0;
    if (top) {
        fuel_used_ = 0;
        active_.clear();
        if (nf_.size() > kMemoCap) nf_.clear();
    }
    ++depth_;
    try {
        Polynomial out;
        for (const auto& [m, c] : a.terms()) {
            Polynomial sub = nf_rec(m);
            sub *= c;
            out += sub;
        }
        --depth_;
        return out;
    } catch (...) {
        --depth_;
        if (top) active_.clear();
        throw;
    }
}

Polynomial Rewriter::apply(const Polynomial& a, const Rational& c, const Step& s) {
    Polynomial out = a;
    out.add_term(s.source, -c);
    out += s.target * c;
    return out;
}

std::optional<PathStep> Rewriter::rewrite_once(const Polynomial& a) {
    const auto& terms = a.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        auto s = first_step(it->first);
        if (!s) continue;
        PathStep ps{it->second, *s, apply(a, it->second, *s)};
        return ps;
    }
    return std::nullopt;
}

RewritePath Rewriter::normalize(const Polynomial& a) {
    RewritePath path;
    path.start = a;
    std::size_t used = 0;
    for (;;) {
        auto ps = rewrite_once(path.end());
        if (!ps) return path;
        if (++used > fuel_limit_)
            throw FuelExhausted("fuel exhausted after " + std::to_string(fuel_limit_) + " steps (non-termination suspected)",
                                to_string(path.end()));
        path.steps.push_back(std::move(*ps));
    }
}

Polynomial Rewriter::normalize_random(const Polynomial& a, std::mt19937_64& rng) {
    Polynomial cur = a;
    std::size_t used = 0;
    for (;;) {
        std::vector<std::pair<Monomial, Rational>> reducible;
        for (const auto& [m, c] : cur.terms())
            if (!is_normal(m)) reducible.emplace_back(m, c);
        if (reducible.empty()) return cur;
        if (++used > fuel_limit_)
            throw FuelExhausted("fuel exhausted after " + std::to_string(fuel_limit_) + " steps (non-termination suspected)",
                                to_string(cur));
        const auto& [m, c] = reducible[std::uniform_int_distribution<std::size_t>(0, reducible.size() - 1)(rng)];
        auto all = steps(m);
        const Step& s = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
        cur = apply(cur, c, s);
    }
}

std::vector<Instance> Rewriter::instances(std::size_t bound) {
    std::vector<Instance> out;
    for (std::size_t r = 0; r < sys_->rules.size(); ++r) {
        auto v = instances(r, bound);
        out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    }
    return out;
}

std::vector<Instance> Rewriter::instances(std::size_t rule, std::size_t bound) {
    const RuleSchema& r = sys_->rules.at(rule);
    std::vector<Instance> out;
    const std::size_t fixed = pattern_fixed_size(r.lhs);
    if (fixed > bound) return out;
    if (!enum_) enum_ = std::make_unique<MonomialEnumerator>(sys_->alphabet());
    std::vector<std::size_t> uses(r.vars.size(), 0);
    count_var_uses(r.lhs, uses);
    ConstraintOracle orc = oracle();
    Binding b;
    b.values.assign(r.vars.size(), Monomial());
    b.parts.assign(r.vars.size(), {});

    std::function<void(std::size_t, std::size_t)> assign = [&](std::size_t vi, std::size_t budget) {
        if (vi == r.vars.size()) {
            out.push_back(Instance{rule, b, instantiate(r.lhs, b)});
            return;
        }
        const MetaVar& v = r.vars[vi];
        const std::size_t k = uses[vi];
        if (k == 0) {
            assign(vi + 1, budget);
            return;
        }
        if (!v.seq) {
            for (std::size_t s = 0; s * k <= budget; ++s) {
                for (const Monomial& m : enum_->exactly(s)) {
                    if (!satisfies(v, m, orc)) continue;
                    b.values[vi] = m;
                    assign(vi + 1, budget - s * k);
                }
            }
            b.values[vi] = Monomial();
            return;
        }
        // sequence variable: two or more admissible single atoms
        std::vector<Monomial> parts;
        std::function<void(std::size_t)> extend = [&](std::size_t left) {
            if (parts.size() >= 2) {
                std::vector<Atom> atoms;
                for (const auto& p : parts) atoms.push_back(p.atoms()[0]);
                b.values[vi] = Monomial(std::move(atoms));
                b.parts[vi] = parts;
                assign(vi + 1, left);
            }
            for (std::size_t s = 1; s * k <= left; ++s) {
                for (const Monomial& m : enum_->exactly(s)) {
                    if (m.breadth() != 1 || !satisfies(v, m, orc)) continue;
                    parts.push_back(m);
                    extend(left - s * k);
                    parts.pop_back();
                }
            }
        };
        extend(budget);
        b.values[vi] = Monomial();
        b.parts[vi].clear();
    };
    assign(0, bound - fixed);

    PresentationLess less;
    std::stable_sort(out.begin(), out.end(), [&](const Instance& a, const Instance& c) {
        if (less(a.lhs, c.lhs)) return true;
        if (less(c.lhs, a.lhs)) return false;
        return compare_bindings(a.binding, c.binding) < 0;
    });
    return out;
}

void Rewriter::set_strategy(Strategy s) {
    if (s == strategy_) return;
    strategy_ = s;
    clear_caches();
}

void Rewriter::clear_caches() {
    first_.clear();
    nf_.clear();
    rhs_.clear();
    active_.clear();
}

std::string to_string(const Step& s, const Polygraph& X) {
    const RuleSchema& r = X.rules.at(s.rule);
    std::string out = r.name;
    if (!r.vars.empty()) {
        out += '[';
        for (std::size_t i = 0; i < r.vars.size(); ++i) {
            if (i) out += ", ";
            out += to_string(s.binding.values[i]);
        }
        out += ']';
    }
    if (!s.context.is_trivial()) out += " in " + to_string(s.context);
    return out;
}

}  // namespace orw
