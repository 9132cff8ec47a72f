#include "orw/branchings.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "orw/automaton.hpp"
#include "orw/derivation.hpp"

namespace orw {

std::string to_string(BranchingKind k) {
    switch (k) {
        case BranchingKind::Aspherical: return "aspherical";
        case BranchingKind::Additive: return "additive";
        case BranchingKind::Peiffer: return "Peiffer";
        case BranchingKind::Overlapping: return "overlapping";
    }
    return "?";
}

std::string to_string(CriticalKind k) {
    switch (k) {
        case CriticalKind::Intersection: return "intersection";
        case CriticalKind::Inclusion: return "inclusion";
        case CriticalKind::Coincident: return "coincident";
    }
    return "?";
}

namespace {

bool spans_overlap(const Step& a, const Step& b) {
    return a.flat_start < b.flat_end && b.flat_start < a.flat_end;
}

struct FlatWordHash {
    std::size_t operator()(const FlatWord& w) const {
        std::size_t h = 1469598103934665603ull;
        for (FlatSym s : w) h = (h ^ s) * 1099511628211ull;
        return h;
    }
};

}  // namespace

BranchingKind classify(const Step& a, const Step& b, const Polynomial& ambient) {
    if (ambient.coefficient(a.source) == 0 || ambient.coefficient(b.source) == 0)
        throw std::invalid_argument("steps are not co-initial on " + to_string(ambient));
    if (same_step(a, b)) return BranchingKind::Aspherical;
    if (!(a.source == b.source)) return BranchingKind::Additive;
    return spans_overlap(a, b) ? BranchingKind::Overlapping : BranchingKind::Peiffer;
}

bool is_minimal(const std::vector<Step>& steps, const Monomial& source) {
    if (steps.empty()) return false;
    // connectivity of the overlap graph
    std::vector<bool> seen(steps.size(), false);
    std::vector<std::size_t> todo{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
        std::size_t i = todo.back();
        todo.pop_back();
        for (std::size_t j = 0; j < steps.size(); ++j)
            if (!seen[j] && spans_overlap(steps[i], steps[j])) {
                seen[j] = true;
                ++reached;
                todo.push_back(j);
            }
    }
    if (reached != steps.size()) return false;
    std::size_t lo = steps[0].flat_start, hi = steps[0].flat_end;
    for (const auto& s : steps) {
        lo = std::min(lo, s.flat_start);
        hi = std::max(hi, s.flat_end);
    }
    return lo == 0 && hi == source.flat_length();
}

namespace {

// A branching before its steps are built: sorting these is cheap.
struct PairRef {
    Monomial source;
    std::uint32_t left_rule, right_rule;
    CriticalKind kind;
    std::uint32_t right_start, right_end;
    std::uint32_t i;  // left (outer) instance
    std::uint32_t j;  // intersection: right instance; otherwise index into steps(lhs of i)
    std::uint32_t k;  // intersection: overlap length in the flat word
};

bool ref_less(const PairRef& a, const PairRef& b) {
    if (a.source.size() != b.source.size()) return a.source.size() < b.source.size();
    if (!(a.source == b.source))
        if (int c = compare_flat(a.source, b.source)) return c < 0;
    if (a.left_rule != b.left_rule) return a.left_rule < b.left_rule;
    if (a.right_rule != b.right_rule) return a.right_rule < b.right_rule;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.right_start != b.right_start) return a.right_start < b.right_start;
    if (a.right_end != b.right_end) return a.right_end < b.right_end;
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.k < b.k;
}

}  // namespace

void for_each_critical_pair(Rewriter& rw, std::size_t bound, const std::function<void(const CriticalBranching&)>& fn) {
    const Polygraph& X = rw.system();
    std::vector<Instance> inst = rw.instances(bound);
    std::vector<FlatWord> words;
    words.reserve(inst.size());
    for (const auto& i : inst) words.push_back(flatten(i.lhs));

    // proper top-level prefixes of every lhs (only balanced words can glue),
    // each bucket sorted by lhs size
    struct Prefixed {
        std::uint32_t inst, prefix_size;
    };
    std::unordered_map<FlatWord, std::vector<Prefixed>, FlatWordHash> by_prefix;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const Monomial& l = inst[i].lhs;
        for (std::size_t p = 1; p < l.breadth(); ++p) {
            Monomial pre = l.slice(0, p);
            by_prefix[flatten(pre)].push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(pre.size())});
        }
    }
    for (auto& [w, bucket] : by_prefix)
        std::stable_sort(bucket.begin(), bucket.end(), [&](const Prefixed& a, const Prefixed& b) {
            return inst[a.inst].lhs.size() < inst[b.inst].lhs.size();
        });

    Pda omega = build_bracket_pda(X.ops, X.gens);
    std::vector<PairRef> refs;

    // intersections: a proper nonempty suffix of one flat lhs is a proper prefix of another
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const FlatWord& a = words[i];
        for (std::size_t k = 1; k < a.size(); ++k) {
            FlatWord v(a.end() - static_cast<std::ptrdiff_t>(k), a.end());
            auto it = by_prefix.find(v);
            if (it == by_prefix.end()) continue;
            for (const auto& [j, vsize] : it->second) {
                if (inst[i].lhs.size() + inst[j].lhs.size() - vsize > bound) break;
                const FlatWord& b = words[j];
                FlatWord glued = a;
                glued.insert(glued.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
                if (!pda_accepts(omega, glued)) continue;
                refs.push_back({unflatten(glued), static_cast<std::uint32_t>(inst[i].rule),
                                static_cast<std::uint32_t>(inst[j].rule), CriticalKind::Intersection,
                                static_cast<std::uint32_t>(a.size() - k), static_cast<std::uint32_t>(glued.size()),
                                static_cast<std::uint32_t>(i), j, static_cast<std::uint32_t>(k)});
            }
        }
    }

    // inclusions and coincidences: other steps on an lhs
    for (std::size_t i = 0; i < inst.size(); ++i) {
        const Instance& I = inst[i];
        auto occ = rw.occurrences(I.lhs);
        for (std::size_t n = 0; n < occ.size(); ++n) {
            const auto& [rule, o] = occ[n];
            CriticalKind kind = CriticalKind::Inclusion;
            if (o.context.is_trivial()) {
                if (rule == I.rule && o.binding == I.binding) continue;
                // seen from both instances; keep the one listed first
                if (rule < I.rule || (rule == I.rule && compare_bindings(o.binding, I.binding) < 0)) continue;
                kind = CriticalKind::Coincident;
            }
            refs.push_back({I.lhs, static_cast<std::uint32_t>(I.rule), static_cast<std::uint32_t>(rule), kind,
                            static_cast<std::uint32_t>(o.flat_start), static_cast<std::uint32_t>(o.flat_end),
                            static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(n), 0});
        }
    }
    std::sort(refs.begin(), refs.end(), ref_less);

    std::uint32_t cached = UINT32_MAX;
    std::vector<std::pair<std::size_t, Occurrence>> cached_occ;
    for (const auto& r : refs) {
        CriticalBranching cb;
        cb.kind = r.kind;
        cb.source = r.source;
        const Instance& I = inst[r.i];
        if (r.kind == CriticalKind::Intersection) {
            const FlatWord& a = words[r.i];
            const FlatWord& b = words[r.j];
            cb.u = unflatten(std::span<const FlatSym>(a.data(), a.size() - r.k));
            cb.v = unflatten(std::span<const FlatSym>(a.data() + a.size() - r.k, r.k));
            cb.w = unflatten(std::span<const FlatSym>(b.data() + r.k, b.size() - r.k));
            cb.left = rw.make_step(I.rule, I.binding, Context::left_right(Monomial(), cb.w), 0, a.size());
            cb.right = rw.make_step(inst[r.j].rule, inst[r.j].binding, Context::left_right(cb.u, Monomial()),
                                    r.right_start, r.right_end);
        } else {
            if (cached != r.i) {
                cached = r.i;
                cached_occ = rw.occurrences(I.lhs);
            }
            const auto& [rule, o] = cached_occ[r.j];
            cb.left = rw.make_step(I.rule, I.binding, Context(), 0, words[r.i].size());
            cb.right = rw.make_step(rule, o.binding, o.context, o.flat_start, o.flat_end);
            if (r.kind == CriticalKind::Inclusion) cb.context = cb.right.context;
        }
        if (is_minimal({cb.left, cb.right}, cb.source)) fn(cb);
    }
}

std::vector<CriticalBranching> critical_pairs(Rewriter& rw, std::size_t bound) {
    std::vector<CriticalBranching> out;
    for_each_critical_pair(rw, bound, [&](const CriticalBranching& cb) { out.push_back(cb); });
    return out;
}

std::vector<std::vector<Step>> critical_n_branchings(Rewriter& rw, std::size_t n, std::size_t bound) {
    if (n < 2) throw std::invalid_argument("critical n-branchings need n >= 2");
    std::vector<std::vector<Step>> out;
    MonomialEnumerator en(rw.system().alphabet());
    en.for_each_up_to(bound, [&](const Monomial& m) {
        std::vector<Step> st = rw.steps(m);
        if (st.size() < n) return;
        std::vector<std::size_t> pick(n);
        for (std::size_t i = 0; i < n; ++i) pick[i] = i;
        while (true) {
            std::vector<Step> tuple;
            for (auto i : pick) tuple.push_back(st[i]);
            if (is_minimal(tuple, m)) out.push_back(std::move(tuple));
            // next combination
            std::size_t i = n;
            while (i > 0 && pick[i - 1] == st.size() - n + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
        }
    });
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const Monomial &x = a[0].source, &y = b[0].source;
        if (x.size() != y.size()) return x.size() < y.size();
        return compare_flat(x, y) < 0;
    });
    return out;
}

namespace {

struct PolynomialHash {
    std::size_t operator()(const Polynomial& a) const {
        std::size_t h = a.terms().size();
        for (const auto& [m, c] : a.terms()) {
            h = h * 1000003u ^ MonomialHash{}(m);
            h = h * 31u ^ static_cast<std::size_t>(mpz_get_si(c.get_num_mpz_t()));
            h = h * 31u ^ static_cast<std::size_t>(mpz_get_si(c.get_den_mpz_t()));
        }
        return h;
    }
};

// normal forms reachable over every choice of steps
class ReductSearch {
public:
    ReductSearch(Rewriter& rw, std::size_t cap) : rw_(rw), cap_(cap) {}

    bool complete() const { return complete_; }

    const std::vector<Polynomial>& of(const Monomial& m) {
        if (auto it = memo_.find(m); it != memo_.end()) return it->second;
        std::vector<Polynomial> out;
        if (rw_.is_normal(m)) {
            out.emplace_back(m);
        } else {
            std::unordered_set<Polynomial, PolynomialHash> seen;
            for (const auto& s : rw_.steps(m))
                for (auto& p : sums(s.target, false))
                    if (seen.insert(p).second) {
                        if (out.size() == cap_) {
                            complete_ = false;
                            break;
                        }
                        out.push_back(p);
                    }
        }
        return memo_.emplace(m, std::move(out)).first->second;
    }

    // does a reduce to 0?
    bool reaches_zero(const Polynomial& a) {
        for (const auto& e : sums(a, true))
            if (e.is_zero()) return true;
        return false;
    }

private:
    // with to_zero, partial sums are dropped once a monomial outside every
    // remaining term's results is left over
    std::vector<Polynomial> sums(const Polynomial& a, bool to_zero) {
        std::vector<std::pair<Monomial, Rational>> terms(a.terms().begin(), a.terms().end());
        std::vector<const std::vector<Polynomial>*> ends;
        for (const auto& t : terms) ends.push_back(&of(t.first));
        std::vector<std::unordered_set<Monomial, MonomialHash>> reach(terms.size() + 1);
        if (to_zero)
            for (std::size_t k = terms.size(); k-- > 0;) {
                reach[k] = reach[k + 1];
                for (const auto& e : *ends[k])
                    for (const auto& [w, c] : e.terms()) reach[k].insert(w);
            }
        std::vector<Polynomial> cur{Polynomial()};
        for (std::size_t k = 0; k < terms.size(); ++k) {
            std::vector<Polynomial> next;
            std::unordered_set<Polynomial, PolynomialHash> seen;
            for (const auto& base : cur)
                for (const auto& e : *ends[k]) {
                    Polynomial q = base + e * terms[k].second;
                    if (to_zero) {
                        bool live = true;
                        for (const auto& [w, c] : q.terms())
                            if (!reach[k + 1].count(w)) {
                                live = false;
                                break;
                            }
                        if (!live) continue;
                    }
                    if (!seen.insert(q).second) continue;
                    if (next.size() == cap_) {
                        complete_ = false;
                        break;
                    }
                    next.push_back(std::move(q));
                }
            cur = std::move(next);
        }
        return cur;
    }

    Rewriter& rw_;
    std::size_t cap_;
    bool complete_ = true;
    std::unordered_map<Monomial, std::vector<Polynomial>, MonomialHash> memo_;
};

}  // namespace

std::string to_string(JoinMethod m) {
    switch (m) {
        case JoinMethod::NormalForm: return "normal-form";
        case JoinMethod::Outermost: return "outermost";
        case JoinMethod::Search: return "search";
        case JoinMethod::None: return "none";
    }
    return "?";
}

JoinChecker::JoinChecker(Rewriter& rw, std::size_t search_cap) : rw_(rw), cap_(search_cap) {}
JoinChecker::~JoinChecker() = default;

void JoinChecker::reset() { outer_.reset(); }

JoinResult JoinChecker::check(const CriticalBranching& cb, bool with_paths) {
    JoinResult r;
    r.left_nf = rw_.normal_form(cb.left.target);
    r.right_nf = rw_.normal_form(cb.right.target);
    if (r.left_nf == r.right_nf) {
        r.joinable = true;
        r.method = JoinMethod::NormalForm;
    } else {
        if (!outer_) {
            outer_ = std::make_unique<Rewriter>(rw_.system_ptr(), rw_.companion());
            outer_->set_fuel(rw_.fuel());
            outer_->set_strategy(Strategy::LeftmostOutermost);
        }
        if (outer_->normal_form(cb.left.target) == outer_->normal_form(cb.right.target)) {
            r.joinable = true;
            r.method = JoinMethod::Outermost;
        } else if (cap_ > 0) {
            ReductSearch search(rw_, cap_);
            r.joinable = search.reaches_zero(cb.left.target - cb.right.target);
            if (r.joinable) r.method = JoinMethod::Search;
            r.decided = r.joinable || search.complete();
        }
    }
    if (with_paths) {
        r.left = rw_.normalize(cb.left.target);
        r.right = rw_.normalize(cb.right.target);
    }
    return r;
}

JoinResult joinable(Rewriter& rw, const CriticalBranching& cb, bool with_paths) {
    return JoinChecker(rw).check(cb, with_paths);
}

MonomialOrder derivation_order(const std::string& measure, const Polygraph& X) {
    auto tm = std::make_shared<TerminationMeasure>(measure_by_name(measure, X));
    return [tm](const Monomial& a, const Monomial& b) {
        if (int c = compare_weights(tm->value(a), tm->value(b))) return c;
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        return compare_flat(a, b);
    };
}

bool gs_trivial(Rewriter& rw, const MonomialOrder& order, const CriticalBranching& cb) {
    // (a, b)_r with r the source: both sides reduce r, their difference is the composition
    Polynomial composition = cb.left.target - cb.right.target;
    Polynomial cur = composition;
    while (auto ps = rw.rewrite_once(cur)) {
        if (order(ps->step.source, cb.source) >= 0) return false;
        cur = std::move(ps->result);
    }
    return cur.is_zero();
}

// ---- family templates ----

namespace {

struct TElem {
    enum class Kind { Gen, Bracket, Var, Plug } kind = Kind::Gen;
    SymbolId sym = 0;
    std::vector<TElem> inner;
    std::string var;
    bool ne = false;
};
using TSeq = std::vector<TElem>;

void template_from_expr(const Expr& e, const Polygraph& X, TSeq& out) {
    switch (e.kind) {
        case Expr::Kind::Product:
            for (const auto& f : e.factors) template_from_expr(*f, X, out);
            return;
        case Expr::Kind::Sum:
            if (e.addends.size() == 1 && e.addends[0].first > 0) return template_from_expr(*e.addends[0].second, X, out);
            break;
        case Expr::Kind::Number:
            if (e.number == 1) return;
            break;
        case Expr::Kind::Apply: {
            auto op = find_operator(e.name);
            if (!op || std::find(X.ops.begin(), X.ops.end(), *op) == X.ops.end()) break;
            TElem t;
            t.kind = TElem::Kind::Bracket;
            t.sym = *op;
            template_from_expr(*e.arg, X, t.inner);
            out.push_back(std::move(t));
            return;
        }
        case Expr::Kind::Ident: {
            TElem t;
            if (e.name.size() == 1 && std::string_view("uvwstr").find(e.name[0]) != std::string_view::npos) {
                t.kind = TElem::Kind::Var;
                t.var = e.name;
                t.ne = std::string_view("str").find(e.name[0]) != std::string_view::npos;
            } else {
                auto g = find_generator(e.name);
                if (!g) break;
                t.sym = *g;
            }
            out.push_back(std::move(t));
            return;
        }
        case Expr::Kind::Plug: {
            TElem t;
            t.kind = TElem::Kind::Plug;
            template_from_expr(*e.arg, X, t.inner);
            out.push_back(std::move(t));
            return;
        }
        default: break;
    }
    throw std::invalid_argument("unsupported family template near column " + std::to_string(e.column));
}

std::size_t atom_flat(const Atom& a) { return a.is_bracket ? 2 + a.inner.flat_length() : 1; }

class TemplateMatcher {
public:
    // target: required flat span of the q{} redex; nullopt accepts any position
    explicit TemplateMatcher(std::optional<std::pair<std::size_t, std::size_t>> target) : target_(target) {}

    bool match(const TSeq& p, std::span<const Atom> atoms, std::size_t flat) {
        return seq(p, 0, atoms, 0, flat);
    }

private:
    bool seq(const TSeq& p, std::size_t pi, std::span<const Atom> atoms, std::size_t ai, std::size_t flat) {
        if (pi == p.size()) return ai == atoms.size();
        const TElem& e = p[pi];
        switch (e.kind) {
            case TElem::Kind::Gen:
                return ai < atoms.size() && !atoms[ai].is_bracket && atoms[ai].sym == e.sym &&
                       seq(p, pi + 1, atoms, ai + 1, flat + 1);
            case TElem::Kind::Bracket: {
                if (ai >= atoms.size() || !atoms[ai].is_bracket || atoms[ai].sym != e.sym) return false;
                auto saved = env_;
                if (seq(e.inner, 0, atoms[ai].inner.atoms(), 0, flat + 1) &&
                    seq(p, pi + 1, atoms, ai + 1, flat + atom_flat(atoms[ai])))
                    return true;
                env_ = std::move(saved);
                return false;
            }
            case TElem::Kind::Var:
            case TElem::Kind::Plug: {
                std::size_t f = flat;
                for (std::size_t len = 0; ai + len <= atoms.size(); ++len) {
                    if (len > 0) f += atom_flat(atoms[ai + len - 1]);
                    if (len == 0 && (e.ne || e.kind == TElem::Kind::Plug)) continue;
                    auto piece = atoms.subspan(ai, len);
                    auto saved = env_;
                    bool ok = true;
                    if (e.kind == TElem::Kind::Var) {
                        Monomial val(std::vector<Atom>(piece.begin(), piece.end()));
                        auto [it, fresh] = env_.emplace(e.var, val);
                        ok = fresh || it->second == val;
                    } else {
                        ok = contains(e.inner, piece, flat);
                    }
                    if (ok && seq(p, pi + 1, atoms, ai + len, f)) return true;
                    env_ = std::move(saved);
                }
                return false;
            }
        }
        return false;
    }

    // an occurrence of x at some level inside atoms, at the target span if one is set
    bool contains(const TSeq& x, std::span<const Atom> atoms, std::size_t flat) {
        std::size_t fa = flat;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            std::size_t fb = fa;
            if (!target_ || target_->first == fa) {
                for (std::size_t b = a; b <= atoms.size(); ++b) {
                    if (b > a) fb += atom_flat(atoms[b - 1]);
                    if (target_ && fb != target_->second) continue;
                    auto saved = env_;
                    if (seq(x, 0, atoms.subspan(a, b - a), 0, fa)) return true;
                    env_ = std::move(saved);
                }
            }
            const Atom& at = atoms[a];
            std::size_t end = fa + atom_flat(at);
            if (at.is_bracket && (!target_ || (target_->first > fa && target_->second < end)))
                if (contains(x, at.inner.atoms(), fa + 1)) return true;
            fa = end;
        }
        return false;
    }

    std::optional<std::pair<std::size_t, std::size_t>> target_;
    std::map<std::string, Monomial> env_;
};

const TSeq& compile_template(const std::string& text, const Polygraph& X) {
    // symbols are interned process-wide, so the compiled form depends on the
    // text and on which operators the system declares
    static std::map<std::pair<std::string, std::vector<SymbolId>>, TSeq> cache;
    auto key = std::make_pair(text, X.ops);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    ExprPtr e = parse_expr(text);
    TSeq t;
    template_from_expr(*e, X, t);
    return cache.emplace(std::move(key), std::move(t)).first->second;
}

}  // namespace

std::optional<std::string> classify_family(const Polygraph& X, const std::vector<FamilyTemplate>& families,
                                           const CriticalBranching& cb) {
    const std::string kind = to_string(cb.kind);
    const std::string& lr = X.rules[cb.left.rule].name;
    const std::string& rr = X.rules[cb.right.rule].name;
    for (const auto& f : families) {
        if (f.kind != kind || f.left_rule != lr || f.right_rule != rr) continue;
        std::optional<std::pair<std::size_t, std::size_t>> target;
        if (cb.kind == CriticalKind::Inclusion) target.emplace(cb.right.flat_start, cb.right.flat_end);
        TemplateMatcher m(target);
        if (m.match(compile_template(f.source, X), cb.source.atoms(), 0)) return f.group;
    }
    return std::nullopt;
}

bool matches_template(const std::string& source_template, const Polygraph& X, const Monomial& m) {
    TemplateMatcher matcher(std::nullopt);
    return matcher.match(compile_template(source_template, X), m.atoms(), 0);
}

}  // namespace orw
