#include "orw/resolution.hpp"

#include <optional>
#include <stdexcept>

#include "orw/enumerate.hpp"

namespace orw {

std::string to_string(EssentialKind k) {
    switch (k) {
        case EssentialKind::Reduced: return "reduced";
        case EssentialKind::EssentialGen: return "essential-gen";
        case EssentialKind::EssentialBracket: return "essential-bracket";
        case EssentialKind::NonEssential: return "non-essential";
    }
    return "?";
}

EssentialKind essential_kind(Rewriter& rw, const Monomial& m) {
    if (rw.is_normal(m)) return EssentialKind::Reduced;
    const Atom& a = m.atoms()[0];
    Monomial v = m.slice(1, m.breadth());
    if (!rw.is_normal(v)) return EssentialKind::NonEssential;
    if (!a.is_bracket) return EssentialKind::EssentialGen;
    return rw.is_normal(a.inner) ? EssentialKind::EssentialBracket : EssentialKind::NonEssential;
}

namespace {

Step lift(Rewriter& rw, const Step& s, const Context& q) {
    std::size_t off = q.hole_flat_offset();
    return rw.make_step(s.rule, s.binding, q.compose(s.context), s.flat_start + off, s.flat_end + off);
}

// steps taking c * q|m to c * q|NF(m)
void sigma_rec(Rewriter& rw, const Monomial& m, const Rational& c, const Context& q,
               std::vector<std::pair<Rational, Step>>& out) {
    if (rw.is_normal(m)) return;
    const Atom& a = m.atoms()[0];
    Monomial head(std::vector<Atom>{a});
    Monomial v = m.slice(1, m.breadth());
    if (a.is_bracket && !rw.is_normal(a.inner)) {
        Context inner = q.compose(Context().within_bracket(a.sym).within(Monomial(), v));
        sigma_rec(rw, a.inner, c, inner, out);
        const Polynomial inner_nf = rw.normal_form(a.inner);
        for (const auto& [w, d] : inner_nf.terms())
            sigma_rec(rw, Monomial::bracket(a.sym, w) * v, c * d, q, out);
        return;
    }
    if (!rw.is_normal(v)) {
        sigma_rec(rw, v, c, q.compose(Context::left_right(head, Monomial())), out);
        const Polynomial v_nf = rw.normal_form(v);
        for (const auto& [w, d] : v_nf.terms()) sigma_rec(rw, head * w, c * d, q, out);
        return;
    }
    std::optional<Step> at_left;
    for (auto& s : rw.steps(m))
        if (s.flat_start == 0) {
            if (at_left) throw RewriteError("two redexes at the left end of " + to_string(m) + "; system not reduced");
            at_left = std::move(s);
        }
    if (!at_left) throw RewriteError("no redex at the left end of " + to_string(m) + "; system not reduced");
    out.emplace_back(c, lift(rw, *at_left, q));
    Polynomial local = at_left->target;
    for (const auto& [w, d] : local.terms()) sigma_rec(rw, w, c * d, q, out);
}

RewritePath assemble(const Polynomial& start, std::vector<std::pair<Rational, Step>>& steps) {
    RewritePath p;
    p.start = start;
    Polynomial cur = start;
    for (auto& [c, s] : steps) {
        cur = Rewriter::apply(cur, c, s);
        p.steps.push_back({c, std::move(s), cur});
    }
    return p;
}

}  // namespace

RewritePath sigma_path(Rewriter& rw, const Polynomial& a) {
    std::vector<std::pair<Rational, Step>> steps;
    for (const auto& [m, c] : a.terms()) sigma_rec(rw, m, c, Context(), steps);
    return assemble(a, steps);
}

Monomial SquierTuple::product() const {
    Monomial m;
    for (std::size_t i = epsilon ? 1 : 0; i < parts.size(); ++i) m = m * parts[i];
    return m;
}

std::size_t SquierTuple::size() const { return product().size(); }

std::string to_string(const SquierTuple& t) {
    std::string out;
    for (std::size_t i = 0; i < t.parts.size(); ++i) {
        if (i) out += " | ";
        out += (i == 0 && t.epsilon) ? "eps" : to_string(t.parts[i]);
    }
    return out;
}

bool left_factors_normal(Rewriter& rw, const Monomial& m) {
    for (std::size_t k = 1; k < m.breadth(); ++k)
        if (!rw.is_normal(m.slice(0, k))) return false;
    return true;
}

std::vector<SquierTuple> squier_generators(Rewriter& rw, std::size_t n, std::size_t bound) {
    if (n == 0) throw std::invalid_argument("Squier generators start at dimension 1");
    MonomialEnumerator en(rw.system().alphabet());
    // normal forms by size
    std::vector<std::vector<Monomial>> nf(bound + 1);
    for (std::size_t s = 0; s <= bound; ++s)
        for (const auto& m : en.exactly(s))
            if (rw.is_normal(m)) nf[s].push_back(m);

    auto minimal_reducible = [&](const Monomial& m) { return !rw.is_normal(m) && left_factors_normal(rw, m); };

    // dimension 1, case (a): u1 a generator or a normal bracket
    std::vector<SquierTuple> cur;
    for (std::size_t s1 = 1; s1 <= bound; ++s1)
        for (const auto& u1 : nf[s1]) {
            if (u1.breadth() != 1) continue;
            for (std::size_t s2 = 1; s1 + s2 <= bound; ++s2)
                for (const auto& u2 : nf[s2])
                    if (minimal_reducible(u1 * u2)) cur.push_back({false, {u1, u2}});
        }
    if (n == 1) {
        // case (b): eps | B(u0) with u0 normal and B(u0) reducible
        for (std::size_t s = 1; s <= bound; ++s)
            for (const auto& m : en.exactly(s))
                if (m.is_single_bracket() && rw.is_normal(m.atoms()[0].inner) && !rw.is_normal(m))
                    cur.push_back({true, {Monomial(), m}});
        return cur;
    }
    for (std::size_t dim = 2; dim <= n; ++dim) {
        std::vector<SquierTuple> next;
        for (const auto& t : cur) {
            std::size_t used = t.size();
            for (std::size_t s = 1; used + s <= bound; ++s)
                for (const auto& u : nf[s])
                    if (minimal_reducible(t.parts.back() * u)) {
                        SquierTuple e = t;
                        e.parts.push_back(u);
                        next.push_back(std::move(e));
                    }
        }
        cur = std::move(next);
    }
    return cur;
}

Boundary boundary(Rewriter& rw, const SquierTuple& t) {
    Boundary b;
    b.dimension = t.dimension();
    b.source = t.product();
    if (b.dimension == 1) {
        b.target = rw.normal_form(b.source);
        return b;
    }
    if (b.dimension != 2) throw std::invalid_argument("boundaries are supported up to dimension 2");
    // left: the generator u1|u2 acting on u1 u2 u3, then sigma of what it produced
    Monomial u12 = t.parts[0] * t.parts[1];
    std::optional<Step> gen;
    for (auto& s : rw.steps(u12))
        if (s.flat_start == 0) {
            if (gen) throw RewriteError("two redexes at the left end of " + to_string(u12) + "; system not reduced");
            gen = std::move(s);
        }
    if (!gen) throw std::invalid_argument(to_string(t) + " is not a generator: " + to_string(u12) + " has no left redex");
    std::vector<std::pair<Rational, Step>> steps;
    steps.emplace_back(1, lift(rw, *gen, Context::left_right(Monomial(), t.parts[2])));
    Polynomial mid = Rewriter::apply(Polynomial(b.source), 1, steps.back().second);
    for (const auto& [m, c] : mid.terms()) sigma_rec(rw, m, c, Context(), steps);
    b.left = assemble(Polynomial(b.source), steps);
    b.right = sigma_path(rw, Polynomial(b.source));
    return b;
}

}  // namespace orw
