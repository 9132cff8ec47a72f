#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "orw/branchings.hpp"
#include "orw/resolution.hpp"
#include "orw/system_file.hpp"

using namespace orw;
using namespace orw::test;

namespace {

Preset preset(const char* name, std::vector<std::string> gens = {"x"}) { return load_preset(name, gens, 1); }

std::multiset<std::string> products(const std::vector<SquierTuple>& ts) {
    std::multiset<std::string> out;
    for (const auto& t : ts) out.insert(to_string(t.product()));
    return out;
}

bool all_single_p(const SquierTuple& t, SymbolId P) {
    if (t.epsilon) return false;
    for (const auto& u : t.parts)
        if (!u.is_single_bracket() || u.atoms()[0].sym != P) return false;
    return true;
}

}  // namespace

TEST_CASE("essential monomials") {
    Preset p = preset("XP_reduced", {"x", "y", "z"});
    Signature s = p.system->signature();
    Rewriter& rw = *p.rewriter;
    CHECK(essential_kind(rw, mono("x*P(x)", s)) == EssentialKind::Reduced);
    CHECK(essential_kind(rw, mono("P(x)*P(y)", s)) == EssentialKind::EssentialBracket);
    CHECK(essential_kind(rw, mono("P(x)*P(y)*P(z)", s)) == EssentialKind::NonEssential);
    CHECK(essential_kind(rw, mono("P(P(x)*P(x))*P(x)", s)) == EssentialKind::NonEssential);
    auto g = make_rewriter(parse_system("name t\nops B\ngens x y z\nrule r: x y -> z\n"));
    Signature sg = g->system().signature();
    CHECK(essential_kind(*g, mono("x*y", sg)) == EssentialKind::EssentialGen);
    CHECK(essential_kind(*g, mono("x*y*y", sg)) == EssentialKind::EssentialGen);
    CHECK(essential_kind(*g, mono("B(x*y)", sg)) == EssentialKind::NonEssential);
}

TEST_CASE("contraction paths") {
    Preset p = preset("XP_reduced", {"x", "y", "z"});
    Signature s = p.system->signature();
    Rewriter& rw = *p.rewriter;
    RewritePath a = sigma_path(rw, poly("P(x)*P(y)", s));
    REQUIRE(a.steps.size() == 1);
    CHECK(a.steps[0].step.flat_start == 0);
    CHECK(to_string(a.steps[0].step, *p.system) == "alpha[x, y]");
    CHECK(a.end() == rw.normal_form(poly("P(x)*P(y)", s)));
    // sigma(yv) = y sigma(v), then sigma(y NF(v)): the right pair goes first
    RewritePath b = sigma_path(rw, poly("P(x)*P(y)*P(z)", s));
    REQUIRE(b.steps.size() >= 2);
    CHECK(to_string(b.steps[0].step, *p.system) == "alpha[y, z] in P(x)*_");
    CHECK(b.end() == rw.normal_form(poly("P(x)*P(y)*P(z)", s)));
    CHECK(sigma_path(rw, poly("x*P(x)", s)).steps.empty());

    // two splittings of D(xxx) both sit at the left end
    auto np = preset("XD");
    CHECK_THROWS_AS(sigma_path(*np.rewriter, poly("D(x*x*x)", np.system->signature())), RewriteError);
}

TEST_CASE("contraction ends at the normal form") {
    for (const char* name : {"XP_reduced", "XI_reduced", "XD_reduced"}) {
        CAPTURE(std::string(name));
        Preset p = preset(name);
        MonomialEnumerator en(p.system->alphabet());
        for (const auto& m : en.up_to(6)) {
            RewritePath path = sigma_path(*p.rewriter, Polynomial(m));
            REQUIRE(path.end() == p.rewriter->normal_form(m));
            Polynomial cur(m);
            for (const auto& st : path.steps) {
                REQUIRE(cur.coefficient(st.step.source) == st.coefficient);
                cur = st.result;
            }
        }
    }
}

TEST_CASE("Rota-Baxter Squier generators are P-tuples") {
    Preset p = preset("XP_reduced");
    SymbolId P = p.system->ops[0];
    for (std::size_t n = 1; n <= 3; ++n) {
        auto sq = squier_generators(*p.rewriter, n, 7);
        CHECK_FALSE(sq.empty());
        for (const auto& t : sq) {
            REQUIRE(t.dimension() == n);
            REQUIRE(t.size() <= 7);
            REQUIRE(all_single_p(t, P));
            for (const auto& u : t.parts) REQUIRE(p.rewriter->is_normal(u));
        }
    }
}

TEST_CASE("generators match critical branchings") {
    Preset p = preset("XP_reduced");
    for (std::size_t n = 2; n <= 3; ++n) {
        CAPTURE(n);
        std::multiset<std::string> br;
        for (const auto& b : critical_n_branchings(*p.rewriter, n, 7)) br.insert(to_string(b[0].source));
        CHECK(br == products(squier_generators(*p.rewriter, n, 7)));
    }
    std::multiset<std::string> cp;
    for (const auto& cb : critical_pairs(*p.rewriter, 7)) cp.insert(to_string(cb.source));
    CHECK(cp == products(squier_generators(*p.rewriter, 2, 7)));
}

TEST_CASE("boundaries") {
    Preset p = preset("XP_reduced");
    Signature s = p.system->signature();
    Rewriter& rw = *p.rewriter;
    for (const auto& t : squier_generators(rw, 1, 6)) {
        Boundary b = boundary(rw, t);
        REQUIRE(b.dimension == 1);
        REQUIRE(b.target == rw.normal_form(b.source));
    }
    std::size_t n = 0;
    for (const auto& t : squier_generators(rw, 2, 8)) {
        Boundary b = boundary(rw, t);
        REQUIRE(b.dimension == 2);
        REQUIRE(b.left.start == Polynomial(b.source));
        REQUIRE(b.right.start == Polynomial(b.source));
        REQUIRE(b.left.end() == b.right.end());
        REQUIRE(b.left.end() == rw.normal_form(b.source));
        // the left path opens with the generator u1|u2
        REQUIRE_FALSE(b.left.steps.empty());
        REQUIRE(b.left.steps[0].step.lhs == t.parts[0] * t.parts[1]);
        ++n;
    }
    CHECK(n > 0);
    Preset q = preset("XP_reduced", {"x", "y", "z"});
    Signature sq = q.system->signature();
    Boundary one = boundary(*q.rewriter, SquierTuple{false, {mono("P(x)", sq), mono("P(y)", sq)}});
    CHECK(one.source == mono("P(x)*P(y)", sq));
    CHECK(one.target == poly("P(P(x)*y) + P(x*P(y)) + P(x*y)", sq));
    SquierTuple t{false, {mono("P(x)", sq), mono("P(y)", sq), mono("P(z)", sq)}};
    Boundary b = boundary(*q.rewriter, t);
    CHECK(b.source == mono("P(x)*P(y)*P(z)", sq));
    CHECK(to_string(b.left.steps[0].step, *q.system) == "alpha[x, y] in _*P(z)");
    CHECK(to_string(b.right.steps[0].step, *q.system) == "alpha[y, z] in P(x)*_");
    CHECK(b.left.end() == b.right.end());
    CHECK(b.left.end() == q.rewriter->normal_form(b.source));
    auto sq3 = squier_generators(rw, 3, 8);
    REQUIRE_FALSE(sq3.empty());
    CHECK_THROWS_AS(boundary(rw, sq3[0]), std::invalid_argument);
    CHECK_THROWS_AS(squier_generators(rw, 0, 4), std::invalid_argument);
}

TEST_CASE("involution and differential generators") {
    Preset i = preset("XI_reduced");
    Signature s = i.system->signature();
    SymbolId B = i.system->ops[0];
    auto sq1 = squier_generators(*i.rewriter, 1, 8);
    REQUIRE_FALSE(sq1.empty());
    std::set<std::string> seen;
    for (const auto& t : sq1) {
        REQUIRE(t.epsilon);
        const Monomial& m = t.parts[1];
        REQUIRE(m.is_single_bracket());
        REQUIRE(m.atoms()[0].sym == B);
        REQUIRE(m.atoms()[0].inner.is_single_bracket());
        REQUIRE(m.atoms()[0].inner.atoms()[0].sym == B);
        seen.insert(to_string(t));
    }
    CHECK(seen.count("eps | B(B(x))"));
    CHECK(seen.count("eps | B(B(1))"));
    CHECK(seen.count("eps | B(B(x*x))"));
    CHECK_FALSE(seen.count("eps | B(B(B(x)))"));
    CHECK(squier_generators(*i.rewriter, 2, 8).empty());
    CHECK(boundary(*i.rewriter, SquierTuple{true, {Monomial(), mono("B(B(x))", s)}}).target == poly("x", s));

    Preset d = preset("XD_reduced");
    for (std::size_t n = 2; n <= 3; ++n) CHECK(squier_generators(*d.rewriter, n, 8).empty());
    CHECK_FALSE(squier_generators(*d.rewriter, 1, 5).empty());
}
