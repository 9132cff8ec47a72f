#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "orw/automaton.hpp"
#include "orw/checks.hpp"
#include "orw/derivation.hpp"
#include "orw/system_file.hpp"

using namespace orw;
using namespace orw::test;

namespace {

Preset preset(const char* name, std::vector<std::string> gens = {"x", "y"}) {
    return load_preset(name, gens, 1);
}

std::shared_ptr<Rewriter> from_text(const std::string& text) {
    return make_rewriter(parse_system(text));
}

}  // namespace

TEST_CASE("occurrences at every level") {
    auto rw = from_text("name t\nops B\ngens x y z\nrule r: x y -> z\n");
    Signature s = rw->system().signature();
    auto occ = rw->match(0, mono("B(x*y)*x*y", s));
    REQUIRE(occ.size() == 2);
    // innermost first
    CHECK(occ[0].flat_start == 1);
    CHECK(occ[0].flat_end == 3);
    CHECK(occ[1].flat_start == 4);
    CHECK(occ[1].context.plug(mono("x*y", s)) == mono("B(x*y)*x*y", s));
    CHECK(rw->normal_form(mono("B(x*y)*x*y", s)) == poly("B(z)*z", s));
}

TEST_CASE("splittings of D(xyz)") {
    Preset p = preset("XD", {"x", "y", "z"});
    Signature s = p.system->signature();
    auto occ = p.rewriter->match(0, mono("D(x*y*z)", s));
    REQUIRE(occ.size() == 2);
    // every split of the breadth-3 word into two nonempty parts
    Monomial w = mono("x*y*z", s);
    std::set<std::pair<std::string, std::string>> want, got;
    for (std::size_t k = 1; k < w.breadth(); ++k)
        want.insert({to_string(w.slice(0, k)), to_string(w.slice(k, w.breadth()))});
    for (const auto& o : occ) got.insert({to_string(o.binding.values[0]), to_string(o.binding.values[1])});
    CHECK(got == want);
    CHECK(want.size() == 2);
    // ne: no empty split of D(x)
    CHECK(p.rewriter->match(0, mono("D(x)", s)).empty());
}

TEST_CASE("single steps") {
    Preset d = preset("XD");
    Signature s = d.system->signature();
    auto st = d.rewriter->steps(mono("D(x*y)", s));
    REQUIRE(st.size() == 1);
    CHECK(st[0].target == poly("D(x)*y + x*D(y) + D(x)*D(y)", s));
    CHECK(d.rewriter->steps(mono("D(1)", s))[0].target.is_zero());

    Preset p = preset("XP");
    Signature sp = p.system->signature();
    auto sp1 = p.rewriter->steps(mono("P(x)*P(y)", sp));
    REQUIRE(sp1.size() == 1);
    CHECK(sp1[0].target == poly("P(P(x)*y) + P(x*P(y)) + P(x*y)", sp));
    auto once = p.rewriter->rewrite_once(poly("y*P(x)*P(y)", sp));
    REQUIRE(once);
    CHECK(once->result == poly("y*P(P(x)*y) + y*P(x*P(y)) + y*P(x*y)", sp));
}

TEST_CASE("normal forms") {
    Preset pd = preset("XPD");
    Signature s = pd.system->signature();
    CHECK(pd.rewriter->normal_form(mono("D(P(x))", s)) == poly("x", s));
    Preset i = preset("XI");
    Signature si = i.system->signature();
    CHECK(i.rewriter->normal_form(mono("B(B(B(x)))", si)) == poly("B(x)", si));
    Preset d = preset("XD", {"x"});
    Signature sd = d.system->signature();
    CHECK(d.rewriter->normal_form(mono("D(x*x)", sd)) == poly("D(x)*x + x*D(x) + D(x)*D(x)", sd));
    RewritePath path = d.rewriter->normalize(poly("D(x*x)", sd));
    CHECK(path.end() == d.rewriter->normal_form(poly("D(x*x)", sd)));
    CHECK(path.steps.size() == 1);
}

TEST_CASE("fuel runs out on a cycle") {
    auto rw = from_text("name t\nops B\ngens x y\nrule a: x -> y\nrule b: y -> x\n");
    rw->set_fuel(1000);
    CHECK_THROWS_AS(rw->normal_form(mono("x", rw->system().signature())), FuelExhausted);
}

TEST_CASE("reducedness") {
    Preset d = preset("XD");
    ReducedReport rd = check_reduced(*d.rewriter, 5);
    CHECK_FALSE(rd.reduced());
    CHECK_FALSE(rd.witnesses.empty());
    Preset p = preset("XP_reduced", {"x"});
    CHECK(check_reduced(*p.rewriter, 7).reduced());
    Preset i = preset("XI_reduced", {"x"});
    CHECK(check_reduced(*i.rewriter, 7).reduced());
}

TEST_CASE("derivation values") {
    Signature sd = preset("XD").system->signature();
    auto diff = derivation_by_name("diff-weight");
    CHECK(derivation_value(diff, mono("D(1)", sd)) == Weight{0, 1, 0});
    CHECK(derivation_value(diff, mono("D(x*y)", sd)) == Weight{1, 1, 2});
    CHECK(derivation_value(diff, mono("D(x)*D(y)", sd)) == Weight{0, 2, 2});
    Signature sp = preset("XP").system->signature();
    auto rb = derivation_by_name("rb-weight");
    CHECK(derivation_value(rb, mono("P(1)", sp)) == Weight{1, 1});
    CHECK(derivation_value(rb, mono("P(x)*P(y)", sp)) == Weight{2, 4});
    CHECK(derivation_value(rb, mono("P(P(x)*y)", sp)) == Weight{2, 3});
    CHECK(compare_weights({2, 4}, {2, 3}) > 0);
}

TEST_CASE("derivation extends additively over products") {
    Signature s = sig({"x", "y"}, {"D", "P"});
    MonomialEnumerator en(alphabet(s));
    auto ms = en.up_to(3);
    for (const char* name : {"rb-weight", "pd-weight", "op-count"}) {
        auto d = derivation_by_name(name);
        CAPTURE(std::string(name));
        for (const auto& a : ms)
            for (const auto& b : ms) {
                // d(ab) = d(a).b + a.d(b)
                Weight lhs = derivation_value(d, a * b);
                Weight l = d.act(Monomial(), derivation_value(d, a), b);
                Weight r = d.act(a, derivation_value(d, b), Monomial());
                Weight sum(lhs.size());
                for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = l[k] + r[k];
                REQUIRE(lhs == sum);
            }
    }
}

TEST_CASE("termination evidence") {
    for (const char* name : {"XD", "XP", "XPD"}) {
        CAPTURE(std::string(name));
        Preset p = preset(name, {"x"});
        TerminationReport r = check_termination(*p.rewriter, measure_by_name(p.system->measure, *p.system), 6);
        CHECK(r.pass);
        CHECK(r.instances > 0);
    }
    Preset n = load_preset("no_monomial_order", {"x", "y", "z"}, 1);
    TerminationReport r = check_termination(*n.rewriter, measure_by_name("count:x B(y) z", *n.system), 8);
    CHECK(r.pass);
}

TEST_CASE("a measure that does not decrease is reported") {
    auto rw = from_text("name t\nops P\ngens x\nrule grow: P(x) -> P(x) P(x)\n");
    TerminationReport r = check_termination(*rw, measure_by_name("op-count", rw->system()), 4);
    CHECK_FALSE(r.pass);
    CHECK(r.counterexample);
}

TEST_CASE("step source and target are the context around the rule") {
    for (const char* name : {"XD", "XP", "XPD", "XI", "YD"}) {
        CAPTURE(std::string(name));
        Preset p = preset(name, {"x"});
        MonomialEnumerator en(p.system->alphabet());
        for (const auto& m : en.up_to(5)) {
            for (const auto& st : p.rewriter->steps(m)) {
                REQUIRE(st.source == m);
                REQUIRE(st.context.plug(st.lhs) == m);
                REQUIRE(st.target == st.context.plug(p.rewriter->rule_target(st.rule, st.binding)));
                REQUIRE(flatten(m).size() >= st.flat_end);
                REQUIRE(st.flat_end - st.flat_start == st.lhs.flat_length());
            }
        }
    }
}

TEST_CASE("normal forms do not depend on the strategy") {
    std::mt19937_64 rng(5);
    for (const char* name : {"XD", "XD_reduced", "XP", "XP_reduced", "XI", "XI_reduced", "XPD", "YD"}) {
        CAPTURE(std::string(name));
        Preset p = preset(name, {"x", "y"});
        Rewriter outer(p.system, p.rewriter->companion());
        outer.set_strategy(Strategy::LeftmostOutermost);
        Alphabet al = p.system->alphabet();
        for (int i = 0; i < 500; ++i) {
            Monomial m = random_monomial(rng, al, 1 + rng() % 7);
            Polynomial nf = p.rewriter->normal_form(m);
            REQUIRE(p.rewriter->normalize_random(Polynomial(m), rng) == nf);
            REQUIRE(outer.normal_form(m) == nf);
            REQUIRE(p.rewriter->normal_form(nf) == nf);
            REQUIRE(p.rewriter->is_normal(nf));
        }
    }
}

TEST_CASE("context compatibility of the weights") {
    Signature s = sig({"x", "y"}, {"D", "P"});
    MonomialEnumerator en(alphabet(s));
    auto ms = en.up_to(3);
    auto qs = contexts_up_to(en, 3);
    for (const char* name : {"rb-weight", "pd-weight", "op-count"}) {
        CAPTURE(std::string(name));
        auto d = derivation_by_name(name);
        for (const auto& a : ms)
            for (const auto& b : ms) {
                if (compare_weights(derivation_value(d, a), derivation_value(d, b)) <= 0) continue;
                for (const auto& q : qs)
                    REQUIRE(compare_weights(derivation_value(d, q.plug(a)), derivation_value(d, q.plug(b))) > 0);
            }
    }
    // diff-weight is not: the rule instance decreases, its D-context does not
    auto diff = derivation_by_name("diff-weight");
    CHECK(compare_weights(derivation_value(diff, mono("D(x*y)", s)), derivation_value(diff, mono("D(x)*D(y)", s))) > 0);
    CHECK(derivation_value(diff, mono("D(D(x*y))", s)) == Weight{3, 2, 2});
    CHECK(derivation_value(diff, mono("D(D(x)*D(y))", s)) == Weight{3, 3, 2});
    Preset xd = preset("XD");
    TerminationReport r = check_termination(*xd.rewriter, measure_by_name("diff-weight", *xd.system), 5);
    CHECK(r.pass);
    CHECK_FALSE(r.warnings.empty());
}
