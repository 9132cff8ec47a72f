#include "orw/presets.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "orw/system_file.hpp"

namespace orw {

namespace {

struct PresetDef {
    const char* name;
    const char* ops;
    bool needs_nonzero_lambda;
    const char* body;  // directives and rules after ops/gens/lambda
};

const std::vector<PresetDef>& defs() {
    static const std::vector<PresetDef> d{
        {"XD", "D", false,
         "measure diff-weight\nphi D_theta_star\nmachine A_D\n"
         "rule alpha(u: ne, v: ne): D(u v) -> D(u) v + u D(v) + lambda D(u) D(v)\n"
         "rule phi: D(1) -> 0\n"},
        {"XD_reduced", "D", false,
         "measure diff-weight\nphi D_theta_star\nmachine A_D\n"
         "rule alpha(us: seq nf): D(us) -> leibniz(D, us)\n"
         "rule phi: D(1) -> 0\n"},
        {"YD", "D", true,
         "measure op-count\nphi Phi_D\n"
         "rule alpha(u: ne, v: ne): D(u) D(v) -> lambda^-1 (D(u v) - D(u) v - u D(v))\n"
         "rule phi: D(1) -> 0\n"},
        {"YD_reduced", "D", true,
         "measure op-count\nphi Phi_D\ncompanion YD\n"
         "rule alpha(u: ne phi, v: ne phi): D(u) D(v) -> lambda^-1 (NF(D(u v)) - NF(D(u) v) - NF(u D(v)))\n"
         "rule phi: D(1) -> 0\n"},
        {"XP", "P", false,
         "measure rb-weight\nphi Phi_P\nmachine A_P\n"
         "rule alpha(u, v): P(u) P(v) -> P(P(u) v) + P(u P(v)) + lambda P(u v)\n"},
        {"XP_reduced", "P", false,
         "measure rb-weight\nphi Phi_P\nmachine A_P\ncompanion XP\n"
         "rule alpha(u: phi, v: phi): P(u) P(v) -> P(NF(P(u) v)) + P(NF(u P(v))) + lambda P(NF(u v))\n"},
        {"XI", "B", false,
         "measure count:B(B(u))\nphi Phi_I\n"
         "rule beta(u): B(B(u)) -> u\n"},
        {"XI_reduced", "B", false,
         "measure count:B(B(u))\nphi Phi_I\n"
         "rule beta(u: nf nb): B(B(u)) -> u\n"},
        {"X_DRB_pre", "D P", true,
         "measure pd-weight\nphi Phi_PD\n"
         "rule alpha(u, v): P(u) P(v) -> P(P(u) v) + P(u P(v)) + lambda P(u v)\n"
         "rule beta(w1: ne, w2: ne): D(w1) D(w2) -> lambda^-1 (D(w1 w2) - D(w1) w2 - w1 D(w2))\n"
         "rule gamma(u): D(P(u)) -> u\n"
         "rule phi: D(1) -> 0\n"},
        {"XPD", "D P", true,
         "measure pd-weight\nphi Phi_PD\nmachine A_PD\n"
         "rule alpha(u, v): P(u) P(v) -> P(P(u) v) + P(u P(v)) + lambda P(u v)\n"
         "rule beta(w1: ne, w2: ne): D(w1) D(w2) -> lambda^-1 (D(w1 w2) - D(w1) w2 - w1 D(w2))\n"
         "rule gamma(u): D(P(u)) -> u\n"
         "rule delta1(u, w2: ne): P(u) D(w2) -> D(P(u) w2) - u w2 - lambda u D(w2)\n"
         "rule delta2(w1: ne, v): D(w1) P(v) -> D(w1 P(v)) - w1 v - lambda D(w1) v\n"
         "rule phi: D(1) -> 0\n"},
        {"XPD_reduced", "D P", true,
         "measure pd-weight\nphi Phi_PD\nmachine A_PD\ncompanion XPD\n"
         "rule alpha(u: phi, v: phi): P(u) P(v) -> P(NF(P(u) v)) + P(NF(u P(v))) + lambda P(NF(u v))\n"
         "rule beta(w1: ne phi, w2: ne phi): D(w1) D(w2) -> lambda^-1 (NF(D(w1 w2)) - NF(D(w1) w2) - NF(w1 D(w2)))\n"
         "rule gamma(u: phi): D(P(u)) -> u\n"
         "rule delta1(u: phi, w2: ne phi): P(u) D(w2) -> NF(D(P(u) w2)) - NF(u w2) - lambda NF(u D(w2))\n"
         "rule delta2(w1: ne phi, v: phi): D(w1) P(v) -> NF(D(w1 P(v))) - NF(w1 v) - lambda NF(D(w1) v)\n"
         "rule phi: D(1) -> 0\n"},
        {"no_monomial_order", "B", false,
         "measure count:x B(y) z\n"
         "rule rho: x B(y) z -> B(x) y B(z) + B(x) B(y) z + x B(y) B(z)\n"},
    };
    return d;
}

const PresetDef& def(std::string_view name) {
    for (const auto& d : defs())
        if (name == d.name) return d;
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

std::vector<FamilyTemplate> xp_families() {
    return {
        {"i", "alpha", "alpha", "intersection", "P(u) P(v) P(w)"},
        {"ii", "alpha", "alpha", "inclusion", "P(q{P(u) P(v)}) P(w)"},
        {"iii", "alpha", "alpha", "inclusion", "P(u) P(q{P(v) P(w)})"},
    };
}

std::vector<FamilyTemplate> yd_families() {
    return {
        {"i", "alpha", "alpha", "intersection", "D(s) D(t) D(r)"},
        {"ii", "alpha", "alpha", "inclusion", "D(q{D(s) D(t)}) D(r)"},
        {"iii", "alpha", "alpha", "inclusion", "D(s) D(q{D(t) D(r)})"},
        {"iv", "alpha", "phi", "inclusion", "D(q{D(1)}) D(s)"},
        {"v", "alpha", "phi", "inclusion", "D(s) D(q{D(1)})"},
    };
}

// The appendix catalogue: u, v, w range over all monomials, s, t, r over
// monomials other than 1. A top-level q{X} marks the inner redex directly.
std::vector<FamilyTemplate> xpd_families() {
    const char* I = "intersection";
    const char* N = "inclusion";
    return {
        {"alpha^alpha", "alpha", "alpha", I, "P(u) P(v) P(w)"},
        {"alpha^alpha", "alpha", "alpha", N, "P(q{P(u) P(v)}) P(w)"},
        {"alpha^alpha", "alpha", "alpha", N, "P(u) P(q{P(v) P(w)})"},
        {"alpha^beta", "alpha", "beta", N, "P(q{D(s) D(t)}) P(u)"},
        {"alpha^beta", "alpha", "beta", N, "P(u) P(q{D(s) D(t)})"},
        {"alpha^gamma", "alpha", "gamma", N, "P(q{D(P(u))}) P(v)"},
        {"alpha^gamma", "alpha", "gamma", N, "P(u) P(q{D(P(v))})"},
        {"alpha^delta1", "alpha", "delta1", I, "P(u) P(v) D(s)"},
        {"alpha^delta1", "alpha", "delta1", N, "P(q{P(u) D(s)}) P(v)"},
        {"alpha^delta1", "alpha", "delta1", N, "P(u) P(q{P(v) D(s)})"},
        {"alpha^delta2", "alpha", "delta2", N, "P(q{D(s) P(u)}) P(v)"},
        {"alpha^delta2", "alpha", "delta2", N, "P(u) P(q{D(s) P(v)})"},
        {"alpha^phi", "alpha", "phi", N, "P(q{D(1)}) P(w)"},
        {"alpha^phi", "alpha", "phi", N, "P(u) P(q{D(1)})"},
        {"beta^alpha", "beta", "alpha", N, "D(q{P(u) P(v)}) D(s)"},
        {"beta^alpha", "beta", "alpha", N, "D(s) D(q{P(u) P(v)})"},
        {"beta^beta", "beta", "beta", I, "D(s) D(t) D(r)"},
        {"beta^beta", "beta", "beta", N, "D(q{D(s) D(t)}) D(r)"},
        {"beta^beta", "beta", "beta", N, "D(s) D(q{D(t) D(r)})"},
        {"beta^gamma", "beta", "gamma", N, "q{D(P(u))} D(s)"},
        {"beta^gamma", "beta", "gamma", N, "D(s) q{D(P(u))}"},
        {"beta^gamma", "beta", "gamma", N, "D(q{D(P(u))}) D(s)"},
        {"beta^gamma", "beta", "gamma", N, "D(s) D(q{D(P(u))})"},
        {"beta^delta1", "beta", "delta1", N, "D(q{P(u) D(s)}) D(t)"},
        {"beta^delta1", "beta", "delta1", N, "D(s) D(q{P(u) D(t)})"},
        {"beta^delta2", "beta", "delta2", I, "D(s) D(t) P(u)"},
        {"beta^delta2", "beta", "delta2", N, "D(q{D(s) P(u)}) D(t)"},
        {"beta^delta2", "beta", "delta2", N, "D(s) D(q{D(t) P(u)})"},
        {"beta^phi", "beta", "phi", N, "D(q{D(1)}) D(s)"},
        {"beta^phi", "beta", "phi", N, "D(s) D(q{D(1)})"},
        {"gamma^alpha", "gamma", "alpha", N, "D(P(q{P(u) P(v)}))"},
        {"gamma^beta", "gamma", "beta", N, "D(P(q{D(s) D(t)}))"},
        {"gamma^gamma", "gamma", "gamma", N, "D(P(q{D(P(u))}))"},
        {"gamma^delta1", "gamma", "delta1", N, "D(P(q{P(u) D(s)}))"},
        {"gamma^delta2", "gamma", "delta2", N, "D(P(q{D(s) P(u)}))"},
        {"gamma^phi", "gamma", "phi", N, "D(P(q{D(1)}))"},
        {"delta1^alpha", "delta1", "alpha", N, "P(q{P(u) P(v)}) D(s)"},
        {"delta1^alpha", "delta1", "alpha", N, "P(u) D(q{P(v) P(w)})"},
        {"delta1^beta", "delta1", "beta", I, "P(u) D(s) D(t)"},
        {"delta1^beta", "delta1", "beta", N, "P(q{D(s) D(t)}) D(u)"},
        {"delta1^beta", "delta1", "beta", N, "P(u) D(q{D(s) D(t)})"},
        {"delta1^gamma", "delta1", "gamma", N, "P(u) q{D(P(v))}"},
        {"delta1^gamma", "delta1", "gamma", N, "P(q{D(P(u))}) D(s)"},
        {"delta1^gamma", "delta1", "gamma", N, "P(u) D(q{D(P(v))})"},
        {"delta1^delta1", "delta1", "delta1", N, "P(q{P(u) D(s)}) D(t)"},
        {"delta1^delta1", "delta1", "delta1", N, "P(u) D(q{P(v) D(s)})"},
        {"delta1^delta2", "delta1", "delta2", I, "P(u) D(s) P(v)"},
        {"delta1^delta2", "delta1", "delta2", N, "P(q{D(s) P(u)}) D(t)"},
        {"delta1^delta2", "delta1", "delta2", N, "P(u) D(q{D(s) P(v)})"},
        {"delta1^phi", "delta1", "phi", N, "P(q{D(1)}) D(s)"},
        {"delta1^phi", "delta1", "phi", N, "P(u) D(q{D(1)})"},
        {"delta2^alpha", "delta2", "alpha", I, "D(s) P(u) P(v)"},
        {"delta2^alpha", "delta2", "alpha", N, "D(q{P(u) P(v)}) P(w)"},
        {"delta2^alpha", "delta2", "alpha", N, "D(s) P(q{P(u) P(v)})"},
        {"delta2^beta", "delta2", "beta", N, "D(q{D(s) D(t)}) P(u)"},
        {"delta2^beta", "delta2", "beta", N, "D(s) P(q{D(t) D(r)})"},
        {"delta2^gamma", "delta2", "gamma", N, "q{D(P(u))} P(v)"},
        {"delta2^gamma", "delta2", "gamma", N, "D(q{D(P(u))}) P(v)"},
        {"delta2^gamma", "delta2", "gamma", N, "D(s) P(q{D(P(u))})"},
        {"delta2^delta1", "delta2", "delta1", I, "D(s) P(u) D(t)"},
        {"delta2^delta1", "delta2", "delta1", N, "D(q{P(u) D(s)}) P(v)"},
        {"delta2^delta1", "delta2", "delta1", N, "D(s) P(q{P(u) D(t)})"},
        {"delta2^delta2", "delta2", "delta2", N, "D(q{D(s) P(u)}) P(v)"},
        {"delta2^delta2", "delta2", "delta2", N, "D(s) P(q{D(t) P(u)})"},
        {"delta2^phi", "delta2", "phi", N, "D(q{D(1)}) P(u)"},
        {"delta2^phi", "delta2", "phi", N, "D(s) P(q{D(1)})"},
    };
}

std::string join_gens(const std::vector<std::string>& gens) {
    std::string out;
    for (const auto& g : gens) out += " " + g;
    return out;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& d : defs()) n.push_back(d.name);
        return n;
    }();
    return names;
}

bool is_preset(std::string_view name) {
    const auto& n = preset_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

std::string preset_text(std::string_view name, const std::vector<std::string>& gens, const Rational& lambda) {
    const PresetDef& d = def(name);
    if (d.needs_nonzero_lambda && lambda == 0)
        throw std::invalid_argument("preset " + std::string(name) + " needs lambda != 0");
    std::vector<std::string> g = gens;
    if (name == "no_monomial_order") {
        std::vector<std::string> forced{"x", "y", "z"};
        for (const auto& extra : gens)
            if (std::find(forced.begin(), forced.end(), extra) == forced.end()) forced.push_back(extra);
        g = forced;
    }
    if (g.empty()) throw std::invalid_argument("preset " + std::string(name) + " needs at least one generator");
    std::string text = "name " + std::string(d.name) + "\nops " + d.ops + "\ngens" + join_gens(g) + "\nlambda " +
                       to_string(lambda) + "\n";
    return text + d.body;
}

Polygraph preset_system(std::string_view name, const std::vector<std::string>& gens, const Rational& lambda) {
    return parse_system(preset_text(name, gens, lambda));
}

const std::vector<FamilyTemplate>& preset_families(std::string_view name) {
    static const std::vector<FamilyTemplate> none;
    static const std::vector<FamilyTemplate> xp = xp_families();
    static const std::vector<FamilyTemplate> yd = yd_families();
    static const std::vector<FamilyTemplate> xpd = xpd_families();
    if (name == "XP") return xp;
    if (name == "YD") return yd;
    if (name == "XPD") return xpd;
    return none;
}

std::shared_ptr<Rewriter> make_rewriter(const Polygraph& X) {
    std::shared_ptr<Rewriter> companion;
    if (!X.companion.empty()) {
        std::vector<std::string> gens;
        for (auto g : X.gens) gens.push_back(generator_name(g));
        Polygraph C = preset_system(X.companion, gens, X.lambda);
        companion = make_rewriter(C);
    }
    return std::make_shared<Rewriter>(std::make_shared<const Polygraph>(X), companion);
}

Preset load_preset(std::string_view name, const std::vector<std::string>& gens, const Rational& lambda) {
    Preset p;
    p.name = std::string(name);
    Polygraph X = preset_system(name, gens, lambda);
    p.rewriter = make_rewriter(X);
    p.system = p.rewriter->system_ptr();
    p.families = preset_families(name);
    return p;
}

}  // namespace orw
