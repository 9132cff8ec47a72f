// orw: command line front end for the rewriting library.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "orw/automaton.hpp"
#include "orw/branchings.hpp"
#include "orw/checks.hpp"
#include "orw/completion.hpp"
#include "orw/enumerate.hpp"
#include "orw/parse.hpp"
#include "orw/phi.hpp"
#include "orw/presets.hpp"
#include "orw/resolution.hpp"
#include "orw/system_file.hpp"

using json = nlohmann::ordered_json;
using namespace orw;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string preset, system_file;
    std::string gens = "x";
    std::string ops;
    std::string lambda = "1";
    bool json = false;
    int jobs = 1;
    std::size_t fuel = Rewriter::kDefaultFuel;
};

struct Loaded {
    PolygraphPtr system;
    std::shared_ptr<Rewriter> rw;
    std::vector<FamilyTemplate> families;
};

Rational parse_rational(const std::string& s) {
    try {
        Rational r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw UsageError("not a rational number: '" + s + "'");
    }
}

std::vector<std::string> gen_list(const Options& o) {
    auto g = split_list(o.gens);
    if (g.empty()) throw UsageError("--gens needs at least one generator");
    return g;
}

bool has_system(const Options& o) { return !o.preset.empty() || !o.system_file.empty(); }

Loaded load(const Options& o) {
    if (!o.preset.empty() && !o.system_file.empty()) throw UsageError("give either --preset or --system, not both");
    if (!has_system(o)) throw UsageError("this command needs a system: --preset NAME or --system FILE");
    Loaded l;
    if (!o.preset.empty()) {
        if (!is_preset(o.preset)) {
            std::string names;
            for (const auto& n : preset_names()) names += " " + n;
            throw UsageError("unknown preset '" + o.preset + "'; known:" + names);
        }
        Preset p = load_preset(o.preset, gen_list(o), parse_rational(o.lambda));
        l.system = p.system;
        l.rw = p.rewriter;
        l.families = p.families;
    } else {
        l.system = std::make_shared<Polygraph>(load_system_file(o.system_file));
        l.rw = make_rewriter(*l.system);
        if (is_preset(l.system->name)) l.families = preset_families(l.system->name);
    }
    l.rw->set_fuel(o.fuel);
    return l;
}

// the signature terms and words are read against: the system's, or --gens/--ops alone
Signature bare_signature(const Options& o, const Loaded* l) {
    if (l) return l->system->signature();
    Signature sig;
    for (const auto& g : gen_list(o)) sig.gens.push_back(intern_generator(g));
    for (const auto& op : split_list(o.ops)) sig.ops.push_back(intern_operator(op));
    return sig;
}

class Output {
public:
    explicit Output(bool json) : json_(json) {}
    bool is_json() const { return json_; }
    void emit(const json& j, const std::string& human) const {
        if (json_)
            std::cout << j.dump() << "\n";
        else if (!human.empty())
            std::cout << human << "\n";
    }

private:
    bool json_;
};

json steps_json(const RewritePath& p, const Polygraph& X) {
    json a = json::array();
    for (const auto& ps : p.steps)
        a.push_back({{"coefficient", to_string(ps.coefficient)},
                     {"rule", X.rules[ps.step.rule].name},
                     {"source", to_string(ps.step.source)},
                     {"context", to_string(ps.step.context)},
                     {"result", to_string(ps.result)}});
    return a;
}

std::string overlap_of(const CriticalBranching& cb) {
    return cb.kind == CriticalKind::Intersection ? to_string(cb.v) : to_string(cb.context);
}

json branching_json(const Polygraph& X, const CriticalBranching& cb) {
    return {{"type", "branching"},
            {"kind", to_string(cb.kind)},
            {"source", to_string(cb.source)},
            {"left_rule", X.rules[cb.left.rule].name},
            {"right_rule", X.rules[cb.right.rule].name},
            {"overlap", overlap_of(cb)}};
}

std::string branching_line(const Polygraph& X, const CriticalBranching& cb) {
    return to_string(cb.kind) + " " + X.rules[cb.left.rule].name + "/" + X.rules[cb.right.rule].name + " at " +
           to_string(cb.source) + " (overlap " + overlap_of(cb) + ")";
}

std::string measure_spec(const std::string& arg) {
    if (!std::filesystem::is_regular_file(arg)) return arg;
    std::ifstream in(arg);
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;
        auto e = line.find_last_not_of(" \t\r");
        return line.substr(b, e - b + 1);
    }
    throw UsageError("measure file '" + arg + "' is empty");
}

// ---- commands ----

int cmd_normalize(const Options& o, const std::string& term, bool path, std::optional<std::uint64_t> seed) {
    Loaded l = load(o);
    Output out(o.json);
    Polynomial a = parse_polynomial(term, l.system->signature());
    if (seed) {
        std::mt19937_64 rng(*seed);
        Polynomial nf = l.rw->normalize_random(a, rng);
        out.emit({{"term", term}, {"normal_form", to_string(nf)}, {"strategy", "random"}, {"seed", *seed}},
                 to_string(nf));
        return kPass;
    }
    if (!path) {
        Polynomial nf = l.rw->normal_form(a);
        out.emit({{"term", term}, {"normal_form", to_string(nf)}}, to_string(nf));
        return kPass;
    }
    RewritePath p = l.rw->normalize(a);
    if (out.is_json()) {
        out.emit({{"term", term}, {"normal_form", to_string(p.end())}, {"steps", steps_json(p, *l.system)}}, "");
    } else {
        std::cout << to_string(p.start) << "\n";
        for (const auto& ps : p.steps)
            std::cout << "  -> " << to_string(ps.result) << "    [" << to_string(ps.coefficient) << " * "
                      << to_string(ps.step, *l.system) << "]\n";
        std::cout << to_string(p.end()) << "\n";
    }
    return kPass;
}

int cmd_flatten(const Options& o, const std::string& term) {
    std::optional<Loaded> l;
    if (has_system(o)) l = load(o);
    Monomial m = parse_monomial(term, bare_signature(o, l ? &*l : nullptr));
    std::string w = to_string(flatten(m));
    Output(o.json).emit({{"term", to_string(m)}, {"word", w}}, w);
    return kPass;
}

int cmd_unflatten(const Options& o, const std::string& word) {
    std::optional<Loaded> l;
    if (has_system(o)) l = load(o);
    FlatWord w = parse_flat_word(word, bare_signature(o, l ? &*l : nullptr));
    Monomial m = unflatten(w);
    Output(o.json).emit({{"word", to_string(w)}, {"term", to_string(m)}}, to_string(m));
    return kPass;
}

int cmd_pda_accept(const Options& o, const std::string& word, std::string machine, bool trace) {
    std::optional<Loaded> l;
    if (has_system(o)) l = load(o);
    Signature sig = bare_signature(o, l ? &*l : nullptr);
    if (machine.empty()) machine = (l && !l->system->machine.empty()) ? l->system->machine : "A_Omega";
    Pda a;
    if (machine == "anbn") {
        a = anbn_pda();
    } else if (std::filesystem::is_regular_file(machine)) {
        std::ifstream in(machine);
        std::stringstream ss;
        ss << in.rdbuf();
        a = Pda::from_text(ss.str());
    } else {
        try {
            a = preset_pda(machine, sig.gens, sig.ops);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    FlatWord w = parse_flat_word(word, sig);
    RunResult r = pda_run(a, w, trace);
    Output out(o.json);
    json tr = json::array();
    std::string human = r.accepted ? "accepted" : "rejected";
    if (!r.accepted && !r.diagnostic.empty()) human += ": " + r.diagnostic;
    for (const auto& s : r.trace) {
        std::string in = s.consumed ? flat_symbol_name(*s.consumed) : "";
        tr.push_back({{"state", s.state}, {"consumed", in}, {"stack", s.stack}});
        if (trace) human += "\n  " + s.state + "  " + (in.empty() ? "-" : in) + "  [" + s.stack + "]";
    }
    json j = {{"machine", machine}, {"word", to_string(w)}, {"accepted", r.accepted}};
    if (!r.accepted) j["diagnostic"] = r.diagnostic;
    if (trace) j["trace"] = tr;
    out.emit(j, human);
    return r.accepted ? kPass : kFail;
}

json termination_json(const TerminationReport& t) {
    json j = {{"measure", t.measure}, {"bound", t.bound}, {"instances", t.instances}, {"pass", t.pass}};
    if (t.counterexample) j["counterexample"] = *t.counterexample;
    j["warnings"] = t.warnings;
    return j;
}

std::string termination_text(const TerminationReport& t) {
    std::string s = "termination (" + t.measure + ", bound " + std::to_string(t.bound) + ", " +
                    std::to_string(t.instances) + " instances): " + (t.pass ? "PASS" : "FAIL");
    if (t.counterexample) s += "\n  counterexample: " + *t.counterexample;
    for (const auto& w : t.warnings) s += "\n  warning: " + w;
    return s;
}

int cmd_check(const Options& o, std::size_t bound) {
    Loaded l = load(o);
    if (l.system->measure.empty()) throw UsageError("system '" + l.system->name + "' has no bundled measure");
    ReducedReport red = check_reduced(*l.rw, bound);
    TerminationReport term = check_termination(*l.rw, measure_by_name(l.system->measure, *l.system), bound);
    Output out(o.json);
    std::string human = "reduced (bound " + std::to_string(bound) + ", " + std::to_string(red.instances) +
                        " instances): " + (red.reduced() ? "yes" : "no");
    for (const auto& w : red.witnesses) human += "\n  " + w;
    human += "\n" + termination_text(term);
    out.emit({{"system", l.system->name},
              {"reduced", red.reduced()},
              {"left_reduced", red.left_reduced},
              {"right_reduced", red.right_reduced},
              {"witnesses", red.witnesses},
              {"termination", termination_json(term)}},
             human);
    return red.reduced() && term.pass ? kPass : kFail;
}

int cmd_term_check(const Options& o, const std::string& measure, std::size_t bound) {
    Loaded l = load(o);
    TerminationMeasure m;
    try {
        m = measure_by_name(measure_spec(measure), *l.system);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    TerminationReport t = check_termination(*l.rw, m, bound);
    Output(o.json).emit(termination_json(t), termination_text(t));
    return t.pass ? kPass : kFail;
}

int cmd_cp(const Options& o, std::size_t bound, bool families, bool summary_only, bool failures_only) {
    Loaded l = load(o);
    const Polygraph& X = *l.system;
    if (families && l.families.empty()) throw UsageError("system '" + X.name + "' has no family templates");
    Output out(o.json);
    JoinChecker join(*l.rw);
    std::size_t total = 0, nonjoinable = 0, undecided = 0, unclassified = 0;
    std::map<std::string, std::size_t> by_family, by_kind;
    for_each_critical_pair(*l.rw, bound, [&](const CriticalBranching& cb) {
        ++total;
        ++by_kind[to_string(cb.kind)];
        JoinResult j = join.check(cb);
        if (!j.joinable) ++nonjoinable;
        if (!j.decided) ++undecided;
        std::optional<std::string> fam;
        if (families) {
            fam = classify_family(X, l.families, cb);
            if (fam)
                ++by_family[*fam];
            else
                ++unclassified;
        }
        bool failed = !j.joinable || (families && !fam);
        if (summary_only || (failures_only && !failed)) return;
        json r = branching_json(X, cb);
        r["joinable"] = j.joinable;
        r["join"] = to_string(j.method);
        if (!j.decided) r["undecided"] = true;
        if (families) r["family"] = fam ? json(*fam) : json(nullptr);
        std::string human = branching_line(X, cb) + (j.joinable ? "  joinable" : "  NOT joinable");
        if (families) human += "  family " + (fam ? *fam : std::string("-"));
        out.emit(r, human);
    });
    json s = {{"type", "summary"}, {"bound", bound}, {"pairs", total}, {"by_kind", by_kind},
              {"nonjoinable", nonjoinable}, {"undecided", undecided}};
    std::string human = std::to_string(total) + " critical branchings up to size " + std::to_string(bound) + ", " +
                        std::to_string(nonjoinable) + " not joinable";
    if (families) {
        s["families"] = by_family;
        s["unclassified"] = unclassified;
        human += ", " + std::to_string(unclassified) + " unclassified";
        for (const auto& [f, n] : by_family) human += "\n  family " + f + ": " + std::to_string(n);
    }
    out.emit(s, human);
    return nonjoinable == 0 && unclassified == 0 ? kPass : kFail;
}

int cmd_gs_check(const Options& o, std::size_t bound, std::string order_name) {
    Loaded l = load(o);
    const Polygraph& X = *l.system;
    if (order_name.empty()) order_name = X.measure;
    if (order_name.empty()) throw UsageError("no --order given and the system has no bundled measure");
    MonomialOrder order = derivation_order(order_name, X);
    Output out(o.json);
    JoinChecker join(*l.rw);
    std::size_t total = 0, trivial = 0, joined = 0, disagree = 0;
    for_each_critical_pair(*l.rw, bound, [&](const CriticalBranching& cb) {
        ++total;
        bool gs = gs_trivial(*l.rw, order, cb);
        bool j = join.check(cb).joinable;
        trivial += gs;
        joined += j;
        if (gs != j) ++disagree;
        if (gs && j) return;
        json r = branching_json(X, cb);
        r["gs_trivial"] = gs;
        r["joinable"] = j;
        out.emit(r, branching_line(X, cb) + (gs ? "  gs-trivial" : "  NOT gs-trivial") +
                        (j ? "  joinable" : "  NOT joinable"));
    });
    out.emit({{"type", "summary"}, {"bound", bound}, {"order", order_name}, {"pairs", total},
              {"gs_trivial", trivial}, {"joinable", joined}, {"disagreements", disagree}},
             std::to_string(total) + " critical branchings, " + std::to_string(trivial) + " gs-trivial, " +
                 std::to_string(joined) + " joinable, " + std::to_string(disagree) + " disagreements");
    return trivial == total && disagree == 0 ? kPass : kFail;
}

int cmd_complete(const Options& o, std::size_t bound, std::size_t rounds, std::string order_name,
                 std::string reference, const std::string& out_file) {
    Loaded l = load(o);
    const Polygraph& X = *l.system;
    if (order_name.empty()) order_name = X.measure;
    if (order_name.empty()) throw UsageError("no --order given and the system has no bundled measure");
    if (reference.empty() && X.name == "X_DRB_pre") reference = "XPD";
    if (reference == "none") reference.clear();
    CompletionResult res = complete(X, derivation_order(order_name, X), bound, rounds);
    const CompletionReport& rep = res.report;
    Output out(o.json);
    for (const auto& ob : rep.obstructions)
        out.emit({{"type", "obstruction"}, {"round", ob.round}, {"kind", ob.kind}, {"source", to_string(ob.source)},
                  {"left_rule", ob.left_rule}, {"right_rule", ob.right_rule}},
                 "round " + std::to_string(ob.round) + ": not joinable " + ob.kind + " " + ob.left_rule + "/" +
                     ob.right_rule + " at " + to_string(ob.source));
    std::shared_ptr<Rewriter> done, ref;
    if (!reference.empty()) {
        done = make_rewriter(res.system);
        std::vector<std::string> gens;
        for (auto g : X.gens) gens.push_back(generator_name(g));
        ref = load_preset(reference, gens, X.lambda).rewriter;
    }
    std::size_t unmatched = 0;
    for (const auto& ar : rep.added) {
        json r = {{"type", "rule"}, {"name", ar.name}, {"lhs", to_string(ar.lhs)}, {"rhs", to_string(ar.rhs)},
                  {"round", ar.round}, {"from", ar.provenance}};
        std::string human = ar.name + ": " + to_string(ar.lhs) + " -> " + to_string(ar.rhs);
        if (ref) {
            auto inst = instance_of(*done, *ref, ar);
            if (!inst) ++unmatched;
            r["instance_of"] = inst ? json(*inst) : json(nullptr);
            human += "    [" + (inst ? *inst + " instance" : std::string("no " + reference + " rule")) + "]";
        }
        out.emit(r, human);
    }
    for (const auto& s : rep.residual) out.emit({{"type", "residual"}, {"source", s}}, "residual: " + s);
    json s = {{"type", "summary"}, {"bound", bound}, {"rounds", rep.rounds}, {"fixpoint", rep.fixpoint},
              {"obstructions", rep.obstructions.size()}, {"undecided", rep.undecided}, {"added", rep.added.size()},
              {"sound", rep.sound}};
    if (ref) {
        s["reference"] = reference;
        s["unmatched"] = unmatched;
    }
    out.emit(s, "completion: " + std::to_string(rep.added.size()) + " rules added in " + std::to_string(rep.rounds) +
                    " rounds, " + (rep.fixpoint ? "fixpoint" : "no fixpoint") + ", " +
                    (rep.sound ? "sound" : "NOT sound") +
                    (ref ? ", " + std::to_string(unmatched) + " not instances of " + reference : std::string()));
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        f << export_system(res.system);
        if (!f) throw std::runtime_error("cannot write '" + out_file + "'");
    }
    return rep.fixpoint && rep.sound && unmatched == 0 ? kPass : kFail;
}

int cmd_basis(const Options& o, std::size_t bound, bool compare_phi) {
    Loaded l = load(o);
    const Polygraph& X = *l.system;
    std::function<bool(const Monomial&)> phi;
    if (compare_phi) {
        if (X.phi.empty()) throw UsageError("system '" + X.name + "' has no Phi predicate");
        phi = phi_predicate(X.phi);
    }
    Output out(o.json);
    MonomialEnumerator en(X.alphabet());
    std::size_t total = 0, normal = 0, members = 0, mismatches = 0;
    en.for_each_up_to(bound, [&](const Monomial& m) {
        ++total;
        bool nf = l.rw->is_normal(m);
        normal += nf;
        if (!compare_phi) return;
        bool in = phi(m);
        members += in;
        if (in == nf) return;
        ++mismatches;
        out.emit({{"type", "mismatch"}, {"monomial", to_string(m)}, {"normal", nf}, {"phi", in}},
                 "mismatch: " + to_string(m) + (nf ? " is normal but not in " : " is reducible but in ") + X.phi);
    });
    json s = {{"type", "summary"}, {"bound", bound}, {"monomials", total}, {"normal_forms", normal}};
    std::string human = std::to_string(normal) + " normal forms among " + std::to_string(total) +
                        " monomials up to size " + std::to_string(bound);
    if (compare_phi) {
        s["phi"] = X.phi;
        s["phi_members"] = members;
        s["mismatches"] = mismatches;
        human += "; " + X.phi + ": " + std::to_string(members) + " members, " + std::to_string(mismatches) +
                 " mismatches";
    }
    out.emit(s, human);
    return mismatches == 0 ? kPass : kFail;
}

int cmd_squier(const Options& o, std::size_t n, std::size_t bound, bool boundaries) {
    Loaded l = load(o);
    const Polygraph& X = *l.system;
    if (boundaries && n > 2) throw UsageError("unsupported-dimension: boundaries are computed up to dimension 2");
    Output out(o.json);
    auto tuples = squier_generators(*l.rw, n, bound);
    std::size_t bad = 0;
    for (const auto& t : tuples) {
        json r = {{"type", "generator"}, {"tuple", to_string(t)}, {"dimension", t.dimension()},
                  {"source", to_string(t.product())}};
        std::string human = to_string(t);
        if (boundaries) {
            Boundary b = boundary(*l.rw, t);
            if (b.dimension == 1) {
                r["boundary"] = {{"source", to_string(b.source)}, {"target", to_string(b.target)}};
                human += "    " + to_string(b.source) + " -> " + to_string(b.target);
            } else {
                bool agree = b.left.end() == b.right.end();
                bad += !agree;
                r["boundary"] = {{"source", to_string(b.source)},
                                 {"left", steps_json(b.left, X)},
                                 {"right", steps_json(b.right, X)},
                                 {"left_end", to_string(b.left.end())},
                                 {"right_end", to_string(b.right.end())},
                                 {"agree", agree}};
                human += "    " + std::to_string(b.left.steps.size()) + " / " +
                         std::to_string(b.right.steps.size()) + " steps, " +
                         (agree ? "both end at " + to_string(b.left.end()) : std::string("ENDS DIFFER"));
            }
        }
        out.emit(r, human);
    }
    json s = {{"type", "summary"}, {"n", n}, {"bound", bound}, {"generators", tuples.size()}};
    if (boundaries) s["boundary_mismatches"] = bad;
    out.emit(s, std::to_string(tuples.size()) + " generators of dimension " + std::to_string(n) + " up to size " +
                    std::to_string(bound));
    return bad == 0 ? kPass : kFail;
}

int cmd_export(const Options& o) {
    Loaded l = load(o);
    std::string text = export_system(*l.system);
    if (o.json)
        std::cout << json({{"system", l.system->name}, {"text", text}}).dump() << "\n";
    else
        std::cout << text;
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orw: rewriting in free operated algebras"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the command
    Options o;
    app.add_option("--preset", o.preset, "built-in system");
    app.add_option("--system", o.system_file, "system file")->check(CLI::ExistingFile);
    app.add_option("--gens", o.gens, "generators, comma separated")->capture_default_str();
    app.add_option("--ops", o.ops, "operators for term-only commands without a system");
    app.add_option("--lambda", o.lambda, "weight, a rational")->capture_default_str();
    app.add_flag("--json", o.json, "JSON lines output");
    app.add_option("--jobs", o.jobs, "worker cap (work runs on one thread)")->check(CLI::PositiveNumber);
    app.add_option("--fuel", o.fuel, "rewriting step budget")->capture_default_str();

    std::function<int()> run;
    std::string term, word, machine, measure, order, reference, out_file;
    std::size_t bound = 6, rounds = 3, n = 1;
    bool path = false, trace = false, families = false, summary = false, compare_phi = false,
         boundaries = false;
    std::optional<std::uint64_t> seed;

    auto* c = app.add_subcommand("normalize", "normal form of a term");
    c->add_option("term", term)->required();
    c->add_flag("--path", path, "print the rewriting path");
    c->add_option("--random", seed, "randomized strategy with this seed");
    c->callback([&] { run = [&] { return cmd_normalize(o, term, path, seed); }; });

    c = app.add_subcommand("flatten", "flat bracket word of a monomial");
    c->add_option("term", term)->required();
    c->callback([&] { run = [&] { return cmd_flatten(o, term); }; });

    c = app.add_subcommand("unflatten", "monomial of a flat word (symbols separated by spaces)");
    c->add_option("word", word)->required();
    c->callback([&] { run = [&] { return cmd_unflatten(o, word); }; });

    c = app.add_subcommand("pda-accept", "run a pushdown automaton on a flat word");
    c->add_option("word", word)->required();
    c->add_option("--machine", machine, "A_D, A_P, A_PD, A_Omega, anbn or a machine file");
    c->add_flag("--trace", trace, "print the accepting run");
    c->callback([&] { run = [&] { return cmd_pda_accept(o, word, machine, trace); }; });

    c = app.add_subcommand("check", "reducedness and termination with the bundled measure");
    c->add_option("--bound", bound)->capture_default_str();
    c->callback([&] { run = [&] { return cmd_check(o, bound); }; });

    c = app.add_subcommand("term-check", "termination evidence for a measure");
    c->add_option("--measure", measure, "measure name, count:<pattern>, or a file holding one")->required();
    c->add_option("--bound", bound)->capture_default_str();
    c->callback([&] { run = [&] { return cmd_term_check(o, measure, bound); }; });

    c = app.add_subcommand("cp", "critical branchings");
    c->add_option("--bound", bound)->required();
    c->add_flag("--classify-families", families, "label each branching with its family");
    c->add_flag("--summary", summary, "only the summary record");
    c->callback([&] { run = [&] { return cmd_cp(o, bound, families, summary, false); }; });

    c = app.add_subcommand("confluence", "joinability of all critical branchings");
    c->add_option("--bound", bound)->required();
    c->callback([&] { run = [&] { return cmd_cp(o, bound, false, false, true); }; });

    c = app.add_subcommand("gs-check", "Groebner-Shirshov triviality of critical compositions");
    c->add_option("--bound", bound)->required();
    c->add_option("--order", order, "derivation measure behind the monomial order");
    c->callback([&] { run = [&] { return cmd_gs_check(o, bound, order); }; });

    c = app.add_subcommand("complete", "completion against a derivation order");
    c->add_option("--bound", bound)->required();
    c->add_option("--rounds", rounds)->capture_default_str();
    c->add_option("--order", order, "derivation measure behind the monomial order");
    c->add_option("--reference", reference, "preset whose rules classify the added ones, or none");
    c->add_option("--out", out_file, "write the completed system file");
    c->callback([&] { run = [&] { return cmd_complete(o, bound, rounds, order, reference, out_file); }; });

    c = app.add_subcommand("basis", "normal forms up to a size");
    c->add_option("--bound", bound)->required();
    c->add_flag("--compare-phi", compare_phi, "compare with the system's Phi predicate");
    c->callback([&] { run = [&] { return cmd_basis(o, bound, compare_phi); }; });

    c = app.add_subcommand("squier", "generators of the Squier resolution");
    c->add_option("-n", n, "dimension")->required();
    c->add_option("--bound", bound)->required();
    c->add_flag("--boundaries", boundaries, "compute and check boundaries (n <= 2)");
    c->callback([&] { run = [&] { return cmd_squier(o, n, bound, boundaries); }; });

    c = app.add_subcommand("export", "print the system file");
    c->callback([&] { run = [&] { return cmd_export(o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }
    try {
        return run();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const MalformedWord& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const FuelExhausted& e) {
        std::cerr << "fuel exhausted: " << e.what() << "\n  term: " << e.term() << "\n";
        return kFail;
    } catch (const CompletionError& e) {
        std::cerr << "completion failed: " << e.what() << "\n";
        return kFail;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
