#include "orw/automaton.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace orw {

MalformedWord::MalformedWord(const std::string& msg, std::size_t position)
    : std::runtime_error("malformed word at position " + std::to_string(position) + ": " + msg), position_(position) {}

void flatten_into(const Monomial& m, FlatWord& out) {
    for (const Atom& a : m.atoms()) {
        if (!a.is_bracket) {
            out.push_back(flat_gen(a.sym));
            continue;
        }
        out.push_back(flat_left(a.sym));
        flatten_into(a.inner, out);
        out.push_back(flat_right(a.sym));
    }
}

FlatWord flatten(const Monomial& m) {
    FlatWord w;
    w.reserve(m.flat_length());
    flatten_into(m, w);
    return w;
}

Monomial unflatten(std::span<const FlatSym> w) {
    struct Frame {
        std::vector<Atom> atoms;
        SymbolId op;
        std::size_t opened_at;
    };
    std::vector<Frame> st;
    st.push_back({{}, 0, 0});
    for (std::size_t i = 0; i < w.size(); ++i) {
        FlatSym s = w[i];
        switch (flat_kind(s)) {
            case FlatKind::Gen:
                st.back().atoms.push_back(Atom{flat_id(s), false, {}});
                break;
            case FlatKind::Left:
                st.push_back({{}, flat_id(s), i});
                break;
            case FlatKind::Right: {
                if (st.size() == 1) throw MalformedWord("unmatched " + flat_symbol_name(s), i);
                if (st.back().op != flat_id(s))
                    throw MalformedWord(flat_symbol_name(s) + " closes " + flat_symbol_name(flat_left(st.back().op)), i);
                Frame f = std::move(st.back());
                st.pop_back();
                st.back().atoms.push_back(Atom{f.op, true, Monomial(std::move(f.atoms))});
                break;
            }
            default:
                throw MalformedWord("bad symbol", i);
        }
    }
    if (st.size() != 1) throw MalformedWord("unclosed " + flat_symbol_name(flat_left(st.back().op)), w.size());
    return Monomial(std::move(st.back().atoms));
}

std::string flat_symbol_name(FlatSym s) {
    switch (flat_kind(s)) {
        case FlatKind::Gen: return generator_name(flat_id(s));
        case FlatKind::Left: return "l:" + operator_name(flat_id(s));
        case FlatKind::Right: return "r:" + operator_name(flat_id(s));
        default: return "?";
    }
}

std::string to_string(const FlatWord& w) {
    std::string out;
    for (FlatSym s : w) {
        if (!out.empty()) out += ' ';
        out += flat_symbol_name(s);
    }
    return out;
}

namespace {

FlatSym parse_symbol(std::string_view tok, const Signature* sig, bool intern) {
    auto bracket = [&](std::string_view name, bool left) -> FlatSym {
        std::optional<SymbolId> op = intern ? std::optional<SymbolId>(intern_operator(name)) : find_operator(name);
        if (!op || (sig && !sig->has_operator(*op))) throw std::invalid_argument("unknown operator '" + std::string(name) + "'");
        return left ? flat_left(*op) : flat_right(*op);
    };
    if (tok.starts_with("l:")) return bracket(tok.substr(2), true);
    if (tok.starts_with("r:")) return bracket(tok.substr(2), false);
    std::optional<SymbolId> g = intern ? std::optional<SymbolId>(intern_generator(tok)) : find_generator(tok);
    if (!g || (sig && !sig->has_generator(*g))) throw std::invalid_argument("unknown symbol '" + std::string(tok) + "'");
    return flat_gen(*g);
}

std::vector<std::string> words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

FlatWord parse_flat_word(std::string_view text, const Signature& sig) {
    FlatWord w;
    std::size_t pos = 0;
    for (const auto& t : words(text)) {
        try {
            w.push_back(parse_symbol(t, &sig, false));
        } catch (const std::invalid_argument& e) {
            throw MalformedWord(e.what(), pos);
        }
        ++pos;
    }
    return w;
}

// ---- Pda ----

Pda::Pda() { stack_.push_back("$"); }

std::uint32_t Pda::state(std::string_view name) {
    for (std::uint32_t i = 0; i < states_.size(); ++i)
        if (states_[i] == name) return i;
    states_.emplace_back(name);
    index_.clear();
    return static_cast<std::uint32_t>(states_.size() - 1);
}

std::uint32_t Pda::stack_symbol(std::string_view name) {
    for (std::uint32_t i = 0; i < stack_.size(); ++i)
        if (stack_[i] == name) return i;
    stack_.emplace_back(name);
    return static_cast<std::uint32_t>(stack_.size() - 1);
}

void Pda::declare_input(FlatSym s) {
    if (!knows_input(s)) inputs_.push_back(s);
}

void Pda::add_accepting(std::uint32_t q) {
    if (!accepting(q)) accepting_.push_back(q);
}

bool Pda::accepting(std::uint32_t q) const {
    return std::find(accepting_.begin(), accepting_.end(), q) != accepting_.end();
}

bool Pda::knows_input(FlatSym s) const { return std::find(inputs_.begin(), inputs_.end(), s) != inputs_.end(); }

void Pda::add(std::string_view from, std::optional<FlatSym> input, std::string_view pop, std::string_view to,
              const std::vector<std::string>& push) {
    Transition t;
    t.from = state(from);
    t.input = input ? *input : kEps;
    if (input) declare_input(*input);
    t.pop = pop == "eps" ? kEps : stack_symbol(pop);
    t.to = state(to);
    for (const auto& p : push) t.push.push_back(stack_symbol(p));
    trans_.push_back(std::move(t));
    index_.clear();
}

const std::vector<std::vector<std::uint32_t>>& Pda::by_state() const {
    if (index_.size() != states_.size()) {
        index_.assign(states_.size(), {});
        for (std::uint32_t i = 0; i < trans_.size(); ++i) index_[trans_[i].from].push_back(i);
    }
    return index_;
}

std::string Pda::to_text() const {
    std::ostringstream out;
    out << "initial " << states_.at(initial_) << "\n";
    out << "accept";
    for (auto q : accepting_) out << ' ' << states_[q];
    out << "\ninput";
    for (FlatSym s : inputs_) out << ' ' << flat_symbol_name(s);
    out << "\n";
    for (const auto& t : trans_) {
        out << states_[t.from] << ", " << (t.input == kEps ? std::string("eps") : flat_symbol_name(t.input)) << ", "
            << (t.pop == kEps ? std::string("eps") : stack_[t.pop]) << " -> " << states_[t.to] << ", ";
        if (t.push.empty()) out << "eps";
        for (std::size_t i = 0; i < t.push.size(); ++i) out << (i ? " " : "") << stack_[t.push[i]];
        out << "\n";
    }
    return out.str();
}

Pda Pda::from_text(std::string_view text) {
    Pda a;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::string> initial;
    std::vector<std::string> accept;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::string l = trim(line);
        if (l.empty()) continue;
        auto fail = [&](const std::string& msg) -> ParseError { return ParseError(msg, lineno, 1); };
        auto arrow = l.find("->");
        if (arrow == std::string::npos) {
            auto w = words(l);
            if (w[0] == "initial" && w.size() == 2) initial = w[1];
            else if (w[0] == "accept") accept.insert(accept.end(), w.begin() + 1, w.end());
            else if (w[0] == "input") {
                try {
                    for (std::size_t i = 1; i < w.size(); ++i) a.declare_input(parse_symbol(w[i], nullptr, true));
                } catch (const std::invalid_argument& e) {
                    throw fail(e.what());
                }
            } else {
                throw fail("expected 'initial', 'accept', 'input' or a transition");
            }
            continue;
        }
        auto lhs = split_list(l.substr(0, arrow), ',');
        std::string rhs = l.substr(arrow + 2);
        auto comma = rhs.find(',');
        if (lhs.size() != 3 || comma == std::string::npos) throw fail("transition must read 'state, input, pop -> state, push'");
        std::string to = trim(rhs.substr(0, comma));
        auto push = words(rhs.substr(comma + 1));
        if (push.size() == 1 && push[0] == "eps") push.clear();
        std::optional<FlatSym> input;
        if (lhs[1] != "eps") {
            try {
                input = parse_symbol(lhs[1], nullptr, true);
            } catch (const std::invalid_argument& e) {
                throw fail(e.what());
            }
        }
        a.add(lhs[0], input, lhs[2], to, push);
    }
    if (!initial) throw ParseError("missing 'initial' line", lineno, 1);
    a.set_initial(a.state(*initial));
    for (const auto& q : accept) a.add_accepting(a.state(q));
    return a;
}

// ---- running ----

RunResult pda_run(const Pda& a, std::span<const FlatSym> w, bool want_trace) {
    RunResult res;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!a.knows_input(w[i])) {
            res.diagnostic = "unknown symbol '" + flat_symbol_name(w[i]) + "' at position " + std::to_string(i);
            return res;
        }
    }
    if (a.state_names().empty()) {
        res.diagnostic = "automaton has no states";
        return res;
    }
    const auto& index = a.by_state();
    const auto& trans = a.transitions();
    const std::size_t cap = w.size() + a.state_names().size() + 2;

    // hash-consed stacks: node 0 is the empty stack
    struct Node {
        std::uint32_t parent, sym, depth;
    };
    std::vector<Node> nodes{{0, 0, 0}};
    std::unordered_map<std::uint64_t, std::uint32_t> cons;
    auto push_node = [&](std::uint32_t parent, std::uint32_t sym) {
        std::uint64_t key = (std::uint64_t(parent) << 32) | sym;
        auto [it, fresh] = cons.try_emplace(key, static_cast<std::uint32_t>(nodes.size()));
        if (fresh) nodes.push_back({parent, sym, nodes[parent].depth + 1});
        return it->second;
    };

    struct Config {
        std::uint32_t state, node;
        std::int64_t parent;
        FlatSym consumed;
    };
    std::vector<Config> cfgs{{a.initial(), 0, -1, Pda::kEps}};
    std::unordered_set<std::uint64_t> seen;
    auto key = [](std::uint32_t q, std::uint32_t n) { return (std::uint64_t(q) << 32) | n; };

    auto step = [&](std::size_t i, const Pda::Transition& t, FlatSym consumed) {
        std::uint32_t node = cfgs[i].node;
        if (t.pop != Pda::kEps) {
            if (node == 0 || nodes[node].sym != t.pop) return;
            node = nodes[node].parent;
        }
        for (auto s : t.push) {
            node = push_node(node, s);
            if (nodes[node].depth > cap) return;
        }
        if (seen.insert(key(t.to, node)).second) cfgs.push_back({t.to, node, static_cast<std::int64_t>(i), consumed});
    };

    std::size_t level = 0;
    for (std::size_t pos = 0;; ++pos) {
        seen.clear();
        for (std::size_t i = level; i < cfgs.size(); ++i) seen.insert(key(cfgs[i].state, cfgs[i].node));
        for (std::size_t i = level; i < cfgs.size(); ++i) {
            for (auto ti : index[cfgs[i].state]) {
                if (trans[ti].input == Pda::kEps) step(i, trans[ti], Pda::kEps);
            }
        }
        if (pos == w.size()) {
            for (std::size_t i = level; i < cfgs.size(); ++i) {
                if (!a.accepting(cfgs[i].state)) continue;
                res.accepted = true;
                if (want_trace) {
                    for (std::int64_t j = static_cast<std::int64_t>(i); j >= 0; j = cfgs[j].parent) {
                        TraceStep ts;
                        ts.state = a.state_names()[cfgs[j].state];
                        if (cfgs[j].consumed != Pda::kEps) ts.consumed = cfgs[j].consumed;
                        std::vector<std::uint32_t> syms;
                        for (auto n = cfgs[j].node; n != 0; n = nodes[n].parent) syms.push_back(nodes[n].sym);
                        for (auto it = syms.rbegin(); it != syms.rend(); ++it) ts.stack += a.stack_names()[*it];
                        res.trace.push_back(std::move(ts));
                    }
                    std::reverse(res.trace.begin(), res.trace.end());
                }
                return res;
            }
            res.diagnostic = "input consumed without reaching an accepting state";
            return res;
        }
        std::size_t next = cfgs.size();
        seen.clear();
        for (std::size_t i = level; i < next; ++i) {
            for (auto ti : index[cfgs[i].state]) {
                if (trans[ti].input == w[pos]) step(i, trans[ti], w[pos]);
            }
        }
        if (cfgs.size() == next) {
            res.diagnostic = "no transition on '" + flat_symbol_name(w[pos]) + "' at position " + std::to_string(pos);
            return res;
        }
        level = next;
    }
}

// ---- machines ----

Pda build_bracket_pda(const std::vector<SymbolId>& ops, const std::vector<SymbolId>& gens) {
    Pda a;
    a.set_initial(a.state("q0"));
    a.add("q0", std::nullopt, "eps", "q1", {"$"});
    for (SymbolId g : gens) a.add("q1", flat_gen(g), "eps", "q1", {});
    for (SymbolId op : ops) {
        const std::string& name = operator_name(op);
        a.add("q1", flat_left(op), "eps", "q1", {name});
        a.add("q1", flat_right(op), name, "q1", {});
    }
    a.add("q1", std::nullopt, "$", "q2", {});
    a.add_accepting(a.state("q2"));
    return a;
}

Pda anbn_pda() {
    Pda a;
    FlatSym sa = flat_gen(intern_generator("a"));
    FlatSym sb = flat_gen(intern_generator("b"));
    a.set_initial(a.state("q0"));
    a.add("q0", std::nullopt, "eps", "q1", {"$"});
    a.add("q1", sa, "eps", "q1", {"0"});
    // b moves to its own state, so no a follows a b
    a.add("q1", sb, "0", "q2", {});
    a.add("q2", sb, "0", "q2", {});
    a.add("q1", std::nullopt, "$", "q3", {});
    a.add("q2", std::nullopt, "$", "q3", {});
    a.add_accepting(a.state("q3"));
    return a;
}

namespace {

Pda machine_d(const std::vector<SymbolId>& gens) {
    SymbolId d = intern_operator("D");
    Pda a;
    a.set_initial(a.state("q0"));
    a.add("q0", std::nullopt, "eps", "q1", {"$"});
    for (SymbolId g : gens) {
        a.add("q1", flat_gen(g), "eps", "q1", {});
        a.add("q2", flat_gen(g), "eps", "q3", {});
    }
    a.add("q1", std::nullopt, "$", "q5", {});
    a.add("q1", std::nullopt, "eps", "q2", {});
    a.add("q3", std::nullopt, "eps", "q1", {});
    a.add("q2", flat_left(d), "eps", "q2", {"D"});
    a.add("q3", flat_right(d), "D", "q3", {});
    a.add_accepting(a.state("q5"));
    return a;
}

Pda machine_p(const std::vector<SymbolId>& gens) {
    SymbolId p = intern_operator("P");
    Pda a;
    a.set_initial(a.state("q0"));
    a.add("q0", std::nullopt, "eps", "q1", {"$"});
    a.add("q1", flat_left(p), "eps", "q1", {"P"});
    a.add("q1", std::nullopt, "eps", "q2", {});
    a.add("q2", flat_right(p), "P", "q2", {});
    for (SymbolId g : gens) a.add("q2", flat_gen(g), "eps", "q1", {});
    a.add("q1", std::nullopt, "$", "q3", {});
    a.add("q2", std::nullopt, "$", "q4", {});
    a.add_accepting(a.state("q3"));
    a.add_accepting(a.state("q4"));
    return a;
}

// Transcribed edge by edge; unlabelled stack effects follow the listed
// instructions (l:D pushes D, l:P pushes P, r:P pops P, r:D pops D).
Pda machine_pd(const std::vector<SymbolId>& gens) {
    SymbolId d = intern_operator("D");
    SymbolId p = intern_operator("P");
    Pda a;
    a.set_initial(a.state("q0"));
    a.state("q1");
    a.add("q0", std::nullopt, "eps", "q1", {"$"});
    a.add("q2", flat_left(d), "eps", "q2", {"D"});
    a.add("q3", flat_left(p), "eps", "q3", {"P"});
    a.add("q4", flat_right(p), "P", "q4", {});
    a.add("q5", flat_right(p), "P", "q5", {});
    a.add("q5", flat_right(d), "D", "q5", {});
    a.add("q1", flat_left(p), "eps", "q1", {"P"});
    a.add("q1", flat_left(d), "eps", "q2", {"D"});
    a.add("q1", std::nullopt, "eps", "q5", {});
    a.add("q2", flat_left(p), "eps", "q3", {"P"});
    a.add("q3", flat_left(d), "eps", "q2", {"D"});
    a.add("q3", flat_right(p), "P", "q4", {});
    for (SymbolId g : gens) {
        a.add("q3", flat_gen(g), "eps", "q3", {});
        a.add("q5", flat_gen(g), "eps", "q1", {});
        a.add("q2", flat_gen(g), "eps", "q1", {});
        a.add("q4", flat_gen(g), "eps", "q1", {});
    }
    a.add("q5", std::nullopt, "$", "q6", {});
    a.add("q1", std::nullopt, "$", "q6", {});
    a.add_accepting(a.state("q6"));
    return a;
}

}  // namespace

Pda preset_pda(std::string_view name, const std::vector<SymbolId>& gens, const std::vector<SymbolId>& ops) {
    if (name == "A_D") return machine_d(gens);
    if (name == "A_P") return machine_p(gens);
    if (name == "A_PD") return machine_pd(gens);
    if (name == "A_Omega") return build_bracket_pda(ops, gens);
    throw std::invalid_argument("unknown machine '" + std::string(name) + "' (expected A_D, A_P, A_PD or A_Omega)");
}

}  // namespace orw
