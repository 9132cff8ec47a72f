// Flat bracket words, pushdown automata and the flattening map.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orw/parse.hpp"
#include "orw/terms.hpp"

namespace orw {

// A flat symbol packs its kind into the top two bits, so numeric order is the
// alphabet order: generators < l:* < r:*, each by interning id.
using FlatSym = std::uint32_t;
using FlatWord = std::vector<FlatSym>;

enum class FlatKind : std::uint32_t { Gen = 0, Left = 1, Right = 2 };

inline FlatSym flat_gen(SymbolId g) { return g; }
inline FlatSym flat_left(SymbolId op) { return (1u << 30) | op; }
inline FlatSym flat_right(SymbolId op) { return (2u << 30) | op; }
inline FlatKind flat_kind(FlatSym s) { return static_cast<FlatKind>(s >> 30); }
inline SymbolId flat_id(FlatSym s) { return s & ((1u << 30) - 1); }

class MalformedWord : public std::runtime_error {
public:
    MalformedWord(const std::string& msg, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

FlatWord flatten(const Monomial& m);
void flatten_into(const Monomial& m, FlatWord& out);
// throws MalformedWord naming the 0-based failing position
Monomial unflatten(std::span<const FlatSym> w);

std::string flat_symbol_name(FlatSym s);
std::string to_string(const FlatWord& w);
// whitespace separated; generators by name, brackets as l:OP / r:OP
FlatWord parse_flat_word(std::string_view text, const Signature& sig);

class Pda {
public:
    static constexpr std::uint32_t kEps = 0xffffffffu;
    static constexpr std::uint32_t kBottom = 0;  // stack symbol $

    struct Transition {
        std::uint32_t from;
        FlatSym input;       // kEps for an epsilon move
        std::uint32_t pop;   // stack symbol id, or kEps
        std::uint32_t to;
        std::vector<std::uint32_t> push;  // pushed left to right, last ends on top
    };

    Pda();

    std::uint32_t state(std::string_view name);       // find or add
    std::uint32_t stack_symbol(std::string_view name);  // find or add
    void declare_input(FlatSym s);
    void set_initial(std::uint32_t q) { initial_ = q; }
    void add_accepting(std::uint32_t q);
    void add(std::string_view from, std::optional<FlatSym> input, std::string_view pop, std::string_view to,
             const std::vector<std::string>& push);

    const std::vector<std::string>& state_names() const { return states_; }
    const std::vector<std::string>& stack_names() const { return stack_; }
    const std::vector<Transition>& transitions() const { return trans_; }
    const std::vector<FlatSym>& input_alphabet() const { return inputs_; }
    std::uint32_t initial() const { return initial_; }
    bool accepting(std::uint32_t q) const;
    bool knows_input(FlatSym s) const;

    std::string to_text() const;
    static Pda from_text(std::string_view text);

    // per-state transition index, rebuilt lazily
    const std::vector<std::vector<std::uint32_t>>& by_state() const;

private:
    std::vector<std::string> states_, stack_;
    std::vector<Transition> trans_;
    std::vector<FlatSym> inputs_;
    std::vector<std::uint32_t> accepting_;
    std::uint32_t initial_ = 0;
    mutable std::vector<std::vector<std::uint32_t>> index_;
};

struct TraceStep {
    std::string state;
    std::optional<FlatSym> consumed;
    std::string stack;  // bottom to top, "" when empty
};

struct RunResult {
    bool accepted = false;
    std::vector<TraceStep> trace;  // one accepting run when accepted
    std::string diagnostic;
};

RunResult pda_run(const Pda& a, std::span<const FlatSym> w, bool want_trace = true);
inline bool pda_accepts(const Pda& a, std::span<const FlatSym> w) { return pda_run(a, w, false).accepted; }

Pda build_bracket_pda(const std::vector<SymbolId>& ops, const std::vector<SymbolId>& gens);
// the a^n b^n machine over generators a and b
Pda anbn_pda();
// A_D, A_P, A_PD over operators D, P and the given generators; A_Omega over gens and ops
Pda preset_pda(std::string_view name, const std::vector<SymbolId>& gens, const std::vector<SymbolId>& ops = {});

}  // namespace orw
