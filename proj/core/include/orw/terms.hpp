// Omega-monomials, polynomials over Q and one-hole contexts.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace orw {

using Rational = mpq_class;
using SymbolId = std::uint32_t;

// Process-wide interning. Ids follow first-interning order, which is also the
// alphabet order (loaders intern in declaration order).
SymbolId intern_generator(std::string_view name);
SymbolId intern_operator(std::string_view name);
std::optional<SymbolId> find_generator(std::string_view name);
std::optional<SymbolId> find_operator(std::string_view name);
const std::string& generator_name(SymbolId id);
const std::string& operator_name(SymbolId id);

class Monomial;

struct Atom;

class Monomial {
public:
    Monomial() = default;  // the identity 1
    explicit Monomial(std::vector<Atom> atoms);

    static Monomial generator(SymbolId g);
    static Monomial bracket(SymbolId op, Monomial inner);

    std::span<const Atom> atoms() const;
    bool is_one() const { return rep_ == nullptr; }
    std::size_t breadth() const;
    std::size_t depth() const;
    std::size_t size() const;         // generators + brackets, recursively
    std::size_t flat_length() const;  // generators + 2 * brackets
    std::size_t operator_count() const;
    std::size_t hash() const;

    Monomial slice(std::size_t begin, std::size_t end) const;
    bool is_single_bracket() const;

    friend bool operator==(const Monomial& a, const Monomial& b);
    friend Monomial operator*(const Monomial& a, const Monomial& b);

private:
    struct Rep;
    std::shared_ptr<const Rep> rep_;
};

struct Atom {
    SymbolId sym = 0;
    bool is_bracket = false;
    Monomial inner;  // identity for generators

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.sym == b.sym && a.is_bracket == b.is_bracket && a.inner == b.inner;
    }
};

struct Monomial::Rep {
    std::vector<Atom> atoms;
    std::size_t hash = 0;
    std::uint32_t size = 0;
    std::uint32_t depth = 0;
    std::uint32_t flat_length = 0;
    std::uint32_t ops = 0;
};

// Flat-lex comparison (gens < l:* < r:*, then by interning id). -1, 0, 1.
int compare_flat(const Monomial& a, const Monomial& b);

// Presentation order: size ascending, then flat words descending.
struct PresentationLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Measure {
    std::size_t breadth, depth, size;
    friend bool operator==(const Measure&, const Measure&) = default;
};
Measure measure(const Monomial& m);

class Polynomial {
public:
    using Terms = std::map<Monomial, Rational, PresentationLess>;

    Polynomial() = default;
    Polynomial(const Monomial& m, const Rational& c = 1);  // NOLINT
    static Polynomial constant(const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    Rational coefficient(const Monomial& m) const;
    std::vector<Monomial> support() const;
    std::size_t hash() const;

    void add_term(const Monomial& m, const Rational& c);
    Polynomial& operator+=(const Polynomial& b);
    Polynomial& operator-=(const Polynomial& b);
    Polynomial& operator*=(const Rational& c);

    Polynomial apply(SymbolId op) const;
    Polynomial left_multiply(const Monomial& m) const;
    Polynomial right_multiply(const Monomial& m) const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
    Terms terms_;
};

enum class PolyOp { Add, Scale, Multiply, ApplyOperator };

// One-hole context. frames[0] is the outermost level; frames[k].op wraps frames[k+1].
struct ContextFrame {
    std::vector<Atom> left, right;
    SymbolId op = 0;
    friend bool operator==(const ContextFrame&, const ContextFrame&) = default;
};

class Context {
public:
    Context();  // the trivial context _
    explicit Context(std::vector<ContextFrame> frames);

    static Context left_right(const Monomial& left, const Monomial& right);

    const std::vector<ContextFrame>& frames() const { return frames_; }
    bool is_trivial() const;
    std::size_t size() const;  // the hole counts as one atom
    std::size_t hole_depth() const { return frames_.size() - 1; }
    std::size_t hole_flat_offset() const;

    Monomial plug(const Monomial& m) const;
    Polynomial plug(const Polynomial& a) const;
    // this|_{inner}
    Context compose(const Context& inner) const;
    // wrap the whole context: left * this * right, or op(this)
    Context within(const Monomial& left, const Monomial& right) const;
    Context within_bracket(SymbolId op) const;

    friend bool operator==(const Context&, const Context&) = default;

private:
    std::vector<ContextFrame> frames_;
};

inline Context compose_contexts(const Context& p, const Context& q) { return p.compose(q); }

// Printing in the term surface syntax.
std::string to_string(const Monomial& m);
std::string to_string(const Polynomial& a);
std::string to_string(const Context& q);
std::string to_string(const Rational& r);

}  // namespace orw

template <>
struct std::hash<orw::Monomial> {
    std::size_t operator()(const orw::Monomial& m) const { return m.hash(); }
};
