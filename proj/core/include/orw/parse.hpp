// Term surface syntax: parsing into an expression tree and evaluation.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orw/terms.hpp"

namespace orw {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Sum, Product, Number, Lambda, Ident, Apply, NF, Hole, Leibniz, Plug };
    Kind kind = Kind::Number;
    std::vector<std::pair<int, ExprPtr>> addends;  // Sum: (sign, term)
    std::vector<ExprPtr> factors;                  // Product
    Rational number;                               // Number
    int power = 1;                                 // Lambda
    std::string name;                              // Ident, Apply (op), Leibniz (op), Plug (context var)
    std::string name2;                             // Leibniz (sequence variable)
    ExprPtr arg;                                   // Apply, NF, Plug
    std::size_t column = 0;
};

// line is only used for error messages
ExprPtr parse_expr(std::string_view text, std::size_t line = 1);

struct Signature {
    std::vector<SymbolId> gens, ops;
    std::optional<Rational> lambda;

    bool has_generator(SymbolId g) const;
    bool has_operator(SymbolId op) const;
};

struct EvalHooks {
    // variable lookup; nullopt means "not a variable"
    std::function<std::optional<Polynomial>(const std::string&)> variable;
    std::function<Polynomial(const Polynomial&)> normal_form;
    std::function<Polynomial(SymbolId op, const std::string& seq_var)> leibniz;
};

Polynomial evaluate(const Expr& e, const Signature& sig, const EvalHooks& hooks = {});

Polynomial parse_polynomial(std::string_view text, const Signature& sig);
Monomial parse_monomial(std::string_view text, const Signature& sig);
Context parse_context(std::string_view text, const Signature& sig);

std::vector<std::string> split_list(std::string_view text, char sep = ',');

}  // namespace orw
