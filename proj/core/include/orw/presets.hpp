// Built-in systems: differential, Rota-Baxter, involutive and differential
// Rota-Baxter algebras, their reduced forms, and a system with no monomial order.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "orw/polygraph.hpp"
#include "orw/rewriter.hpp"

namespace orw {

// A critical-branching family. kind is "intersection" or "inclusion"; in an
// inclusion source, q{X} marks the factor holding the inner redex X.
struct FamilyTemplate {
    std::string group;
    std::string left_rule, right_rule;
    std::string kind;
    std::string source;
};

struct Preset {
    std::string name;
    PolygraphPtr system;
    std::shared_ptr<Rewriter> rewriter;
    std::vector<FamilyTemplate> families;
};

const std::vector<std::string>& preset_names();
bool is_preset(std::string_view name);
// system-file text of a preset over the given generators
std::string preset_text(std::string_view name, const std::vector<std::string>& gens, const Rational& lambda);
Polygraph preset_system(std::string_view name, const std::vector<std::string>& gens, const Rational& lambda);
const std::vector<FamilyTemplate>& preset_families(std::string_view name);
Preset load_preset(std::string_view name, const std::vector<std::string>& gens, const Rational& lambda);

// rewriter for any system; a companion preset is loaded over the same generators and lambda
std::shared_ptr<Rewriter> make_rewriter(const Polygraph& X);

}  // namespace orw
