// Line-oriented system files.
//
//   name XP
//   ops D P
//   gens x y
//   lambda 1
//   phi Phi_P                 (optional: Phi predicate deciding 'phi' constraints)
//   measure rb-weight         (optional: bundled termination measure)
//   companion XP              (optional: preset used for NF(...) in targets)
//   rule alpha(u: ne, v: ne): P(u) P(v) -> P(P(u) v) + P(u P(v)) + lambda P(u v)
//   rule phi: D(1) -> 0
#pragma once

#include <string>
#include <string_view>

#include "orw/polygraph.hpp"

namespace orw {

Polygraph parse_system(std::string_view text);
Polygraph load_system_file(const std::string& path);
std::string export_system(const Polygraph& X);

// "name(vars): lhs -> rhs" against the given signature
RuleSchema parse_rule(std::string_view text, const Signature& sig, std::size_t line = 1);

}  // namespace orw
