// Normal-form languages of the built-in systems, as forbidden-factor tests.
#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "orw/terms.hpp"

namespace orw {

// Phi_P, Phi_D, Phi_PD, D_theta_star, Phi_I
const std::vector<std::string>& phi_names();
bool phi_member(std::string_view name, const Monomial& m);
std::function<bool(const Monomial&)> phi_predicate(std::string_view name);

}  // namespace orw
