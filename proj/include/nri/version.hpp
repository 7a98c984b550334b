#pragma once

namespace nri {

inline constexpr const char* version = "0.1.0";

// Stated in every output header: how the complex refractive index root is
// chosen. The constitutive relations fix n^2 = eps_r * mu_r only; the sign
// is a convention and downstream consumers deserve to see which one applies.
inline constexpr const char* branch_rule_statement =
    "n = sqrt(|eps_r*mu_r|) * exp(i*(arg eps_r + arg mu_r)/2) with principal "
    "arguments, sign chosen so that Re(n) < 0 exactly when "
    "Re(eps_r)*|mu_r| + Re(mu_r)*|eps_r| < 0 (negative phase velocity)";

}  // namespace nri
