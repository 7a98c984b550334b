#pragma once

#include <cmath>

#include "nri/steady.hpp"

namespace nri {

// Per-sample condition flags, stored as a bitmask.
enum SampleFlag : unsigned {
    FlagDoubleNegative = 1u << 0,   // Re(eps_r) < 0 and Re(mu_r) < 0
    FlagNearCMPole = 1u << 1,       // a CM denominator close to (above) the floor
    FlagBranchAmbiguous = 1u << 2,  // an argument within 1e-9 of the -pi cut
};

// Macroscopic response at one grid point.
struct MediumSample {
    complex eps_r{1.0};  // relative permittivity
    complex mu_r{1.0};   // relative permeability
    complex n{1.0};      // complex refractive index
    unsigned flags = 0;
};

// Clausius-Mossotti local-field relation (1 + 2Ng/3)/(1 - Ng/3). The same
// formula maps gamma_e -> eps_r and gamma_m -> mu_r.
inline complex clausius_mossotti(double density, complex gamma,
                                 const SolverOptions& opts = {}) {
    const complex ng = density * gamma;
    const complex den = 1.0 - ng / 3.0;
    if (std::abs(den) < opts.cm_pole_floor)
        throw CMPoleError("Clausius-Mossotti denominator below floor (local-field resonance)");
    return (1.0 + 2.0 * ng / 3.0) / den;
}

// Square-root branch choice for n. The half-sum of the principal arguments
// fixes |n| and the phase up to sign; the sign is then set by the
// negative-phase-velocity test Re(eps)|mu| + Re(mu)|eps| < 0, which picks the
// physically propagating root in both passive and weakly amplifying regions.
// For passive inputs (both imaginary parts >= 0) the sign correction never
// fires and the half-sum result is returned as is.
inline complex refractive_index(complex eps_r, complex mu_r) {
    const double half = 0.5 * (std::arg(eps_r) + std::arg(mu_r));
    complex n = std::polar(std::sqrt(std::abs(eps_r * mu_r)), half);
    const bool npv =
        eps_r.real() * std::abs(mu_r) + mu_r.real() * std::abs(eps_r) < 0.0;
    if ((npv && n.real() > 0.0) || (!npv && n.real() < 0.0)) n = -n;
    return n;
}

// True when either constitutive argument sits within 1e-9 of the -pi branch
// cut, where the root choice becomes numerically fragile.
inline bool branch_ambiguous(complex eps_r, complex mu_r) {
    return std::abs(std::arg(eps_r) + pi) <= 1e-9 ||
           std::abs(std::arg(mu_r) + pi) <= 1e-9;
}

// Full microscopic-to-macroscopic composition at one point.
inline MediumSample medium_sample(const SystemParams& p, const LocalDrive& drive,
                                  const SolverOptions& opts = {}) {
    const Polarizabilities g = polarizabilities(p, drive, opts);
    MediumSample s;
    s.eps_r = clausius_mossotti(p.density, g.gamma_e, opts);
    s.mu_r = clausius_mossotti(p.density, g.gamma_m, opts);
    s.n = refractive_index(s.eps_r, s.mu_r);

    if (s.eps_r.real() < 0.0 && s.mu_r.real() < 0.0) s.flags |= FlagDoubleNegative;
    const double near = opts.cm_pole_floor * opts.cm_near_factor;
    if (std::abs(1.0 - p.density * g.gamma_e / 3.0) < near ||
        std::abs(1.0 - p.density * g.gamma_m / 3.0) < near)
        s.flags |= FlagNearCMPole;
    if (branch_ambiguous(s.eps_r, s.mu_r)) s.flags |= FlagBranchAmbiguous;
    return s;
}

}  // namespace nri
