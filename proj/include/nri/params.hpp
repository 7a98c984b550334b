#pragma once

#include <cmath>
#include <string>

#include "nri/constants.hpp"
#include "nri/errors.hpp"

namespace nri {

// Physical parameters of the driven four-level vapor. Single source of truth
// for all downstream computations. Rates and detunings are stored in SI rad/s
// (configuration files enter them in units of gamma_unit and convert at load).
//
// Level scheme: |1>,|2> lower states, |3>,|4> excited. The probe couples
// |2>-|3> electrically (dipole d23) and |1>-|2> magnetically (dipole mu12);
// the two standing waves drive |1>-|3> and |1>-|4>.
struct SystemParams {
    double gamma3 = 0.0;      // spontaneous decay rate of |3>, rad/s
    double gamma4 = 0.0;      // spontaneous decay rate of |4>, rad/s
    double gamma12 = 0.0;     // |1>-|2> dephasing rate, rad/s
    double delta_p = 0.0;     // probe detuning  (omega_32 - omega_p), rad/s
    double delta_c = 0.0;     // coupling detuning (omega_31 - omega_c), rad/s
    double delta_s = 0.0;     // signal detuning (omega_41 - omega_s), rad/s
    double d23 = 0.0;         // electric transition dipole moment, C m
    double mu12 = 0.0;        // magnetic transition dipole moment, C m^2 s^-1
    double density = 0.0;     // atomic concentration N, m^-3
    double gamma_unit = 1e8;  // reference rate used for scaling, rad/s

    bool operator==(const SystemParams&) const = default;

    // Throws ConfigError naming the violated field.
    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError(name, "must be finite and > 0");
        };
        positive(gamma3, "gamma3");
        positive(gamma4, "gamma4");
        positive(d23, "d23");
        positive(mu12, "mu12");
        positive(density, "density");
        positive(gamma_unit, "gamma_unit");
        if (!(gamma12 >= 0.0) || !std::isfinite(gamma12))
            throw ConfigError("gamma12", "must be finite and >= 0");
        for (auto [v, name] : {std::pair{delta_p, "delta_p"},
                               {delta_c, "delta_c"},
                               {delta_s, "delta_s"}}) {
            if (!std::isfinite(v)) throw ConfigError(name, "must be finite");
        }
    }
};

// Local standing-wave Rabi frequencies at one spatial point, rad/s.
// Real-valued in the standing-wave geometry (the sign carries the sin lobe);
// zero at nodes. Kept complex for generality.
struct LocalDrive {
    complex omega_c{0.0};
    complex omega_s{0.0};
};

// Probe Rabi pair: omega_pE = d23 E_p / hbar, omega_pB = mu12 B_p / hbar.
struct ProbeDrive {
    complex omega_pE{0.0};
    complex omega_pB{0.0};
};

// Builds the probe pair from the electric component alone, tying the magnetic
// one through the plane-wave relation E_p/B_p = c.
inline ProbeDrive probe_from_electric(const SystemParams& p, complex omega_pE) {
    return {omega_pE, omega_pE * (p.mu12 / (c0 * p.d23))};
}

// Weak-probe validity check: |omega_pE| << gamma3. A violation is a warning
// condition for callers, never a hard error.
inline bool probe_is_weak(const SystemParams& p, const ProbeDrive& probe) {
    return std::abs(probe.omega_pE) < 0.1 * p.gamma3;
}

// Numerical guards for the steady-state and medium computations.
struct SolverOptions {
    double xi_floor_scale = 1e-12;   // |xi| floor in units of gamma_unit^3
    double condition_bound = 1e12;   // 1-norm condition estimate bound
    double cm_pole_floor = 1e-9;     // |1 - N gamma / 3| floor
    double cm_near_factor = 1e3;     // NearCMPole flag inside floor*factor
    double probe_scale = 1e-3;       // reference probe: probe_scale*gamma_unit

    bool operator==(const SolverOptions&) const = default;

    double xi_floor(const SystemParams& p) const {
        return xi_floor_scale * p.gamma_unit * p.gamma_unit * p.gamma_unit;
    }
};

}  // namespace nri
