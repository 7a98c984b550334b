#pragma once

#include <array>
#include <cmath>

#include "nri/params.hpp"

namespace nri {

// Steady-state probability amplitudes at one spatial point, dimensionless,
// with the ground-state amplitude A1 held at 1 (weak-probe regime).
struct SteadyAmplitudes {
    complex a2{0.0};
    complex a3{0.0};
    complex a4{0.0};
};

// Microscopic polarizability volumes, m^3. density*gamma_e and
// density*gamma_m are the dimensionless response strengths.
struct Polarizabilities {
    complex gamma_e{0.0};
    complex gamma_m{0.0};
};

namespace detail {

// Complex resonance denominators shared by both steady-state routes.
struct Denominators {
    complex d2, d3, d4;
};

inline Denominators denominators(const SystemParams& p) {
    return {
        complex{p.gamma12 / 2.0, p.delta_p - p.delta_c},
        complex{p.gamma3 / 2.0, p.delta_p},
        complex{p.gamma4 / 2.0, p.delta_s + p.delta_p - p.delta_c},
    };
}

// Solves a 3x3 complex system by Gaussian elimination with partial pivoting.
// Throws SingularSystemError on a zero pivot or when the 1-norm condition
// estimate (computed from the explicit inverse) exceeds cond_bound.
inline std::array<complex, 3> solve3(std::array<std::array<complex, 3>, 3> m,
                                     std::array<complex, 3> rhs,
                                     double cond_bound) {
    // Augment with the identity so one elimination yields solution + inverse.
    std::array<std::array<complex, 3>, 3> inv{};
    for (int i = 0; i < 3; ++i) inv[i][i] = 1.0;

    double norm_m = 0.0;  // 1-norm (max column sum) of the original matrix
    for (int j = 0; j < 3; ++j) {
        double col = 0.0;
        for (int i = 0; i < 3; ++i) col += std::abs(m[i][j]);
        norm_m = std::max(norm_m, col);
    }

    for (int k = 0; k < 3; ++k) {
        int pivot = k;
        double best = std::abs(m[k][k]);
        for (int i = k + 1; i < 3; ++i) {
            if (std::abs(m[i][k]) > best) {
                best = std::abs(m[i][k]);
                pivot = i;
            }
        }
        if (best == 0.0)
            throw SingularSystemError("steady-state matrix is singular (zero pivot)");
        if (pivot != k) {
            std::swap(m[k], m[pivot]);
            std::swap(inv[k], inv[pivot]);
            std::swap(rhs[k], rhs[pivot]);
        }
        for (int i = k + 1; i < 3; ++i) {
            const complex f = m[i][k] / m[k][k];
            for (int j = k; j < 3; ++j) m[i][j] -= f * m[k][j];
            for (int j = 0; j < 3; ++j) inv[i][j] -= f * inv[k][j];
            rhs[i] -= f * rhs[k];
        }
    }

    auto back_substitute = [&](std::array<complex, 3> b) {
        std::array<complex, 3> x{};
        for (int i = 2; i >= 0; --i) {
            complex s = b[i];
            for (int j = i + 1; j < 3; ++j) s -= m[i][j] * x[j];
            x[i] = s / m[i][i];
        }
        return x;
    };

    double norm_inv = 0.0;
    for (int j = 0; j < 3; ++j) {
        const auto col = back_substitute({inv[0][j], inv[1][j], inv[2][j]});
        double s = std::abs(col[0]) + std::abs(col[1]) + std::abs(col[2]);
        norm_inv = std::max(norm_inv, s);
    }
    if (!(norm_m * norm_inv <= cond_bound))
        throw SingularSystemError("steady-state matrix condition estimate exceeds bound");

    return back_substitute(rhs);
}

}  // namespace detail

// The steady-state determinant-like parameter xi(x,y). Total function; callers
// must keep |xi| above SolverOptions::xi_floor before dividing by it.
inline complex xi(const SystemParams& p, const LocalDrive& drive) {
    const auto [d2, d3, d4] = detail::denominators(p);
    const double wc2 = std::norm(drive.omega_c);
    const double ws2 = std::norm(drive.omega_s);
    return -(wc2 / 4.0 + d2 * d3) * d4 - (ws2 / 4.0) * d3;
}

// Closed-form steady amplitudes. This is the fast route; steady_linear_solve
// below is the ground truth it is checked against.
//
// Known transcription caveat: the closed forms carry the probe magnetic Rabi
// frequency unconjugated, while the equations of motion produce its conjugate
// in the same place. The two agree exactly for real probe amplitudes, which
// is how every reference probe here is built.
inline SteadyAmplitudes steady_closed_form(const SystemParams& p,
                                           const LocalDrive& drive,
                                           const ProbeDrive& probe,
                                           const SolverOptions& opts = {}) {
    const auto [d2, d3, d4] = detail::denominators(p);
    const complex oc = drive.omega_c;
    const complex os = drive.omega_s;
    const complex we = probe.omega_pE;
    const complex wb = probe.omega_pB;
    const double ws2 = std::norm(os);
    const complex x = xi(p, drive);
    if (!(std::abs(x) >= opts.xi_floor(p)))
        throw NearSingularError("|xi| below floor: weak-probe steady state ill-conditioned");

    const complex i_half{0.0, 0.5};
    SteadyAmplitudes a;
    a.a2 = d4 * (std::conj(oc) * we / 4.0 - i_half * d3 * wb) / x;
    a.a3 = (-i_half * d4 * (d2 * we + i_half * oc * wb) -
            complex{0.0, 0.125} * ws2 * we) /
           x;
    a.a4 = -i_half * (-0.25 * we * std::conj(oc) + i_half * d3 * wb) * os / x;
    return a;
}

// Ground-truth route: assembles the steady-state linear system term by term
// from the equations of motion (dA2/dt = dA3/dt = dA4/dt = 0, A1 = 1) and
// solves it. All downstream quantities are derived from this route.
inline SteadyAmplitudes steady_linear_solve(const SystemParams& p,
                                            const LocalDrive& drive,
                                            const ProbeDrive& probe,
                                            const SolverOptions& opts = {}) {
    const auto [d2, d3, d4] = detail::denominators(p);
    const complex i_half{0.0, 0.5};
    const complex oc = drive.omega_c;
    const complex os = drive.omega_s;

    // Row 1: 0 = -d2 A2 + (i/2) conj(omega_c) A3 + (i/2) conj(omega_s) A4
    //            + (i/2) conj(omega_pB)
    // Row 2: 0 = (i/2) omega_c A2 - d3 A3 + (i/2) omega_pE
    // Row 3: 0 = (i/2) omega_s A2 - d4 A4
    std::array<std::array<complex, 3>, 3> m{{
        {-d2, i_half * std::conj(oc), i_half * std::conj(os)},
        {i_half * oc, -d3, complex{0.0}},
        {i_half * os, complex{0.0}, -d4},
    }};
    std::array<complex, 3> rhs{
        -i_half * std::conj(probe.omega_pB),
        -i_half * probe.omega_pE,
        complex{0.0},
    };
    const auto sol = detail::solve3(m, rhs, opts.condition_bound);
    return {sol[0], sol[1], sol[2]};
}

// Microscopic polarizabilities from the linear-solve route using an internal
// weak reference probe. The result is a probe-gauge-invariant ratio:
//   gamma_e = 2 d23^2 A3 / (hbar eps0 omega_pE)
//   gamma_m = 2 mu0 mu12^2 A2 / (hbar omega_pB)
inline Polarizabilities polarizabilities(const SystemParams& p,
                                         const LocalDrive& drive,
                                         const SolverOptions& opts = {}) {
    const ProbeDrive probe =
        probe_from_electric(p, complex{opts.probe_scale * p.gamma_unit});
    const SteadyAmplitudes a = steady_linear_solve(p, drive, probe, opts);
    return {
        2.0 * p.d23 * p.d23 * a.a3 / (hbar * eps0 * probe.omega_pE),
        2.0 * mu0 * p.mu12 * p.mu12 * a.a2 / (hbar * probe.omega_pB),
    };
}

}  // namespace nri
