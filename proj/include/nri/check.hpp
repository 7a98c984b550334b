#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nri/steady.hpp"

namespace nri {

// One closed-form-vs-linear-solve disagreement, with enough of the drawn
// parameter point to reproduce it.
struct DiscrepancyRecord {
    std::string quantity;  // "A2" | "A3" | "A4"
    complex closed_value{0.0};
    complex solve_value{0.0};
    double rel_diff = 0.0;
    SystemParams params;
    LocalDrive drive;
};

struct CheckReport {
    int draws = 0;
    int passed = 0;
    int near_singular_skips = 0;
    double tolerance = 0.0;
    std::vector<DiscrepancyRecord> discrepancies;
};

namespace detail {

// mt19937_64 is bit-exact across platforms; the [0,1) mapping is done by
// hand because the standard distributions are not.
class Uniform {
  public:
    explicit Uniform(std::uint64_t seed) : eng_(seed) {}
    double next() {  // in [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double range(double lo, double hi) { return lo + (hi - lo) * next(); }

  private:
    std::mt19937_64 eng_;
};

inline double rel_diff(complex a, complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace detail

// Randomized equivalence sweep between the two steady-state routes. Draw
// ranges (in units of base.gamma_unit): rates in [0.01, 1], detunings in
// [-10, 10], drive Rabi in [0, 12]. The probe is the weak reference probe.
// Every component disagreement beyond tol becomes a DiscrepancyRecord.
inline CheckReport run_check(int draws, std::uint64_t seed,
                             const SystemParams& base, double tol = 1e-9,
                             const SolverOptions& opts = {}) {
    if (draws < 1) throw ConfigError("draws", "must be >= 1");
    detail::Uniform rng(seed);
    const double g = base.gamma_unit;

    CheckReport report;
    report.draws = draws;
    report.tolerance = tol;

    for (int k = 0; k < draws; ++k) {
        SystemParams p = base;
        p.gamma3 = rng.range(0.01, 1.0) * g;
        p.gamma4 = rng.range(0.01, 1.0) * g;
        p.gamma12 = rng.range(0.01, 1.0) * g;
        p.delta_p = rng.range(-10.0, 10.0) * g;
        p.delta_c = rng.range(-10.0, 10.0) * g;
        p.delta_s = rng.range(-10.0, 10.0) * g;
        const LocalDrive drive{complex{rng.range(0.0, 12.0) * g},
                               complex{rng.range(0.0, 12.0) * g}};
        const ProbeDrive probe =
            probe_from_electric(p, complex{opts.probe_scale * g});

        SteadyAmplitudes closed, solved;
        try {
            closed = steady_closed_form(p, drive, probe, opts);
            solved = steady_linear_solve(p, drive, probe, opts);
        } catch (const Error&) {
            ++report.near_singular_skips;
            continue;
        }

        bool ok = true;
        const std::pair<const char*, std::pair<complex, complex>> pairs[] = {
            {"A2", {closed.a2, solved.a2}},
            {"A3", {closed.a3, solved.a3}},
            {"A4", {closed.a4, solved.a4}},
        };
        for (const auto& [name, values] : pairs) {
            const double rd = detail::rel_diff(values.first, values.second);
            if (rd > tol) {
                ok = false;
                report.discrepancies.push_back(
                    {name, values.first, values.second, rd, p, drive});
            }
        }
        if (ok) ++report.passed;
    }
    return report;
}

}  // namespace nri
