#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "nri/grid.hpp"

namespace testutil {

// The bundled reference parameter set (same values as configs/paper-fig2.cfg),
// rates and detunings in SI via gamma = 1e8 rad/s.
inline nri::SystemParams paper_params(double delta_p_gamma = 5.0) {
    nri::SystemParams p;
    p.gamma_unit = 1e8;
    p.gamma3 = 0.3 * 1e8;
    p.gamma4 = 0.1 * 1e8;
    p.gamma12 = 1e-3 * 1e8;
    p.delta_p = delta_p_gamma * 1e8;
    p.delta_c = -0.15 * 1e8;
    p.delta_s = 0.15 * 1e8;
    p.d23 = 3e-29;
    p.mu12 = 1.3e-22;
    p.density = 2e23;
    return p;
}

inline nri::StandingWaveConfig paper_wave() {
    return {10.2 * 1e8, 9.5 * 1e8, 1.0, 1.0};
}

inline double rel_diff(nri::complex a, nri::complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Deterministic uniform [0,1) on mt19937_64 (engine output is standardized).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double log_range(double lo, double hi) {
        return std::exp(range(std::log(lo), std::log(hi)));
    }

  private:
    std::mt19937_64 eng_;
};

// Synthetic map with Re{n} = f(x, y); eps/mu left at vacuum.
template <typename F>
nri::FieldMap synthetic_map(const nri::GridSpec& grid, F&& f) {
    nri::FieldMap map{grid, {}, paper_params(), paper_wave()};
    map.samples.resize(grid.cells());
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j)
            map.samples[grid.index(i, j)].medium.n =
                nri::complex{f(grid.x(i), grid.y(j)), 0.0};
    return map;
}

}  // namespace testutil
