#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "nri/medium.hpp"

namespace nri {

// sin(pi*v) with exact argument reduction, so standing-wave nodes (integer v)
// and antinodes (half-integer v) come out exactly 0 / +-1.
inline double sin_pi(double v) {
    double r = std::remainder(v, 2.0);  // r in [-1, 1], exact
    if (r > 0.5)
        r = 1.0 - r;
    else if (r < -0.5)
        r = -1.0 - r;
    return std::sin(pi * r);
}

// The two orthogonal standing waves: Omega_c(x) = omega_c0 sin(2 pi x/lambda1)
// along x, Omega_s(y) = omega_s0 sin(2 pi y/lambda2) along y. Coordinates and
// wavelengths are in a common arbitrary unit (lambda).
struct StandingWaveConfig {
    double omega_c0 = 0.0;  // peak coupling Rabi frequency, rad/s
    double omega_s0 = 0.0;  // peak signal Rabi frequency, rad/s
    double lambda1 = 1.0;
    double lambda2 = 1.0;

    bool operator==(const StandingWaveConfig&) const = default;

    void validate() const {
        if (!(omega_c0 >= 0.0) || !std::isfinite(omega_c0))
            throw ConfigError("omega_c0", "must be finite and >= 0");
        if (!(omega_s0 >= 0.0) || !std::isfinite(omega_s0))
            throw ConfigError("omega_s0", "must be finite and >= 0");
        if (!(lambda1 > 0.0)) throw ConfigError("lambda1", "must be > 0");
        if (!(lambda2 > 0.0)) throw ConfigError("lambda2", "must be > 0");
    }
};

// Local drive at a point; real-valued, sign of the sin lobe retained.
inline LocalDrive local_rabi(const StandingWaveConfig& cfg, double x, double y) {
    return {
        complex{cfg.omega_c0 * sin_pi(2.0 * x / cfg.lambda1)},
        complex{cfg.omega_s0 * sin_pi(2.0 * y / cfg.lambda2)},
    };
}

// Node-centered rectangular grid in lambda units, endpoints inclusive.
// The default domain puts (0.75, 0.75) exactly on-grid for odd nx, ny.
struct GridSpec {
    double x_min = 0.5, x_max = 1.0;
    double y_min = 0.5, y_max = 1.0;
    int nx = 201, ny = 201;

    bool operator==(const GridSpec&) const = default;

    void validate() const {
        if (!(x_min < x_max)) throw ConfigError("x_min", "requires x_min < x_max");
        if (!(y_min < y_max)) throw ConfigError("y_min", "requires y_min < y_max");
        if (nx < 2) throw ConfigError("nx", "grid needs nx >= 2");
        if (ny < 2) throw ConfigError("ny", "grid needs ny >= 2");
    }

    double x(int i) const { return x_min + i * (x_max - x_min) / (nx - 1); }
    double y(int j) const { return y_min + j * (y_max - y_min) / (ny - 1); }
    std::size_t cells() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    }
    // Row-major storage: x index outer, y index inner.
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * ny + j;
    }
};

// One grid cell: the medium sample plus the per-cell error state. Cells with
// error != None carry NaN values; the map as a whole never aborts on them.
struct GridSample {
    MediumSample medium;
    ErrorKind error = ErrorKind::None;
};

// A fully evaluated map plus the inputs that produced it.
struct FieldMap {
    GridSpec grid;
    std::vector<GridSample> samples;  // grid.cells(), row-major
    SystemParams params;              // params.delta_p is the probe detuning used
    StandingWaveConfig wave;

    const GridSample& at(int i, int j) const { return samples[grid.index(i, j)]; }
};

// Evaluates the medium over the grid. Cells are independent; evaluation may
// run on several threads and the result is identical to serial evaluation.
// threads == 0 picks the hardware concurrency.
inline FieldMap evaluate_map(const SystemParams& params,
                             const StandingWaveConfig& cfg, const GridSpec& grid,
                             const SolverOptions& opts = {},
                             unsigned threads = 0) {
    params.validate();
    cfg.validate();
    grid.validate();

    FieldMap map{grid, {}, params, cfg};
    map.samples.resize(grid.cells());

    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const int i = static_cast<int>(k / grid.ny);
            const int j = static_cast<int>(k % grid.ny);
            const LocalDrive drive = local_rabi(cfg, grid.x(i), grid.y(j));
            GridSample& cell = map.samples[k];
            try {
                cell.medium = medium_sample(params, drive, opts);
            } catch (const Error& e) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                cell.medium = {complex{nan, nan}, complex{nan, nan},
                               complex{nan, nan}, 0};
                cell.error = e.kind();
            }
        }
    };

    unsigned n_threads = threads ? threads : std::thread::hardware_concurrency();
    if (n_threads < 1) n_threads = 1;
    const std::size_t total = grid.cells();
    n_threads = static_cast<unsigned>(
        std::min<std::size_t>(n_threads, total));

    if (n_threads == 1) {
        eval_range(0, total);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        const std::size_t chunk = (total + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(total, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(eval_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return map;
}

// A probe-detuning sweep over a fixed geometry.
struct SweepSpec {
    std::vector<double> delta_ps;  // probe detunings, rad/s
    SystemParams base;
    StandingWaveConfig wave;
    GridSpec grid;

    void validate() const {
        if (delta_ps.empty()) throw ConfigError("sweep", "needs at least one delta_p");
        for (double d : delta_ps)
            if (!std::isfinite(d)) throw ConfigError("sweep", "delta_p must be finite");
        base.validate();
        wave.validate();
        grid.validate();
    }
};

// One map per detuning, order preserved, maps independent.
inline std::vector<FieldMap> sweep(const SweepSpec& spec,
                                   const SolverOptions& opts = {},
                                   unsigned threads = 0) {
    spec.validate();
    std::vector<FieldMap> maps;
    maps.reserve(spec.delta_ps.size());
    for (double dp : spec.delta_ps) {
        SystemParams p = spec.base;
        p.delta_p = dp;
        maps.push_back(evaluate_map(p, spec.wave, spec.grid, opts, threads));
    }
    return maps;
}

}  // namespace nri
