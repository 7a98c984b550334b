#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nri/contour.hpp"

namespace nri {

// True exactly where Re(eps_r) < 0 and Re(mu_r) < 0 and the cell has no
// error flag. Row-major, same indexing as FieldMap::samples.
inline std::vector<bool> double_negative_mask(const FieldMap& map) {
    std::vector<bool> mask(map.samples.size());
    for (std::size_t k = 0; k < map.samples.size(); ++k) {
        const GridSample& c = map.samples[k];
        mask[k] = c.error == ErrorKind::None && c.medium.eps_r.real() < 0.0 &&
                  c.medium.mu_r.real() < 0.0;
    }
    return mask;
}

// Even-odd rule point-in-polygon test.
inline bool polygon_encloses(const ContourPolyline& poly, double rx, double ry) {
    if (!poly.closed || poly.points.size() < 3) return false;
    bool inside = false;
    const auto& pts = poly.points;
    for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
        const double xi = pts[i][0], yi = pts[i][1];
        const double xj = pts[j][0], yj = pts[j][1];
        if ((yi > ry) != (yj > ry)) {
            const double x_cross = xi + (ry - yi) * (xj - xi) / (yj - yi);
            if (rx < x_cross) inside = !inside;
        }
    }
    return inside;
}

// Absolute enclosed area by the shoelace formula.
inline double polygon_area(const ContourPolyline& poly) {
    double twice = 0.0;
    const auto& pts = poly.points;
    for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++)
        twice += pts[j][0] * pts[i][1] - pts[i][0] * pts[j][1];
    return std::abs(twice) / 2.0;
}

// Among the closed contours enclosing the reference point, the one with the
// smallest enclosed area.
inline const ContourPolyline& innermost_contour(
    const std::vector<ContourPolyline>& contours, double rx, double ry) {
    const ContourPolyline* best = nullptr;
    double best_area = std::numeric_limits<double>::infinity();
    for (const auto& c : contours) {
        if (!polygon_encloses(c, rx, ry)) continue;
        const double area = polygon_area(c);
        if (area < best_area) {
            best_area = area;
            best = &c;
        }
    }
    if (!best)
        throw NoEnclosingContourError("no closed contour encloses the reference point");
    return *best;
}

struct CircleFitResult {
    double center_x = 0.0, center_y = 0.0;  // lambda units
    double radius = 0.0;                    // lambda units
    double rms_residual = 0.0;              // RMS of (distance - radius)
    double isotropy = 0.0;                  // rms_residual / radius
};

// Algebraic least-squares circle fit (Kasa): minimizes the residual of
// x^2 + y^2 + D x + E y + F over the points, solved on centroid-shifted
// coordinates for conditioning. Deterministic and closed-form.
inline CircleFitResult fit_circle(const ContourPolyline& poly) {
    const auto& pts = poly.points;
    const std::size_t n = pts.size();
    if (n < 3) throw DegenerateFitError("circle fit needs >= 3 points");

    double cx0 = 0.0, cy0 = 0.0;
    for (const auto& p : pts) {
        cx0 += p[0];
        cy0 += p[1];
    }
    cx0 /= n;
    cy0 /= n;

    double sxx = 0, sxy = 0, syy = 0, sxz = 0, syz = 0, sz = 0;
    for (const auto& p : pts) {
        const double u = p[0] - cx0, v = p[1] - cy0;
        const double z = u * u + v * v;
        sxx += u * u;
        sxy += u * v;
        syy += v * v;
        sxz += u * z;
        syz += v * z;
        sz += z;
    }
    const double det = sxx * syy - sxy * sxy;
    const double scale = std::max(sxx, syy);
    if (!(det > 1e-12 * scale * scale))
        throw DegenerateFitError("circle fit points are collinear");

    // Centroid-shifted normal equations: [sxx sxy; sxy syy] (uc, vc) = (sxz, syz)/2.
    const double uc = (syy * sxz - sxy * syz) / (2.0 * det);
    const double vc = (sxx * syz - sxy * sxz) / (2.0 * det);

    CircleFitResult fit;
    fit.center_x = cx0 + uc;
    fit.center_y = cy0 + vc;
    fit.radius = std::sqrt(uc * uc + vc * vc + sz / n);

    double ss = 0.0;
    for (const auto& p : pts) {
        const double d = std::hypot(p[0] - fit.center_x, p[1] - fit.center_y);
        ss += (d - fit.radius) * (d - fit.radius);
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.isotropy = fit.rms_residual / fit.radius;
    return fit;
}

struct RegionMetrics {
    double double_negative_fraction = 0.0;  // double-negative cells / all cells
    double min_re_n = 0.0;
    double argmin_x = 0.0, argmin_y = 0.0;
    complex n_at_reference{0.0};
};

// Scalar summary of a map against a reference point (nearest grid cell).
inline RegionMetrics region_metrics(const FieldMap& map, double rx, double ry) {
    const GridSpec& g = map.grid;
    RegionMetrics rm;
    rm.min_re_n = std::numeric_limits<double>::infinity();

    std::size_t negatives = 0;
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            const GridSample& c = map.at(i, j);
            if (c.error != ErrorKind::None) continue;
            if (c.medium.eps_r.real() < 0.0 && c.medium.mu_r.real() < 0.0)
                ++negatives;
            if (c.medium.n.real() < rm.min_re_n) {
                rm.min_re_n = c.medium.n.real();
                rm.argmin_x = g.x(i);
                rm.argmin_y = g.y(j);
            }
        }
    }
    rm.double_negative_fraction =
        static_cast<double>(negatives) / static_cast<double>(g.cells());

    const double fx = (rx - g.x_min) / (g.x_max - g.x_min) * (g.nx - 1);
    const double fy = (ry - g.y_min) / (g.y_max - g.y_min) * (g.ny - 1);
    const int ri = std::clamp(static_cast<int>(std::lround(fx)), 0, g.nx - 1);
    const int rj = std::clamp(static_cast<int>(std::lround(fy)), 0, g.ny - 1);
    rm.n_at_reference = map.at(ri, rj).medium.n;
    return rm;
}

}  // namespace nri
