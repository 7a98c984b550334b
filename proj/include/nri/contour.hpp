#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nri/grid.hpp"

namespace nri {

// An iso-line of Re{n}. Closed polylines have >= 3 points and do not repeat
// the terminal point.
struct ContourPolyline {
    double level = 0.0;
    std::vector<std::array<double, 2>> points;  // (x, y) in lambda units
    bool closed = false;
};

namespace detail {

// Marching squares over the node-centered grid. Corner convention per cell
// (i, j), counter-clockwise from the lower-left node:
//
//      3 ---- 2        (i,   j+1) -- (i+1, j+1)
//      |      |    =        |            |
//      0 ---- 1        (i,   j  ) -- (i+1, j  )
//
// A node is "inside" when its value is below the level. Each cell edge with
// mixed endpoints gets one interpolated crossing point, keyed by a global
// edge id so adjacent cells share bit-identical points and segments stitch
// exactly. The two ambiguous cases (0101 / 1010) are resolved by the sign of
// the cell-average value. Any cell touching an error-flagged node is skipped
// (treated as lying outside the iso-set).
class MarchingSquares {
  public:
    MarchingSquares(const FieldMap& map, double level)
        : map_(map), grid_(map.grid), level_(level) {}

    std::vector<ContourPolyline> run() {
        for (int i = 0; i + 1 < grid_.nx; ++i)
            for (int j = 0; j + 1 < grid_.ny; ++j) cell(i, j);
        return stitch();
    }

  private:
    // Global edge ids: even = horizontal edge with left node (i, j),
    // odd = vertical edge with bottom node (i, j).
    std::uint64_t h_edge(int i, int j) const {
        return 2 * (static_cast<std::uint64_t>(j) * grid_.nx + i);
    }
    std::uint64_t v_edge(int i, int j) const {
        return 2 * (static_cast<std::uint64_t>(j) * grid_.nx + i) + 1;
    }

    double value(int i, int j) const { return map_.at(i, j).medium.n.real(); }
    bool flagged(int i, int j) const {
        return map_.at(i, j).error != ErrorKind::None;
    }

    std::array<double, 2> interpolate(std::uint64_t edge) {
        const bool vertical = edge & 1;
        const std::uint64_t node = edge >> 1;
        const int i = static_cast<int>(node % grid_.nx);
        const int j = static_cast<int>(node / grid_.nx);
        if (vertical) {
            const double v0 = value(i, j), v1 = value(i, j + 1);
            const double t = (level_ - v0) / (v1 - v0);
            return {grid_.x(i), grid_.y(j) + t * (grid_.y(j + 1) - grid_.y(j))};
        }
        const double v0 = value(i, j), v1 = value(i + 1, j);
        const double t = (level_ - v0) / (v1 - v0);
        return {grid_.x(i) + t * (grid_.x(i + 1) - grid_.x(i)), grid_.y(j)};
    }

    void emit(std::uint64_t a, std::uint64_t b) {
        for (std::uint64_t e : {a, b})
            if (!points_.count(e)) points_.emplace(e, interpolate(e));
        segments_.push_back({a, b});
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }

    void cell(int i, int j) {
        if (flagged(i, j) || flagged(i + 1, j) || flagged(i + 1, j + 1) ||
            flagged(i, j + 1))
            return;
        const double v0 = value(i, j), v1 = value(i + 1, j);
        const double v2 = value(i + 1, j + 1), v3 = value(i, j + 1);
        const int code = (v0 < level_ ? 1 : 0) | (v1 < level_ ? 2 : 0) |
                         (v2 < level_ ? 4 : 0) | (v3 < level_ ? 8 : 0);
        if (code == 0 || code == 15) return;

        const std::uint64_t bottom = h_edge(i, j), top = h_edge(i, j + 1);
        const std::uint64_t left = v_edge(i, j), right = v_edge(i + 1, j);
        switch (code) {
            case 1: case 14: emit(left, bottom); break;
            case 2: case 13: emit(bottom, right); break;
            case 3: case 12: emit(left, right); break;
            case 4: case 11: emit(right, top); break;
            case 6: case 9: emit(bottom, top); break;
            case 7: case 8: emit(left, top); break;
            case 5: case 10: {
                const bool center_inside = (v0 + v1 + v2 + v3) / 4.0 < level_;
                const bool pair_with_code5 = (code == 5) == center_inside;
                if (pair_with_code5) {
                    emit(left, top);
                    emit(bottom, right);
                } else {
                    emit(left, bottom);
                    emit(right, top);
                }
                break;
            }
        }
    }

    std::vector<ContourPolyline> stitch() {
        std::vector<ContourPolyline> out;

        auto unused_neighbor = [&](std::uint64_t node, std::uint64_t prev,
                                   bool& found) -> std::uint64_t {
            found = false;
            for (std::uint64_t nb : adjacency_.at(node)) {
                if (nb != prev && !visited_.count(edge_key(node, nb))) {
                    found = true;
                    return nb;
                }
            }
            return 0;
        };

        for (const auto& seg : segments_) {
            if (visited_.count(edge_key(seg[0], seg[1]))) continue;
            std::vector<std::uint64_t> chain{seg[0], seg[1]};
            visited_.insert(edge_key(seg[0], seg[1]));
            for (int pass = 0; pass < 2; ++pass) {
                while (true) {
                    const std::uint64_t tail = chain.back();
                    const std::uint64_t prev = chain[chain.size() - 2];
                    bool found = false;
                    const std::uint64_t next = unused_neighbor(tail, prev, found);
                    if (!found) break;
                    visited_.insert(edge_key(tail, next));
                    chain.push_back(next);
                }
                std::reverse(chain.begin(), chain.end());
            }
            ContourPolyline poly;
            poly.level = level_;
            poly.closed = chain.size() > 3 && chain.front() == chain.back();
            if (poly.closed) chain.pop_back();
            poly.points.reserve(chain.size());
            for (std::uint64_t e : chain) poly.points.push_back(points_.at(e));
            out.push_back(std::move(poly));
        }
        return out;
    }

    static std::uint64_t edge_key(std::uint64_t a, std::uint64_t b) {
        if (a > b) std::swap(a, b);
        // Edge ids stay far below 2^32 for any realistic grid.
        return (a << 32) | b;
    }

    const FieldMap& map_;
    const GridSpec& grid_;
    double level_;
    std::unordered_map<std::uint64_t, std::array<double, 2>> points_;
    std::vector<std::array<std::uint64_t, 2>> segments_;
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> adjacency_;
    std::unordered_set<std::uint64_t> visited_;
};

}  // namespace detail

// Extracts all iso-lines of Re{n} at the given level. Returns an empty list
// when the level is never crossed.
inline std::vector<ContourPolyline> extract_contours(const FieldMap& map,
                                                     double level) {
    if (map.grid.nx < 2 || map.grid.ny < 2)
        throw ConfigError("grid", "contour extraction needs nx, ny >= 2");
    return detail::MarchingSquares(map, level).run();
}

}  // namespace nri
