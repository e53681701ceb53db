#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace equilab {

// Chart-agnostic plane point. Strong geometric types (DiskPoint,
// HalfPlanePoint) validate their invariants and convert to Vec2 for use with
// the generic quadrature and finite-difference routines.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }

// Discrete measure: points with nonnegative weights. Sampling and grid
// constructions normalize the weights to total mass 1.
struct NodeMeasure {
    std::vector<Vec2> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
    double total_weight() const {
        return std::accumulate(weights.begin(), weights.end(), 0.0);
    }
};

}  // namespace equilab
