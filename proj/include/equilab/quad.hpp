#pragma once

#include <cstdint>
#include <functional>

#include "equilab/types.hpp"

namespace equilab::quad {

inline constexpr double kDefaultTol1D = 1e-10;
inline constexpr double kDefaultTol2D = 1e-8;

// Integration domain for integrate_1d. With half_infinite set the domain is
// [lo, +inf) and hi is ignored; the improper tail is handled internally by
// the substitution u = e^{(lo - t)/2}.
struct Interval1D {
    double lo = 0.0;
    double hi = 1.0;
    bool half_infinite = false;
    double tol = kDefaultTol1D;
};

// Polar cell grid on the disk. Radial nodes are placed uniformly in the
// geodesic coordinate s = artanh r so that grids stay usable when the
// annuli of interest sit within a few ulp of |z| = 1.
struct PolarGrid {
    PolarGrid(double r_max, int n_r, int n_theta);
    double r_max;
    int n_r;
    int n_theta;
};

enum class RadialWeight { euclidean, poincare };

// Adaptive Simpson with interval halving; the absolute tolerance budget
// (dom.tol) is allocated across subintervals worst-error-first. Non-finite
// samples are treated as 0 so integrable endpoint singularities refine
// instead of poisoning the sum. Throws QuadratureFailure when the budget
// cannot be met.
double integrate_1d(const std::function<double(double)>& f, const Interval1D& dom);

// ∫ over the disk of radius R of f against r dr dθ (euclidean) or
// 4r/(1-r²)² dr dθ (poincare). poincare requires R < 1.
double integrate_polar_disk(const std::function<double(Vec2)>& f, double R,
                            RadialWeight weight, double tol = kDefaultTol2D);

// Same against the annulus r0 <= |z| <= r1.
double integrate_polar_annulus(const std::function<double(Vec2)>& f, double r0, double r1,
                               RadialWeight weight, double tol = kDefaultTol2D);

// ∮_{|z|=R} f dσ against Euclidean arc length, R > 0.
double boundary_integral(const std::function<double(Vec2)>& f, double R,
                         double tol = kDefaultTol1D);

// Five-point stencil Laplacian (f(x±h,y) + f(x,y±h) - 4f)/h². The stencil
// must stay inside f's domain; a non-finite sample raises "domain-error".
double laplacian_fd(const std::function<double(Vec2)>& f, Vec2 z, double h);

// Raw geodesic polar draws (r, θ) about the disk origin: radius by inverse
// CDF r = arcosh(1 + U(cosh ρ - 1)), angle uniform. Deterministic in
// (seed, n) for any thread count (chunked streams, see rng.hpp).
std::vector<Vec2> sample_geodesic_polar(std::uint64_t seed, double rho, std::size_t n,
                                        int threads = 1);

// The same draws as points of the unit-disk model (|w| = tanh(r/2)),
// each carrying weight 1/n.
NodeMeasure sample_hyperbolic_disk(std::uint64_t seed, double rho, std::size_t n,
                                   int threads = 1);

}  // namespace equilab::quad
