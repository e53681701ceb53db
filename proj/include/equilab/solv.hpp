#pragma once

#include <cstdint>
#include <vector>

#include "equilab/hyp.hpp"
#include "equilab/types.hpp"

namespace equilab::solv {

// Element of the 3-dimensional solvable group with multiplication
// (x,q,t)(x',q',t') = (e^t x' + x, e^{-t} q' + q, t + t'). The element (x,q,t)
// is identified with the point (x + e^t i, q) of leaf x half-plane.
struct SolvElement {
    double x = 0.0;
    double q = 0.0;
    double t = 0.0;
};

SolvElement solv_mul(const SolvElement& a, const SolvElement& b);
SolvElement solv_inverse(const SolvElement& a);

// Left action on the leaf: g · z = e^t z + x. An isometry of the half-plane.
hyp::HalfPlanePoint solv_act(const SolvElement& g, const hyp::HalfPlanePoint& z);

// Leafwise flows: Y^t(x+yi) = x + e^t y i (vertical geodesic flow),
// S^s(x+yi) = (x + ys) + yi (horocycle translation). They satisfy
// Y^t ∘ S^s = S^{s e^{-t}} ∘ Y^t.
hyp::HalfPlanePoint flow_Y(double t, const hyp::HalfPlanePoint& z);
hyp::HalfPlanePoint flow_S(double s, const hyp::HalfPlanePoint& z);

// Integer hyperbolic matrix [[a,b],[c,d]] with det 1 and trace > 2, together
// with its leading eigenvalue and a unit-covolume eigenbasis of the (x,q)
// plane. basis1/basis2 span the plane lattice Λ; inv·(x,q) gives lattice
// coordinates.
struct LatticeSpec {
    static LatticeSpec from_matrix(std::int64_t a, std::int64_t b, std::int64_t c,
                                   std::int64_t d);

    std::int64_t a, b, c, d;
    double lambda;
    Vec2 basis1, basis2;               // columns of the eigenbasis matrix E
    double inv11, inv12, inv21, inv22; // E^{-1}, row-major
};

// Point of the compact quotient: torus coordinates in [0,1)² and the circle
// coordinate t mod 1.
struct QuotientPoint {
    Vec2 torus;
    double circle_t;
};

// Reduces (x,q) to lattice coordinates mod Z², applies the monodromy twist
// once per integer step of t, and reduces t mod 1. The twist is staged
// (reduce, twist one step, reduce again) so that no intermediate grows like
// lambda^t.
QuotientPoint quotient_reduce(const SolvElement& g, const LatticeSpec& lat);

// Mass the normalized hyperbolic area of B_rho(e^rho i) assigns to the
// horocyclic band {t1 <= log y <= t2}; the band integrand vanishes outside
// [0, 2 rho] and the total over that range is 1.
double band_mass(double rho, double t1, double t2, double tol = 1e-10);

// Limit density of the band masses as rho -> infinity:
// (2/π)√(e^{-t} - e^{-2t}) for t >= 0, zero for t <= 0. Maximum 1/π at log 2.
double phi_hat(double t);

// Φ(t) = Σ_k Φ̂(t+k), truncated to t + k in [0, K]. Requires K >= 1.
double phi_periodized(double t, int K);

struct ConstancyCheck {
    double phi0;
    double phi_log2;
    double margin;  // phi_log2 - phi0, positive: the limit density is not constant
};

// Evaluates Φ at 0 and log 2 with truncation K (>= 20).
ConstancyCheck check_not_constant(int K);

// Geodesic polar sample (r, θ) about the disk origin mapped to the leaf
// about z_rho = e^rho i, as the group element (x, 0, t) with t = log y.
// t is clamped to the exact support [0, 2 rho].
SolvElement disk_sample_to_halfplane(double rho, double r, double theta);

// Uniform grid of function values on [t_lo, t_hi]. Histograms are
// cell-centered (values are densities on equal cells); sampled curves carry
// node values with t_of(0) = t_lo and t_of(size-1) = t_hi.
struct DensityCurve {
    double t_lo = 0.0;
    double t_hi = 1.0;
    bool cell_centered = true;
    std::vector<double> values;

    double t_of(std::size_t i) const;
};

// Samples B_rho(z_rho) (n >= 1000 draws, deterministic in seed for any
// thread count), pushes each sample to the compact quotient, and histograms
// circle_t into `bins` density cells on [0,1).
DensityCurve mc_pushforward(std::uint64_t seed, double rho, std::size_t n, int bins,
                            const LatticeSpec& lat, int threads = 1);

// Max modulus of the nonzero Fourier coefficients (frequency sup-norm up to
// `modes`) of the empirical distribution of torus points.
double max_fourier_coefficient(const std::vector<Vec2>& pts, int modes);

// Fourier flatness of the torus marginal within the circle_t band
// [band_lo, band_hi): small values certify fiberwise equidistribution.
// Throws "degenerate-input" when no sample lands in the band.
double torus_fiber_test(std::uint64_t seed, double rho, std::size_t n,
                        const LatticeSpec& lat, int modes, double band_lo = 0.2,
                        double band_hi = 0.4, int threads = 1);

}  // namespace equilab::solv
