#pragma once

#include <cmath>
#include <numbers>

#include "equilab/error.hpp"
#include "equilab/types.hpp"

namespace equilab::hyp {

// Upper half-plane with metric (dx² + dy²)/y², area form y^{-2} dx dy.
struct HalfPlanePoint {
    HalfPlanePoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
            throw Error::domain("HalfPlanePoint: need finite x and y > 0");
    }
    double x;
    double y;
    Vec2 vec() const { return {x, y}; }
};

// Unit disk model; curvature -1 metric 4|dz|²/(1-|z|²)², area form
// 4r/(1-r²)² dr dθ.
struct DiskPoint {
    DiskPoint(double u_, double v_) : u(u_), v(v_) {
        if (!(u * u + v * v < 1.0))
            throw Error::domain("DiskPoint: |z| must be < 1");
    }
    double u;
    double v;
    double abs() const { return std::hypot(u, v); }
    Vec2 vec() const { return {u, v}; }
};

// Unit tangent frame as an SL(2,R) matrix (row-major). Stored un-normalized;
// equality of frames is up to global sign.
struct UnitTangent {
    UnitTangent(double a, double b, double c, double d)
        : m11(a), m12(b), m21(c), m22(d) {
        const double scale = 1.0 + a * a + b * b + c * c + d * d;
        if (std::abs(det() - 1.0) > 1e-12 * scale)
            throw Error::domain("UnitTangent: determinant must be 1");
    }
    double m11, m12, m21, m22;
    double det() const { return m11 * m22 - m12 * m21; }
    static UnitTangent identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline UnitTangent mul(const UnitTangent& a, const UnitTangent& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

inline bool equal_up_to_sign(const UnitTangent& a, const UnitTangent& b, double tol) {
    auto close = [tol](const UnitTangent& p, const UnitTangent& q, double s) {
        return std::abs(p.m11 - s * q.m11) <= tol && std::abs(p.m12 - s * q.m12) <= tol &&
               std::abs(p.m21 - s * q.m21) <= tol && std::abs(p.m22 - s * q.m22) <= tol;
    };
    return close(a, b, 1.0) || close(a, b, -1.0);
}

// d(z1, z2) = arcosh(1 + ((x1-x2)² + (y1-y2)²)/(2 y1 y2)), evaluated through
// asinh to keep full precision for nearby points.
inline double hyp_dist(const HalfPlanePoint& z1, const HalfPlanePoint& z2) {
    const double dx = z1.x - z2.x;
    const double dy = z1.y - z2.y;
    const double q = (dx * dx + dy * dy) / (4.0 * z1.y * z2.y);
    return 2.0 * std::asinh(std::sqrt(q));
}

// Disk-model distance (curvature -1): d(a, b) = 2 artanh |(a-b)/(1 - conj(a) b)|.
inline double disk_dist(const DiskPoint& a, const DiskPoint& b) {
    const double nx = a.u - b.u, ny = a.v - b.v;
    const double dx = 1.0 - (a.u * b.u + a.v * b.v);
    const double dy = a.u * b.v - a.v * b.u;
    const double t = std::hypot(nx, ny) / std::hypot(dx, dy);
    return 2.0 * std::atanh(t);
}

// Radial profile parameterization used by the weight module: ρ and R are
// paired by ρ = ½ log((1+R)/(1-R)), i.e. R = tanh ρ. Distinct from the
// curvature -1 geodesic ball radius map r ↦ tanh(r/2) below.
inline double disk_radius_to_euclid(double rho) {
    if (!(rho >= 0.0)) throw Error::domain("disk_radius_to_euclid: rho must be >= 0");
    return std::tanh(rho);
}

inline double euclid_to_disk_radius(double R) {
    if (!(R >= 0.0) || !(R < 1.0))
        throw Error::domain("euclid_to_disk_radius: need 0 <= R < 1");
    return std::atanh(R);
}

// Euclidean radius of the geodesic ball of radius rho about the disk origin.
inline double geodesic_ball_euclid_radius(double rho) {
    if (!(rho >= 0.0)) throw Error::domain("geodesic_ball_euclid_radius: rho must be >= 0");
    return std::tanh(0.5 * rho);
}

// Hyperbolic area of the geodesic ball of radius rho: π(e^ρ + e^{-ρ} - 2).
inline double disk_area(double rho) {
    if (!(rho >= 0.0)) throw Error::domain("disk_area: rho must be >= 0");
    const double s = std::sinh(0.5 * rho);
    return 4.0 * std::numbers::pi * s * s;
}

// Cayley map z ↦ (z - i)/(z + i), half-plane to disk, i ↦ 0.
inline DiskPoint cayley(const HalfPlanePoint& z) {
    const double denom = z.x * z.x + (z.y + 1.0) * (z.y + 1.0);
    return DiskPoint((z.x * z.x + z.y * z.y - 1.0) / denom, -2.0 * z.x / denom);
}

// Inverse Cayley w ↦ i(1 + w)/(1 - w).
inline HalfPlanePoint cayley_inverse(const DiskPoint& w) {
    const double denom = (1.0 - w.u) * (1.0 - w.u) + w.v * w.v;
    return HalfPlanePoint(-2.0 * w.v / denom, (1.0 - w.u * w.u - w.v * w.v) / denom);
}

// Boundary of the hyperbolic disk B_ρ(z_ρ), z_ρ = e^ρ i: the Euclidean
// circle x² + (y - (R+1)/2)² = ((R-1)/2)² with R = e^{2ρ}.
struct BoundaryCircle {
    double center_y;
    double radius;
};

inline BoundaryCircle disk_boundary_circle(double rho) {
    if (!(rho >= 0.0)) throw Error::domain("disk_boundary_circle: rho must be >= 0");
    const double R = std::exp(2.0 * rho);
    return {0.5 * (R + 1.0), 0.5 * (R - 1.0)};
}

// Frame flows by right multiplication: geodesic g^t = diag(e^{t/2}, e^{-t/2}),
// stable horocycle h^s lower-unipotent, so that g^t h^s g^{-t} = h^{s e^{-t}}
// holds as a literal matrix identity.
inline UnitTangent geodesic_flow(double t, const UnitTangent& u) {
    const double e = std::exp(0.5 * t);
    return mul(u, UnitTangent(e, 0.0, 0.0, 1.0 / e));
}

inline UnitTangent horocycle_flow(double s, const UnitTangent& u) {
    return mul(u, UnitTangent(1.0, 0.0, s, 1.0));
}

}  // namespace equilab::hyp
