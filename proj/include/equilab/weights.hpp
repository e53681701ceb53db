#pragma once

#include "equilab/hyp.hpp"
#include "equilab/quad.hpp"
#include "equilab/types.hpp"

namespace equilab::weights {

enum class WeightKind { psi, phi };

// Radial weight on the unit disk, cut out by two circles |z| = R < |z| = R'
// parameterized by rho = artanh R, rhop = artanh R' - artanh R:
//
//   psi: 1 on |z| <= R, linear ramp (R' - |z|)/(R' - R) on the annulus, 0 outside;
//   phi: 1 on |z| <= R, A log(R'/|z|) with A = 1/log(R'/R) on the annulus, 0 outside.
//
// (rho, rhop) are the authoritative parameters. For rho + rhop ≳ 18.8 the
// derived double R' rounds to exactly 1, so every radial formula here is
// evaluated in the geodesic coordinate s = artanh r, where both profiles
// have exact cancellation-free forms.
class WeightProfile {
public:
    static WeightProfile from_radii(double R, double Rp, WeightKind kind);
    static WeightProfile from_rho(double rho, double rhop, WeightKind kind);

    WeightKind kind() const { return kind_; }
    double R() const { return R_; }
    double Rp() const { return Rp_; }
    double rho() const { return rho_; }
    double rhop() const { return rhop_; }
    double rho_outer() const { return rho_ + rhop_; }

    // log(R'/R), evaluated as log coth(rho) - log coth(rho + rhop).
    double log_ratio() const;
    // The annulus normalizing constant A = 1/log(R'/R).
    double A() const { return 1.0 / log_ratio(); }

    // Profile value as a function of the geodesic radius s = artanh |z|.
    double eval_geodesic(double s) const;
    double eval_radius(double r) const;

private:
    WeightProfile(double rho, double rhop, WeightKind kind);
    double rho_, rhop_;
    double R_, Rp_;
    WeightKind kind_;
};

double weight_eval(const WeightProfile& p, const hyp::DiskPoint& z);

// ∫_D weight · v_P, v_P = 4r/(1-r²)² dr dθ. tol is relative to the value's
// natural scale 4π(sinh²ρ + Aρ'); values reach ~1e12 at large parameters.
double normalizer(const WeightProfile& p, double tol = 1e-10);

// Discrete proxy: nodes at polar cell centers, weight_eval · (cell v_P mass),
// normalized to total mass 1. Grid must resolve both interface circles
// (at least 8 radial cells inside each profile piece) and reach R'.
NodeMeasure make_measure(const WeightProfile& p, const quad::PolarGrid& grid);

// L¹ distance between the two normalized measures:
// ∫ |psi/∫psi - phi/∫phi| v_P. Profiles must share (R, R').
double measure_gap(const WeightProfile& p_psi, const WeightProfile& p_phi,
                   double tol = 1e-10);

// Upper bound 2(∫psi - ∫phi)/∫psi for measure_gap, from psi >= phi >= 0.
double measure_gap_bound(const WeightProfile& p_psi, const WeightProfile& p_phi,
                         double tol = 1e-10);

// ∫ (psi - phi) v_P, quadrature of the pointwise difference (psi >= phi).
double weight_difference_integral(const WeightProfile& p_psi, const WeightProfile& p_phi,
                                  double tol = 1e-10);

}  // namespace equilab::weights
