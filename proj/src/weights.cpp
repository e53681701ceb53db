#include "equilab/weights.hpp"

#include <cmath>
#include <numbers>

#include "equilab/error.hpp"

namespace equilab::weights {

namespace {

constexpr double kPi = std::numbers::pi;

// L(s) = -log tanh s = log coth s, decreasing from +inf to 0. The log1p form
// stays accurate out to s ~ 350 where e^{2s} overflows.
double log_coth(double s) {
    return -std::log1p(-2.0 / (std::exp(2.0 * s) + 1.0));
}

// Common scale for quadrature tolerances: 4π(sinh²ρ + Aρ') is the exact core
// mass plus the annulus mass asymptote, a sound order-of-magnitude anchor at
// every parameter size.
double normalizer_scale(const WeightProfile& p) {
    const double sh = std::sinh(p.rho());
    return 4.0 * kPi * (sh * sh + p.A() * p.rhop());
}

double require_same_annulus(const WeightProfile& a, const WeightProfile& b) {
    if (a.rho() != b.rho() || a.rhop() != b.rhop())
        throw Error::domain("profiles must share the same (R, R') annulus");
    return 0.0;
}

}  // namespace

WeightProfile::WeightProfile(double rho, double rhop, WeightKind kind)
    : rho_(rho), rhop_(rhop), R_(std::tanh(rho)), Rp_(std::tanh(rho + rhop)), kind_(kind) {}

WeightProfile WeightProfile::from_radii(double R, double Rp, WeightKind kind) {
    if (!(0.0 < R) || !(R < Rp) || !(Rp < 1.0))
        throw Error::domain("WeightProfile: need 0 < R < R' < 1");
    const double rho = std::atanh(R);
    const double rhop = std::atanh(Rp) - rho;
    return WeightProfile(rho, rhop, kind);
}

WeightProfile WeightProfile::from_rho(double rho, double rhop, WeightKind kind) {
    if (!(rho > 0.0) || !(rhop > 0.0) || !std::isfinite(rho) || !std::isfinite(rhop))
        throw Error::domain("WeightProfile: need finite rho > 0 and rho' > 0");
    return WeightProfile(rho, rhop, kind);
}

double WeightProfile::log_ratio() const {
    return log_coth(rho_) - log_coth(rho_ + rhop_);
}

double WeightProfile::eval_geodesic(double s) const {
    if (s <= rho_) return 1.0;
    const double ro = rho_ + rhop_;
    if (s >= ro) return 0.0;
    if (kind_ == WeightKind::psi) {
        // (R' - r)/(R' - R) with tanh a - tanh b = sinh(a-b)/(cosh a cosh b).
        return std::sinh(ro - s) * std::cosh(rho_) / (std::sinh(rhop_) * std::cosh(s));
    }
    return (log_coth(s) - log_coth(ro)) / log_ratio();
}

double WeightProfile::eval_radius(double r) const {
    if (!(r >= 0.0)) throw Error::domain("weight evaluation: radius must be >= 0");
    if (r <= R_) return 1.0;
    if (r >= Rp_ || r >= 1.0) return 0.0;
    return eval_geodesic(std::atanh(r));
}

double weight_eval(const WeightProfile& p, const hyp::DiskPoint& z) {
    return p.eval_radius(z.abs());
}

double normalizer(const WeightProfile& p, double tol) {
    if (!(tol > 0.0)) throw Error::domain("normalizer: tol must be positive");
    // ∫_D w v_P = 8π ∫ w(r) r/(1-r²)² dr = 4π ∫ w(tanh s) sinh 2s ds,
    // split exactly at the two interface circles s = ρ, s = ρ + ρ'.
    const double abs_tol = 0.5 * tol * (1.0 + normalizer_scale(p));
    quad::Interval1D core{0.0, p.rho(), false, abs_tol};
    const double core_mass =
        quad::integrate_1d([](double s) { return std::sinh(2.0 * s); }, core);
    quad::Interval1D annulus{p.rho(), p.rho_outer(), false, abs_tol};
    const double annulus_mass = quad::integrate_1d(
        [&p](double s) { return p.eval_geodesic(s) * std::sinh(2.0 * s); }, annulus);
    return 4.0 * kPi * (core_mass + annulus_mass);
}

NodeMeasure make_measure(const WeightProfile& p, const quad::PolarGrid& grid) {
    if (!(grid.r_max < 1.0))
        throw Error::domain("make_measure: grid must satisfy r_max < 1");
    const double s_max = std::atanh(grid.r_max);
    const double ds = s_max / grid.n_r;
    const double dtheta = 2.0 * kPi / grid.n_theta;
    if (s_max < p.rho_outer())
        throw Error::resolution("make_measure: grid does not reach the outer circle R'");
    int inner_cells = 0, annulus_cells = 0;
    for (int i = 0; i < grid.n_r; ++i) {
        const double sc = (i + 0.5) * ds;
        if (sc < p.rho())
            ++inner_cells;
        else if (sc < p.rho_outer())
            ++annulus_cells;
    }
    if (inner_cells < 8 || annulus_cells < 8)
        throw Error::resolution("make_measure: need at least 8 radial cells in each piece");

    NodeMeasure mu;
    mu.points.reserve(static_cast<std::size_t>(grid.n_r) * grid.n_theta);
    mu.weights.reserve(mu.points.capacity());
    double total = 0.0;
    for (int i = 0; i < grid.n_r; ++i) {
        const double s0 = i * ds, s1 = (i + 1) * ds;
        const double sc = 0.5 * (s0 + s1);
        const double w = p.eval_geodesic(sc);
        if (w == 0.0) continue;
        // v_P mass of the radial shell: Δθ (cosh 2s₁ - cosh 2s₀).
        const double shell = std::cosh(2.0 * s1) - std::cosh(2.0 * s0);
        const double rc = std::tanh(sc);
        for (int j = 0; j < grid.n_theta; ++j) {
            const double theta = (j + 0.5) * dtheta;
            const double mass = w * dtheta * shell;
            mu.points.push_back(Vec2{rc * std::cos(theta), rc * std::sin(theta)});
            mu.weights.push_back(mass);
            total += mass;
        }
    }
    if (!(total > 0.0)) throw Error::degenerate("make_measure: zero total mass");
    for (double& w : mu.weights) w /= total;
    return mu;
}

double measure_gap(const WeightProfile& p_psi, const WeightProfile& p_phi, double tol) {
    require_same_annulus(p_psi, p_phi);
    const double n_psi = normalizer(p_psi, 0.1 * tol);
    const double n_phi = normalizer(p_phi, 0.1 * tol);
    const double abs_tol = tol;  // the gap itself lives in [0, 2]
    auto integrand = [&](double s) {
        const double d =
            p_psi.eval_geodesic(s) / n_psi - p_phi.eval_geodesic(s) / n_phi;
        return std::abs(d) * std::sinh(2.0 * s);
    };
    quad::Interval1D core{0.0, p_psi.rho(), false, 0.5 * abs_tol / (4.0 * kPi)};
    quad::Interval1D annulus{p_psi.rho(), p_psi.rho_outer(), false,
                             0.5 * abs_tol / (4.0 * kPi)};
    return 4.0 * kPi *
           (quad::integrate_1d(integrand, core) + quad::integrate_1d(integrand, annulus));
}

double measure_gap_bound(const WeightProfile& p_psi, const WeightProfile& p_phi,
                         double tol) {
    require_same_annulus(p_psi, p_phi);
    const double n_psi = normalizer(p_psi, tol);
    const double n_phi = normalizer(p_phi, tol);
    return 2.0 * (n_psi - n_phi) / n_psi;
}

double weight_difference_integral(const WeightProfile& p_psi, const WeightProfile& p_phi,
                                  double tol) {
    require_same_annulus(p_psi, p_phi);
    if (p_psi.kind() != WeightKind::psi || p_phi.kind() != WeightKind::phi)
        throw Error::domain("weight_difference_integral: expects (psi, phi) profiles");
    const double abs_tol = tol * (1.0 + normalizer_scale(p_psi));
    auto integrand = [&](double s) {
        return (p_psi.eval_geodesic(s) - p_phi.eval_geodesic(s)) * std::sinh(2.0 * s);
    };
    quad::Interval1D annulus{p_psi.rho(), p_psi.rho_outer(), false, abs_tol};
    return 4.0 * kPi * quad::integrate_1d(integrand, annulus);
}

}  // namespace equilab::weights
