#include <doctest.h>

#include <equilab/weights.hpp>
#include <equilab/error.hpp>
#include <equilab/hyp.hpp>
#include <equilab/quad.hpp>

#include <cmath>
#include <numbers>

using namespace equilab;
using namespace equilab::weights;

namespace {
constexpr double kPi = std::numbers::pi;

// Hand-integrated normalizers, derived once by parts and frozen as oracles:
//   N_phi = 4 pi A log(cosh(rho+rho') / cosh(rho))
//   N_psi = 4 pi (rho' cosh(rho) cosh(rho+rho') / sinh(rho') - 1)
double nphi_closed(double rho, double rhop, double A) {
    return 4.0 * kPi * A * std::log(std::cosh(rho + rhop) / std::cosh(rho));
}

double npsi_closed(double rho, double rhop) {
    return 4.0 * kPi *
           (rhop * std::cosh(rho) * std::cosh(rho + rhop) / std::sinh(rhop) - 1.0);
}
}  // namespace

TEST_CASE("profile construction and parameter roundtrips") {
    const auto p = WeightProfile::from_radii(0.5, 0.8, WeightKind::phi);
    CHECK(std::fabs(p.R() - 0.5) <= 1e-15);
    CHECK(std::fabs(p.Rp() - 0.8) <= 1e-15);
    CHECK(std::fabs(p.rho() - std::atanh(0.5)) <= 1e-15);
    CHECK(std::fabs(p.rho_outer() - std::atanh(0.8)) <= 1e-14);
    CHECK(p.kind() == WeightKind::phi);

    const auto q = WeightProfile::from_rho(2.0, 1.0, WeightKind::psi);
    CHECK(q.R() == std::tanh(2.0));
    CHECK(q.Rp() == std::tanh(3.0));

    CHECK_THROWS_AS(WeightProfile::from_radii(0.0, 0.8, WeightKind::phi), Error);
    CHECK_THROWS_AS(WeightProfile::from_radii(0.5, 0.5, WeightKind::phi), Error);
    CHECK_THROWS_AS(WeightProfile::from_radii(0.5, 1.0, WeightKind::phi), Error);
    CHECK_THROWS_AS(WeightProfile::from_rho(-1.0, 2.0, WeightKind::phi), Error);
    CHECK_THROWS_AS(WeightProfile::from_rho(2.0, 0.0, WeightKind::phi), Error);
}

TEST_CASE("profile values on the annulus") {
    const auto phi = WeightProfile::from_radii(0.5, 0.8, WeightKind::phi);
    const auto psi = WeightProfile::from_radii(0.5, 0.8, WeightKind::psi);

    // phi(0.65) = log(0.8/0.65)/log(0.8/0.5), psi(0.65) = 0.15/0.3.
    CHECK(std::fabs(phi.eval_radius(0.65) - 0.44178247115126584) <= 1e-13);
    CHECK(std::fabs(psi.eval_radius(0.65) - 0.5) <= 1e-12);

    for (const auto* p : {&phi, &psi}) {
        CHECK(p->eval_radius(0.3) == 1.0);
        CHECK(p->eval_radius(0.5) == 1.0);
        CHECK(p->eval_radius(0.9) == 0.0);
        CHECK(p->eval_radius(0.8) == 0.0);
        // Continuity at the interface circles.
        CHECK(std::fabs(p->eval_radius(0.5 + 1e-10) - 1.0) <= 1e-8);
        CHECK(p->eval_radius(0.8 - 1e-10) <= 1e-8);
        // Monotone nonincreasing in radius.
        double prev = 1.0;
        for (int i = 1; i <= 40; ++i) {
            const double v = p->eval_radius(0.02 * i);
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }

    // Geodesic and Euclidean radial parameterizations agree.
    for (double r : {0.2, 0.55, 0.72, 0.79}) {
        CHECK(std::fabs(phi.eval_geodesic(std::atanh(r)) - phi.eval_radius(r)) <= 1e-13);
        CHECK(std::fabs(psi.eval_geodesic(std::atanh(r)) - psi.eval_radius(r)) <= 1e-13);
    }

    // psi dominates phi on the shared annulus.
    for (double r = 0.5; r < 0.8; r += 0.01)
        CHECK(psi.eval_radius(r) >= phi.eval_radius(r) - 1e-15);
}

TEST_CASE("profiles survive radii that round to 1") {
    // At rho + rho' = 20 the outer Euclidean radius is 1 to double precision;
    // the geodesic-coordinate evaluation must stay exact anyway.
    const auto p = WeightProfile::from_rho(12.0, 8.0, WeightKind::phi);
    CHECK(p.Rp() == 1.0);
    CHECK(p.A() > 0.0);
    CHECK(std::isfinite(p.A()));
    double prev = 1.0;
    for (double s = 12.1; s < 20.0; s += 0.5) {
        const double v = p.eval_geodesic(s);
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(p.eval_geodesic(20.5) == 0.0);
    CHECK(weight_eval(p, hyp::DiskPoint(0.3, 0.4)) == 1.0);
}

TEST_CASE("normalizers match the hand-integrated closed forms") {
    const double cases[][2] = {{1.0, 1.0}, {4.0, 2.0}, {10.0, 8.0}, {12.0, 4.0}};
    for (const auto& c : cases) {
        const double rho = c[0], rhop = c[1];
        const auto phi = WeightProfile::from_rho(rho, rhop, WeightKind::phi);
        const auto psi = WeightProfile::from_rho(rho, rhop, WeightKind::psi);
        const double nphi = normalizer(phi, 1e-12);
        const double npsi = normalizer(psi, 1e-12);
        const double nphi_cf = nphi_closed(rho, rhop, phi.A());
        const double npsi_cf = npsi_closed(rho, rhop);
        CHECK(std::fabs(nphi - nphi_cf) <= 1e-10 * nphi_cf);
        CHECK(std::fabs(npsi - npsi_cf) <= 1e-10 * npsi_cf);
        CHECK(npsi > nphi);
    }
}

TEST_CASE("difference integral is the difference of normalizers") {
    const auto phi = WeightProfile::from_rho(4.0, 2.0, WeightKind::phi);
    const auto psi = WeightProfile::from_rho(4.0, 2.0, WeightKind::psi);
    const double d = weight_difference_integral(psi, phi, 1e-12);
    const double cf = npsi_closed(4.0, 2.0) - nphi_closed(4.0, 2.0, phi.A());
    CHECK(std::fabs(d - cf) <= 1e-10 * std::fabs(cf));
    CHECK(d > 0.0);

    // Arguments must be (psi, phi) over the same annulus.
    CHECK_THROWS_AS((void)weight_difference_integral(phi, psi, 1e-10), Error);
    const auto other = WeightProfile::from_rho(4.0, 3.0, WeightKind::phi);
    CHECK_THROWS_AS((void)weight_difference_integral(psi, other, 1e-10), Error);
}

TEST_CASE("node measures reproduce the core ball mass") {
    const auto p = WeightProfile::from_rho(2.0, 1.0, WeightKind::phi);
    const auto mu = make_measure(p, quad::PolarGrid(std::tanh(3.2), 3200, 16));
    CHECK(std::fabs(mu.total_weight() - 1.0) <= 1e-12);
    CHECK(mu.size() > 0);

    double inside = 0.0;
    const double Rcut = std::tanh(2.0);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        CHECK(mu.weights[i] >= 0.0);
        if (std::hypot(mu.points[i].x, mu.points[i].y) <= Rcut) inside += mu.weights[i];
    }
    // Weight 1 inside |z| <= R, so the mass there is area(B_{2 rho}) over the
    // normalizer; the annulus midpoint rule contributes the 1e-6 slack.
    const double oracle = hyp::disk_area(4.0) / normalizer(p, 1e-12);
    CHECK(std::fabs(inside - oracle) <= 1e-6);

    for (std::size_t i = 0; i < mu.size(); ++i)
        CHECK(std::hypot(mu.points[i].x, mu.points[i].y) < p.Rp());
}

TEST_CASE("node measures validate the grid") {
    const auto p = WeightProfile::from_rho(2.0, 1.0, WeightKind::phi);
    // Grid stopping short of the outer circle.
    CHECK_THROWS_AS((void)make_measure(p, quad::PolarGrid(std::tanh(2.5), 200, 16)), Error);
    // Too few radial cells in the annulus piece.
    CHECK_THROWS_AS((void)make_measure(p, quad::PolarGrid(std::tanh(3.2), 16, 16)), Error);
    // r_max on or past the ideal boundary never reaches a geodesic radius.
    CHECK_THROWS_AS((void)make_measure(p, quad::PolarGrid(1.0, 200, 16)), Error);
}

TEST_CASE("measure gap and its bound") {
    const auto psi42 = WeightProfile::from_rho(4.0, 2.0, WeightKind::psi);
    const auto phi42 = WeightProfile::from_rho(4.0, 2.0, WeightKind::phi);
    CHECK(measure_gap(psi42, psi42, 1e-10) == 0.0);

    const double gap42 = measure_gap(psi42, phi42, 1e-10);
    const double bound42 = measure_gap_bound(psi42, phi42, 1e-10);
    CHECK(gap42 > 0.0);
    CHECK(gap42 <= bound42 + 1e-9);
    CHECK(std::fabs(gap42 - 1.1520489324606135e-4) <= 1e-9);

    // The bound is 2(N_psi - N_phi)/N_psi.
    const double wd = weight_difference_integral(psi42, phi42, 1e-11);
    CHECK(std::fabs(bound42 - 2.0 * wd / normalizer(psi42, 1e-11)) <= 1e-10 * bound42);

    // Larger parameters shrink the gap.
    const auto psi84 = WeightProfile::from_rho(8.0, 4.0, WeightKind::psi);
    const auto phi84 = WeightProfile::from_rho(8.0, 4.0, WeightKind::phi);
    const double gap84 = measure_gap(psi84, phi84, 1e-10);
    CHECK(gap84 < gap42);
    CHECK(gap84 <= measure_gap_bound(psi84, phi84, 1e-10) + 1e-12);

    // Distinct annuli are rejected.
    const auto phi43 = WeightProfile::from_rho(4.0, 3.0, WeightKind::phi);
    CHECK_THROWS_AS((void)measure_gap(psi42, phi43, 1e-10), Error);
}

TEST_CASE("normalizer asymptotics in the outer radius") {
    // N/(4 pi A rho') approaches 1, and psi/phi normalizers approach each
    // other monotonically as rho grows with rho' fixed.
    double prev = 1e300;
    for (double rho : {6.0, 9.0, 12.0}) {
        const auto psi = WeightProfile::from_rho(rho, 4.0, WeightKind::psi);
        const auto phi = WeightProfile::from_rho(rho, 4.0, WeightKind::phi);
        const double ratio = normalizer(psi, 1e-12) / normalizer(phi, 1e-12);
        CHECK(ratio >= 1.0);
        CHECK(std::fabs(ratio - 1.0) < std::fabs(prev - 1.0));
        prev = ratio;
        const double scaled = normalizer(phi, 1e-10) / (4.0 * kPi * phi.A() * 4.0);
        CHECK(scaled >= 0.9);
        CHECK(scaled <= 1.1);
    }
    CHECK(std::fabs(prev - 1.0) <= 1e-9);
}
