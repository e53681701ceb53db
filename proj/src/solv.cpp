#include "equilab/solv.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "equilab/error.hpp"
#include "equilab/quad.hpp"

namespace equilab::solv {

namespace {

// Fractional part in [0, 1). floor can produce f == 1.0 when v is a tiny
// negative number, so clamp that case back to 0.
double frac01(double v) {
    double f = v - std::floor(v);
    if (f >= 1.0) f = 0.0;
    return f;
}

}  // namespace

SolvElement solv_mul(const SolvElement& a, const SolvElement& b) {
    const double et = std::exp(a.t);
    return {et * b.x + a.x, b.q / et + a.q, a.t + b.t};
}

SolvElement solv_inverse(const SolvElement& a) {
    const double et = std::exp(a.t);
    return {-a.x / et, -a.q * et, -a.t};
}

hyp::HalfPlanePoint solv_act(const SolvElement& g, const hyp::HalfPlanePoint& z) {
    const double et = std::exp(g.t);
    return hyp::HalfPlanePoint(et * z.x + g.x, et * z.y);
}

hyp::HalfPlanePoint flow_Y(double t, const hyp::HalfPlanePoint& z) {
    return hyp::HalfPlanePoint(z.x, std::exp(t) * z.y);
}

hyp::HalfPlanePoint flow_S(double s, const hyp::HalfPlanePoint& z) {
    return hyp::HalfPlanePoint(z.x + z.y * s, z.y);
}

LatticeSpec LatticeSpec::from_matrix(std::int64_t a, std::int64_t b, std::int64_t c,
                                     std::int64_t d) {
    const std::int64_t limit = std::int64_t{1} << 30;
    if (std::llabs(a) >= limit || std::llabs(b) >= limit || std::llabs(c) >= limit ||
        std::llabs(d) >= limit) {
        throw Error::lattice("from_matrix: entries out of range");
    }
    if (a * d - b * c != 1) {
        throw Error::lattice("from_matrix: determinant must be 1");
    }
    const std::int64_t trace = a + d;
    if (trace <= 2) {
        throw Error::lattice("from_matrix: trace must exceed 2 (hyperbolic matrix)");
    }

    const double tr = static_cast<double>(trace);
    const double sd = std::sqrt(tr * tr - 4.0);
    const double lambda = 0.5 * (tr + sd);

    // Eigenvectors of [[a,b],[c,d]] for lambda and 1/lambda, picking the row
    // with the larger off-diagonal entry as pivot. The second component uses
    // the conjugate form when the direct difference would cancel.
    const double ad = static_cast<double>(a), bd = static_cast<double>(b);
    const double cd = static_cast<double>(c), dd = static_cast<double>(d);
    Vec2 v1, v2;
    if (std::llabs(b) >= std::llabs(c)) {
        const double diff = dd - ad;
        const double lam_m_a = diff >= 0.0 ? 0.5 * (diff + sd) : 2.0 * bd * cd / (sd - diff);
        const double mu_m_a = diff <= 0.0 ? 0.5 * (diff - sd) : -2.0 * bd * cd / (diff + sd);
        v1 = Vec2{bd, lam_m_a};
        v2 = Vec2{bd, mu_m_a};
    } else {
        const double diff = ad - dd;
        const double lam_m_d = diff >= 0.0 ? 0.5 * (diff + sd) : 2.0 * bd * cd / (sd - diff);
        const double mu_m_d = diff <= 0.0 ? 0.5 * (diff - sd) : -2.0 * bd * cd / (diff + sd);
        v1 = Vec2{lam_m_d, cd};
        v2 = Vec2{mu_m_d, cd};
    }

    const double det_e = v1.x * v2.y - v1.y * v2.x;
    if (!(std::fabs(det_e) > 1e-12)) {
        throw Error::lattice("from_matrix: degenerate eigenbasis");
    }

    // Lattice basis B = E^{-1} rescaled to |det B| = 1; in these plane
    // coordinates the matrix acts as diag(lambda, 1/lambda} and B^{-1}
    // recovers integer lattice coordinates.
    const double s = std::sqrt(std::fabs(det_e));
    Vec2 b1{v2.y / det_e * s, -v1.y / det_e * s};
    Vec2 b2{-v2.x / det_e * s, v1.x / det_e * s};
    const double det_b = b1.x * b2.y - b1.y * b2.x;
    if (!(std::fabs(det_b) > 0.5)) {
        throw Error::lattice("from_matrix: degenerate lattice basis");
    }

    LatticeSpec spec;
    spec.a = a;
    spec.b = b;
    spec.c = c;
    spec.d = d;
    spec.lambda = lambda;
    spec.basis1 = b1;
    spec.basis2 = b2;
    spec.inv11 = b2.y / det_b;
    spec.inv12 = -b2.x / det_b;
    spec.inv21 = -b1.y / det_b;
    spec.inv22 = b1.x / det_b;
    return spec;
}

QuotientPoint quotient_reduce(const SolvElement& g, const LatticeSpec& lat) {
    const double det_b =
        lat.basis1.x * lat.basis2.y - lat.basis1.y * lat.basis2.x;
    if (!(std::fabs(std::fabs(det_b) - 1.0) < 1e-6)) {
        throw Error::lattice("quotient_reduce: lattice basis is not unit covolume");
    }
    if (!(std::isfinite(g.x) && std::isfinite(g.q) && std::isfinite(g.t)) ||
        std::fabs(g.t) >= 1e9) {
        throw Error::domain("quotient_reduce: element out of range");
    }

    double k_real = std::floor(g.t);
    double tau = g.t - k_real;
    if (tau >= 1.0) {
        tau = 0.0;
        k_real += 1.0;
    }
    const long long k = static_cast<long long>(k_real);

    // Lattice coordinates of the plane part, reduced mod Z^2 before and after
    // every integer twist so intermediates never grow like lambda^k.
    double c1 = frac01(lat.inv11 * g.x + lat.inv12 * g.q);
    double c2 = frac01(lat.inv21 * g.x + lat.inv22 * g.q);
    const double ad = static_cast<double>(lat.a), bd = static_cast<double>(lat.b);
    const double cd = static_cast<double>(lat.c), dd = static_cast<double>(lat.d);
    if (k >= 0) {
        for (long long i = 0; i < k; ++i) {
            const double n1 = ad * c1 + bd * c2;
            const double n2 = cd * c1 + dd * c2;
            c1 = frac01(n1);
            c2 = frac01(n2);
        }
    } else {
        for (long long i = 0; i < -k; ++i) {
            const double n1 = dd * c1 - bd * c2;
            const double n2 = -cd * c1 + ad * c2;
            c1 = frac01(n1);
            c2 = frac01(n2);
        }
    }

    return {Vec2{c1, c2}, tau};
}

double band_mass(double rho, double t1, double t2, double tol) {
    if (!(std::isfinite(rho) && rho > 0.0)) {
        throw Error::domain("band_mass: rho must be positive and finite");
    }
    if (std::isnan(t1) || std::isnan(t2)) {
        throw Error::domain("band_mass: band endpoints must not be NaN");
    }
    if (!(tol > 0.0)) {
        throw Error::domain("band_mass: tolerance must be positive");
    }
    const double lo = std::max(t1, 0.0);
    const double hi = std::min(t2, 2.0 * rho);
    if (!(lo < hi)) return 0.0;

    // Unnormalized band density sqrt((1-e^{-t})(e^{2 rho - t}-1)); both
    // factors are nonnegative on [0, 2 rho], the product is clamped against
    // rounding at the endpoints.
    auto f = [rho](double t) {
        const double r = (-std::expm1(-t)) * std::expm1(2.0 * rho - t);
        return std::sqrt(std::max(r, 0.0));
    };
    const double norm =
        0.5 * std::numbers::pi * (std::exp(rho) + std::exp(-rho) - 2.0);
    quad::Interval1D dom{lo, hi, false, tol * norm};
    return quad::integrate_1d(f, dom) / norm;
}

double phi_hat(double t) {
    if (std::isnan(t)) throw Error::domain("phi_hat: t must not be NaN");
    if (!(t > 0.0)) return 0.0;
    const double em = -std::expm1(-t);  // 1 - e^{-t}
    return (2.0 / std::numbers::pi) * std::sqrt(std::exp(-t) * em);
}

double phi_periodized(double t, int K) {
    if (K < 1) throw Error::domain("phi_periodized: K must be at least 1");
    if (!std::isfinite(t)) throw Error::domain("phi_periodized: t must be finite");
    const long long k_hi = static_cast<long long>(std::floor(static_cast<double>(K) - t));
    const long long k_lo = static_cast<long long>(std::ceil(-t));
    // Descending k sums the decaying tail first.
    double sum = 0.0;
    for (long long kk = k_hi; kk >= k_lo; --kk) {
        sum += phi_hat(t + static_cast<double>(kk));
    }
    return sum;
}

ConstancyCheck check_not_constant(int K) {
    if (K < 20) throw Error::domain("check_not_constant: K must be at least 20");
    ConstancyCheck out;
    out.phi0 = phi_periodized(0.0, K);
    out.phi_log2 = phi_periodized(std::log(2.0), K);
    out.margin = out.phi_log2 - out.phi0;
    return out;
}

SolvElement disk_sample_to_halfplane(double rho, double r, double theta) {
    if (!(std::isfinite(rho) && rho > 0.0)) {
        throw Error::domain("disk_sample_to_halfplane: rho must be positive");
    }
    if (!(std::isfinite(r) && r >= 0.0) || !std::isfinite(theta)) {
        throw Error::domain("disk_sample_to_halfplane: bad polar sample");
    }

    // w = tanh(r/2) e^{i theta} in the disk about 0; the leaf point is the
    // inverse Cayley image rescaled so the center goes to e^rho i. All
    // boundary-sensitive quantities are formed from 1 - |w| = 2/(e^r + 1).
    const double tr = std::tanh(0.5 * r);
    const double one_minus = 2.0 / (std::exp(r) + 1.0);
    const double one_minus_sq = one_minus * (1.0 + tr);  // 1 - |w|^2
    const double sh = std::sin(0.5 * theta);
    const double denom = one_minus * one_minus + 4.0 * tr * sh * sh;  // |1 - w|^2
    if (!(denom > 0.0)) {
        throw Error::chart("disk_sample_to_halfplane: sample too close to the boundary");
    }
    const double x = -std::exp(rho) * 2.0 * tr * std::sin(theta) / denom;
    double t = rho + std::log(one_minus_sq) - std::log(denom);
    if (t < 0.0) t = 0.0;
    if (t > 2.0 * rho) t = 2.0 * rho;
    return {x, 0.0, t};
}

double DensityCurve::t_of(std::size_t i) const {
    const std::size_t n = values.size();
    if (cell_centered) {
        const double step = n > 0 ? (t_hi - t_lo) / static_cast<double>(n) : 0.0;
        return t_lo + (static_cast<double>(i) + 0.5) * step;
    }
    const double step = n > 1 ? (t_hi - t_lo) / static_cast<double>(n - 1) : 0.0;
    return t_lo + static_cast<double>(i) * step;
}

DensityCurve mc_pushforward(std::uint64_t seed, double rho, std::size_t n, int bins,
                            const LatticeSpec& lat, int threads) {
    if (!(std::isfinite(rho) && rho > 0.0)) {
        throw Error::domain("mc_pushforward: rho must be positive");
    }
    if (n < 1000) throw Error::domain("mc_pushforward: need at least 1000 samples");
    if (bins < 1) throw Error::domain("mc_pushforward: need at least one bin");

    const auto samples = quad::sample_geodesic_polar(seed, rho, n, threads);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
    for (const Vec2& s : samples) {
        const SolvElement g = disk_sample_to_halfplane(rho, s.x, s.y);
        const QuotientPoint qp = quotient_reduce(g, lat);
        auto j = static_cast<std::size_t>(qp.circle_t * static_cast<double>(bins));
        if (j >= counts.size()) j = counts.size() - 1;
        ++counts[j];
    }

    DensityCurve out;
    out.t_lo = 0.0;
    out.t_hi = 1.0;
    out.cell_centered = true;
    out.values.resize(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) {
        out.values[j] = static_cast<double>(counts[j]) * static_cast<double>(bins) /
                        static_cast<double>(n);
    }
    return out;
}

double max_fourier_coefficient(const std::vector<Vec2>& pts, int modes) {
    if (modes < 1) throw Error::domain("max_fourier_coefficient: modes must be >= 1");
    if (pts.empty()) throw Error::degenerate("max_fourier_coefficient: no points");

    const double two_pi = 2.0 * std::numbers::pi;
    double best = 0.0;
    for (int m1 = 0; m1 <= modes; ++m1) {
        for (int m2 = -modes; m2 <= modes; ++m2) {
            if (m1 == 0 && m2 <= 0) continue;  // zero mode and conjugate duplicates
            double re = 0.0, im = 0.0;
            for (const Vec2& p : pts) {
                const double ang = two_pi * (m1 * p.x + m2 * p.y);
                re += std::cos(ang);
                im += std::sin(ang);
            }
            const double mag = std::hypot(re, im) / static_cast<double>(pts.size());
            if (mag > best) best = mag;
        }
    }
    return best;
}

double torus_fiber_test(std::uint64_t seed, double rho, std::size_t n,
                        const LatticeSpec& lat, int modes, double band_lo,
                        double band_hi, int threads) {
    if (!(std::isfinite(rho) && rho > 0.0)) {
        throw Error::domain("torus_fiber_test: rho must be positive");
    }
    if (n < 1000) throw Error::domain("torus_fiber_test: need at least 1000 samples");
    if (!(band_lo >= 0.0 && band_lo < band_hi && band_hi <= 1.0)) {
        throw Error::domain("torus_fiber_test: band must satisfy 0 <= lo < hi <= 1");
    }

    const auto samples = quad::sample_geodesic_polar(seed, rho, n, threads);
    std::vector<Vec2> band;
    for (const Vec2& s : samples) {
        const SolvElement g = disk_sample_to_halfplane(rho, s.x, s.y);
        const QuotientPoint qp = quotient_reduce(g, lat);
        if (qp.circle_t >= band_lo && qp.circle_t < band_hi) {
            band.push_back(qp.torus);
        }
    }
    if (band.empty()) {
        throw Error::degenerate("torus_fiber_test: no samples landed in the band");
    }
    return max_fourier_coefficient(band, modes);
}

}  // namespace equilab::solv
