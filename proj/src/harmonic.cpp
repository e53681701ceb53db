#include "equilab/harmonic.hpp"

#include <cmath>
#include <numbers>

#include "equilab/error.hpp"
#include "equilab/quad.hpp"

namespace equilab::harmonic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormalStep = 1e-5;  // central-difference step for ∂/∂n

double fd_step(Vec2 z) { return 1e-4 * (1.0 + std::hypot(z.x, z.y)); }

double laplacian_of(const TestFunction& f, Vec2 z) {
    if (f.laplacian_e) return f.laplacian_e(z);
    return quad::laplacian_fd(f.eval, z, fd_step(z));
}

// Laplacian with O(h^4) truncation: two 5-point stencils combined by
// Richardson extrapolation. The step is large enough that the h^{-2}
// rounding term stays below 1e-9 for O(1) functions.
double laplacian_fd4(const std::function<double(Vec2)>& g, Vec2 z) {
    const double h = 4e-4 * (1.0 + std::hypot(z.x, z.y));
    const double coarse = quad::laplacian_fd(g, z, h);
    const double fine = quad::laplacian_fd(g, z, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

// d/dr along the outward ray through z (|z| > 0).
double radial_derivative(const std::function<double(Vec2)>& g, Vec2 z) {
    const double r = std::hypot(z.x, z.y);
    const Vec2 dir{z.x / r, z.y / r};
    const Vec2 zp{z.x + kNormalStep * dir.x, z.y + kNormalStep * dir.y};
    const Vec2 zm{z.x - kNormalStep * dir.x, z.y - kNormalStep * dir.y};
    return (g(zp) - g(zm)) / (2.0 * kNormalStep);
}

// ∮_{|z|=R} (φ ∂f/∂n - f ∂φ/∂n) σ_E with the normal = ±(radial direction).
double circle_flux(const std::function<double(Vec2)>& phi, const TestFunction& f,
                   double R, double normal_sign, double tol) {
    auto integrand = [&](Vec2 z) {
        const double dfdn = normal_sign * radial_derivative(f.eval, z);
        const double dphidn = normal_sign * radial_derivative(phi, z);
        return phi(z) * dfdn - f.eval(z) * dphidn;
    };
    return quad::boundary_integral(integrand, R, tol);
}

}  // namespace

double green_riesz_residual(const std::function<double(Vec2)>& phi, const TestFunction& f,
                            double r_in, double r_out, double tol) {
    if (!(0.0 <= r_in) || !(r_in < r_out) || !std::isfinite(r_out))
        throw Error::domain("green_riesz_residual: need 0 <= r_in < r_out < inf");
    if (!(tol > 0.0)) throw Error::domain("green_riesz_residual: tol must be positive");

    auto bulk = [&](Vec2 z) {
        return phi(z) * laplacian_of(f, z) - f.eval(z) * laplacian_fd4(phi, z);
    };
    const double lhs =
        r_in == 0.0
            ? quad::integrate_polar_disk(bulk, r_out, quad::RadialWeight::euclidean, 0.5 * tol)
            : quad::integrate_polar_annulus(bulk, r_in, r_out, quad::RadialWeight::euclidean,
                                            0.5 * tol);

    double rhs = circle_flux(phi, f, r_out, +1.0, 0.125 * tol);
    if (r_in > 0.0) rhs += circle_flux(phi, f, r_in, -1.0, 0.125 * tol);
    return std::abs(lhs - rhs);
}

double weighted_laplacian_integral(const weights::WeightProfile& p, const TestFunction& f,
                                   LaplaceMethod method, double tol) {
    if (p.kind() != weights::WeightKind::phi)
        throw Error::domain("weighted_laplacian_integral: profile must be phi-kind");
    if (!(tol > 0.0))
        throw Error::domain("weighted_laplacian_integral: tol must be positive");

    if (method == LaplaceMethod::boundary) {
        // A (1/R' ∮_{R'} f σ_E - 1/R ∮_R f σ_E); the circle integrals are
        // computed tightly because A can reach ~e^{2ρ}/2.
        const double circle_tol = std::min(tol, 1e-12);
        const double outer = quad::boundary_integral(f.eval, p.Rp(), circle_tol) / p.Rp();
        const double inner = quad::boundary_integral(f.eval, p.R(), circle_tol) / p.R();
        return p.A() * (outer - inner);
    }

    auto bulk = [&](Vec2 z) { return laplacian_of(f, z); };
    const double core =
        quad::integrate_polar_disk(bulk, p.R(), quad::RadialWeight::euclidean, 0.5 * tol);
    auto weighted = [&](Vec2 z) {
        return p.eval_radius(std::hypot(z.x, z.y)) * laplacian_of(f, z);
    };
    const double annulus = quad::integrate_polar_annulus(
        weighted, p.R(), p.Rp(), quad::RadialWeight::euclidean, 0.5 * tol);
    return core + annulus;
}

double defect_ratio(const weights::WeightProfile& p, const TestFunction& f, double tol) {
    if (!(f.sup_norm > 0.0))
        throw Error::degenerate("defect_ratio: test function has zero sup norm");
    const double numerator =
        std::abs(weighted_laplacian_integral(p, f, LaplaceMethod::boundary, tol));
    return numerator / (f.sup_norm * weights::normalizer(p));
}

double harmonicity_defect(const NodeMeasure& mu, const std::vector<TestFunction>& basis,
                          ChartKind chart, const std::function<Vec2(Vec2)>& leaf_chart) {
    if (mu.size() == 0) throw Error::degenerate("harmonicity_defect: empty node measure");

    std::vector<Vec2> pts(mu.size());
    std::vector<double> factor(mu.size());
    std::vector<double> dist(mu.size());  // distance to the chart boundary
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const Vec2 z = leaf_chart ? leaf_chart(mu.points[i]) : mu.points[i];
        if (!std::isfinite(z.x) || !std::isfinite(z.y))
            throw Error::chart("harmonicity_defect: chart produced a non-finite point");
        if (chart == ChartKind::halfplane) {
            if (!(z.y > 0.0))
                throw Error::chart("harmonicity_defect: node below the half-plane boundary");
            factor[i] = z.y * z.y;
            dist[i] = z.y;
        } else {
            const double r = std::hypot(z.x, z.y);
            if (!(r < 1.0))
                throw Error::chart("harmonicity_defect: node outside the unit disk");
            const double d = (1.0 - r) * (1.0 + r);
            factor[i] = 0.25 * d * d;
            dist[i] = 1.0 - r;
        }
        pts[i] = z;
    }

    double worst = 0.0;
    for (const TestFunction& f : basis) {
        double sum = 0.0;
        double maxabs = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            const double lap_e = f.laplacian_e
                                     ? f.laplacian_e(pts[i])
                                     : quad::laplacian_fd(f.eval, pts[i], 1e-4 * dist[i]);
            const double lap_p = factor[i] * lap_e;
            sum += mu.weights[i] * lap_p;
            maxabs = std::max(maxabs, std::abs(lap_p));
        }
        if (maxabs > 0.0) worst = std::max(worst, std::abs(sum) / maxabs);
    }
    return worst;
}

std::vector<TestFunction> regression_basis(ChartKind chart) {
    std::vector<TestFunction> basis;
    if (chart == ChartKind::disk) {
        basis.push_back({"one", [](Vec2) { return 1.0; }, [](Vec2) { return 0.0; }, 1.0});
        basis.push_back({"x", [](Vec2 z) { return z.x; }, [](Vec2) { return 0.0; }, 1.0});
        basis.push_back({"y", [](Vec2 z) { return z.y; }, [](Vec2) { return 0.0; }, 1.0});
        basis.push_back({"xy", [](Vec2 z) { return z.x * z.y; }, [](Vec2) { return 0.0; }, 0.5});
        basis.push_back({"x2-y2", [](Vec2 z) { return z.x * z.x - z.y * z.y; },
                         [](Vec2) { return 0.0; }, 1.0});
        basis.push_back({"r2", [](Vec2 z) { return z.x * z.x + z.y * z.y; },
                         [](Vec2) { return 4.0; }, 1.0});
        basis.push_back({"coscos", [](Vec2 z) { return std::cos(kPi * z.x) * std::cos(kPi * z.y); },
                         [](Vec2 z) {
                             return -2.0 * kPi * kPi * std::cos(kPi * z.x) * std::cos(kPi * z.y);
                         },
                         1.0});
        basis.push_back({"sinsin", [](Vec2 z) { return std::sin(kPi * z.x) * std::sin(kPi * z.y); },
                         [](Vec2 z) {
                             return -2.0 * kPi * kPi * std::sin(kPi * z.x) * std::sin(kPi * z.y);
                         },
                         1.0});
        return basis;
    }

    // Half-plane chart: bounded functions of t = log y and u = x/y. For
    // f = a(u) b(t), y² Δ_E f = b·[a''(1+u²) + 2a'u] + a·[b'' + b'] - 2a'b'u,
    // which keeps the hyperbolic Laplacian bounded over the whole chart.
    auto trig_t = [](double omega, bool use_sin) {
        TestFunction f;
        f.name = (use_sin ? "sin" : "cos") + std::to_string(int(omega / (2.0 * kPi))) + "t";
        f.eval = [omega, use_sin](Vec2 z) {
            const double t = std::log(z.y);
            return use_sin ? std::sin(omega * t) : std::cos(omega * t);
        };
        f.laplacian_e = [omega, use_sin](Vec2 z) {
            const double t = std::log(z.y);
            const double c = std::cos(omega * t), s = std::sin(omega * t);
            const double val = use_sin ? -omega * omega * s - omega * c
                                       : -omega * omega * c + omega * s;
            return val / (z.y * z.y);
        };
        f.sup_norm = 1.0;
        return f;
    };
    basis.push_back({"one", [](Vec2) { return 1.0; }, [](Vec2) { return 0.0; }, 1.0});
    basis.push_back(trig_t(2.0 * kPi, false));
    basis.push_back(trig_t(2.0 * kPi, true));
    basis.push_back(trig_t(4.0 * kPi, false));
    basis.push_back(trig_t(4.0 * kPi, true));
    basis.push_back({"bump_u",
                     [](Vec2 z) {
                         const double u = z.x / z.y;
                         return 1.0 / (1.0 + u * u);
                     },
                     [](Vec2 z) {
                         const double u = z.x / z.y;
                         const double w = 1.0 + u * u;
                         return (2.0 * u * u - 2.0) / (w * w) / (z.y * z.y);
                     },
                     1.0});
    basis.push_back({"odd_u",
                     [](Vec2 z) {
                         const double u = z.x / z.y;
                         const double w = 1.0 + u * u;
                         return u / (w * w);
                     },
                     [](Vec2 z) {
                         const double u = z.x / z.y;
                         const double w = 1.0 + u * u;
                         return (6.0 * u * u * u - 10.0 * u) / (w * w * w) / (z.y * z.y);
                     },
                     0.325});
    basis.push_back({"bump_u_cos_t",
                     [](Vec2 z) {
                         const double u = z.x / z.y;
                         const double t = std::log(z.y);
                         return std::cos(2.0 * kPi * t) / (1.0 + u * u);
                     },
                     [](Vec2 z) {
                         const double u = z.x / z.y;
                         const double t = std::log(z.y);
                         const double w = 1.0 + u * u;
                         const double c = std::cos(2.0 * kPi * t);
                         const double s = std::sin(2.0 * kPi * t);
                         const double a = 1.0 / w;
                         const double ap = -2.0 * u / (w * w);
                         const double lap_a = (2.0 * u * u - 2.0) / (w * w);
                         const double lap_b = -4.0 * kPi * kPi * c + 2.0 * kPi * s;
                         const double bp = -2.0 * kPi * s;
                         return (c * lap_a + a * lap_b - 2.0 * ap * bp * u) / (z.y * z.y);
                     },
                     1.0});
    return basis;
}

}  // namespace equilab::harmonic
