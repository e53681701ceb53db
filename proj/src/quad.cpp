#include "equilab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "equilab/error.hpp"
#include "equilab/rng.hpp"

namespace equilab::quad {

namespace {

constexpr double kPi = std::numbers::pi;

double guarded(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
}

// One Simpson panel together with its own halved refinement. err is the raw
// |S2 - S1| discrepancy (no /15 discount): near endpoint singularities the
// asymptotic error model behind the discount does not hold, and the
// conservative estimate only costs a few extra splits on smooth integrands.
struct Panel {
    double a, b;
    double fa, fm, fb;    // samples at a, midpoint, b
    double fq1, fq3;      // samples at the two quarter points
    double value;         // Richardson-corrected two-half Simpson
    double err;
};

Panel make_panel(const std::function<double(double)>& f, double a, double b,
                 double fa, double fm, double fb) {
    Panel p;
    p.a = a;
    p.b = b;
    p.fa = fa;
    p.fm = fm;
    p.fb = fb;
    const double h = b - a;
    p.fq1 = guarded(f, a + 0.25 * h);
    p.fq3 = guarded(f, b - 0.25 * h);
    const double s1 = h / 6.0 * (fa + 4.0 * fm + fb);
    const double sl = h / 12.0 * (fa + 4.0 * p.fq1 + fm);
    const double sr = h / 12.0 * (fm + 4.0 * p.fq3 + fb);
    const double s2 = sl + sr;
    p.value = s2 + (s2 - s1) / 15.0;
    p.err = std::abs(s2 - s1);
    return p;
}

struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    constexpr std::size_t kMaxPanels = 1u << 18;
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    const double fa = guarded(f, a);
    const double fb = guarded(f, b);
    const double fm = guarded(f, 0.5 * (a + b));
    heap.push(make_panel(f, a, b, fa, fm, fb));
    double total_err = heap.top().err;
    double frozen_err = 0.0;   // panels too narrow to split further
    double frozen_val = 0.0;
    std::size_t n_panels = 1;
    while (total_err + frozen_err > tol) {
        if (heap.empty() || n_panels >= kMaxPanels)
            throw QuadratureFailure("integrate_1d did not reach the requested tolerance",
                                    total_err + frozen_err);
        Panel worst = heap.top();
        heap.pop();
        total_err -= worst.err;
        const double m = worst.a + 0.5 * (worst.b - worst.a);
        if (!(m > worst.a) || !(m < worst.b)) {
            // No representable midpoint left; the panel cannot be refined.
            frozen_err += worst.err;
            frozen_val += worst.value;
            continue;
        }
        Panel left = make_panel(f, worst.a, m, worst.fa, worst.fq1, worst.fm);
        Panel right = make_panel(f, m, worst.b, worst.fm, worst.fq3, worst.fb);
        total_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
        ++n_panels;
    }
    double sum = frozen_val;
    std::vector<double> values;
    values.reserve(n_panels);
    while (!heap.empty()) {
        values.push_back(heap.top().value);
        heap.pop();
    }
    // Deterministic summation order regardless of heap internals.
    std::sort(values.begin(), values.end());
    for (double v : values) sum += v;
    return sum;
}

// Trapezoid rule on [0, 2π) with node doubling; spectrally accurate for the
// smooth periodic integrands it is given. Requires two consecutive doublings
// to agree within tol before accepting.
double periodic_trapezoid(const std::function<double(double)>& f, double tol) {
    constexpr std::size_t kMaxNodes = 1u << 20;
    std::size_t n = 16;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += guarded(f, 2.0 * kPi * double(j) / double(n));
    double current = 2.0 * kPi * sum / double(n);
    int agreed = 0;
    while (n < kMaxNodes) {
        double odd = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            odd += guarded(f, 2.0 * kPi * (double(j) + 0.5) / double(n));
        const double refined = 0.5 * current + kPi * odd / double(n);
        const double diff = std::abs(refined - current);
        current = refined;
        n *= 2;
        if (diff <= tol) {
            if (++agreed >= 2) return current;
        } else {
            agreed = 0;
        }
    }
    throw QuadratureFailure("periodic trapezoid rule did not converge", tol);
}

double radial_weight_value(RadialWeight w, double r) {
    if (w == RadialWeight::euclidean) return r;
    const double d = 1.0 - r * r;
    return 4.0 * r / (d * d);
}

}  // namespace

PolarGrid::PolarGrid(double r_max_, int n_r_, int n_theta_)
    : r_max(r_max_), n_r(n_r_), n_theta(n_theta_) {
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw Error::domain("PolarGrid: r_max must be positive and finite");
    if (n_r < 2) throw Error::domain("PolarGrid: n_r must be at least 2");
    if (n_theta < 4) throw Error::domain("PolarGrid: n_theta must be at least 4");
}

double integrate_1d(const std::function<double(double)>& f, const Interval1D& dom) {
    if (!(dom.tol > 0.0)) throw Error::domain("integrate_1d: tol must be positive");
    if (dom.half_infinite) {
        if (!std::isfinite(dom.lo))
            throw Error::domain("integrate_1d: lo must be finite");
        // t = lo - 2 log u maps (0,1] onto [lo, inf); dt = -2 du/u. The factor
        // 2 in the exponent keeps half-power tails f ~ e^{-t/2} (the module's
        // common case) bounded after the change of variable.
        const double lo = dom.lo;
        auto g = [&f, lo](double u) {
            if (u <= 0.0) return 0.0;
            return 2.0 * f(lo - 2.0 * std::log(u)) / u;
        };
        return adaptive_simpson(g, 0.0, 1.0, dom.tol);
    }
    if (!(dom.lo < dom.hi))
        throw Error::domain("integrate_1d: empty interval (lo >= hi)");
    if (!std::isfinite(dom.lo) || !std::isfinite(dom.hi))
        throw Error::domain("integrate_1d: endpoints must be finite");
    return adaptive_simpson(f, dom.lo, dom.hi, dom.tol);
}

double integrate_polar_annulus(const std::function<double(Vec2)>& f, double r0, double r1,
                               RadialWeight weight, double tol) {
    if (!(tol > 0.0)) throw Error::domain("polar integration: tol must be positive");
    if (!(0.0 <= r0) || !(r0 < r1))
        throw Error::domain("polar integration: need 0 <= r0 < r1");
    if (weight == RadialWeight::poincare && !(r1 < 1.0))
        throw Error::domain("polar integration: poincare weight needs radius < 1");
    // Outer integrand: g(r) = weight(r) * ∮ f(r e^{iθ}) dθ. The inner tolerance
    // is scaled so the weight cannot amplify angular error past tol/4.
    const double w_max = std::max(radial_weight_value(weight, r1), 1.0);
    const double theta_tol = 0.25 * tol / (w_max * (r1 - r0) + 1.0);
    auto g = [&](double r) {
        if (r <= 0.0) return 0.0;
        auto on_circle = [&f, r](double theta) {
            return f(Vec2{r * std::cos(theta), r * std::sin(theta)});
        };
        return radial_weight_value(weight, r) * periodic_trapezoid(on_circle, theta_tol);
    };
    Interval1D dom;
    dom.lo = r0;
    dom.hi = r1;
    dom.tol = 0.5 * tol;
    return integrate_1d(g, dom);
}

double integrate_polar_disk(const std::function<double(Vec2)>& f, double R,
                            RadialWeight weight, double tol) {
    if (!(R > 0.0)) throw Error::domain("integrate_polar_disk: R must be positive");
    return integrate_polar_annulus(f, 0.0, R, weight, tol);
}

double boundary_integral(const std::function<double(Vec2)>& f, double R, double tol) {
    if (!(R > 0.0)) throw Error::domain("boundary_integral: R must be positive");
    if (!(tol > 0.0)) throw Error::domain("boundary_integral: tol must be positive");
    auto on_circle = [&f, R](double theta) {
        return f(Vec2{R * std::cos(theta), R * std::sin(theta)});
    };
    return R * periodic_trapezoid(on_circle, tol / R);
}

double laplacian_fd(const std::function<double(Vec2)>& f, Vec2 z, double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw Error::domain("laplacian_fd: step must be positive and finite");
    const double fc = f(z);
    const double fe = f(Vec2{z.x + h, z.y});
    const double fw = f(Vec2{z.x - h, z.y});
    const double fn = f(Vec2{z.x, z.y + h});
    const double fs = f(Vec2{z.x, z.y - h});
    const double lap = (fe + fw + fn + fs - 4.0 * fc) / (h * h);
    if (!std::isfinite(lap))
        throw Error::domain("laplacian_fd: stencil left the function's domain");
    return lap;
}

std::vector<Vec2> sample_geodesic_polar(std::uint64_t seed, double rho, std::size_t n,
                                        int threads) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw Error::domain("sample_geodesic_polar: rho must be positive and finite");
    if (n == 0) throw Error::degenerate("sample_geodesic_polar: n must be positive");
    std::vector<Vec2> out(n);
    const double cosh_rho_m1 = std::cosh(rho) - 1.0;
    rng::for_each_chunk(n, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto eng = rng::chunk_engine(seed, chunk);
        for (std::size_t i = begin; i < end; ++i) {
            const double u = rng::canonical(eng);
            const double v = rng::canonical(eng);
            out[i].x = std::acosh(1.0 + u * cosh_rho_m1);  // geodesic radius
            out[i].y = 2.0 * kPi * v;                      // angle
        }
    });
    return out;
}

NodeMeasure sample_hyperbolic_disk(std::uint64_t seed, double rho, std::size_t n,
                                   int threads) {
    const std::vector<Vec2> polar = sample_geodesic_polar(seed, rho, n, threads);
    NodeMeasure mu;
    mu.points.resize(n);
    mu.weights.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::tanh(0.5 * polar[i].x);
        mu.points[i] = Vec2{w * std::cos(polar[i].y), w * std::sin(polar[i].y)};
    }
    return mu;
}

}  // namespace equilab::quad
