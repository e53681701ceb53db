// Acceptance gate: one check per release criterion, one PASS/FAIL line each,
// exit code = number of failures. Criteria 1-10 run in-process against the
// library; criterion 11 drives the installed CLI binary (argv[1]).

#include <equilab/harmonic.hpp>
#include <equilab/hyp.hpp>
#include <equilab/quad.hpp>
#include <equilab/solv.hpp>
#include <equilab/types.hpp>
#include <equilab/weights.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace equilab;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// --- criterion 1: the limit integral against pi/2 --------------------------
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const double v = quad::integrate_1d(
        [](double t) {
            const double r = std::exp(-t) * (-std::expm1(-t));
            return std::sqrt(std::max(r, 0.0));
        },
        {0.0, 0.0, true, 1e-10});
    const double elapsed = seconds_since(t0);
    const double err = std::fabs(v - 0.5 * kPi);
    report(1, err <= 1e-10 && elapsed < 1.0,
           "limit integral: |value - pi/2| = " + fmt(err) + " (tol 1e-10), " +
               fmt(elapsed) + " s (< 1 s)");
}

// --- criterion 2: hyperbolic disk areas ------------------------------------
void criterion_2() {
    double worst = 0.0;
    for (double rho : {0.5, 1.0, 2.0, 4.0}) {
        const double R = hyp::geodesic_ball_euclid_radius(rho);
        const double q = quad::integrate_polar_disk([](Vec2) { return 1.0; }, R,
                                                    quad::RadialWeight::poincare, 1e-10);
        const double exact = kPi * (std::exp(rho) + std::exp(-rho) - 2.0);
        worst = std::max(worst, std::fabs(q - exact) / exact);
    }
    report(2, worst < 1e-8,
           "disk areas at rho in {0.5,1,2,4}: max relative error " + fmt(worst) +
               " (< 1e-8)");
}

// --- criterion 3: total band mass ------------------------------------------
void criterion_3() {
    double worst = 0.0;
    for (int k = 1; k <= 6; ++k) {
        const double rho = static_cast<double>(k);
        worst = std::max(worst, std::fabs(solv::band_mass(rho, 0.0, 2.0 * rho) - 1.0));
    }
    report(3, worst <= 1e-8,
           "band mass over [0, 2 rho] for rho = 1..6: max |mass - 1| = " + fmt(worst) +
               " (<= 1e-8)");
}

// --- criterion 4: Monte Carlo histogram vs the periodized density ----------
void criterion_4() {
    const auto t0 = std::chrono::steady_clock::now();
    const double rho = 12.0;
    const std::size_t n = 1000000;
    const int bins = 32;
    const auto lat = solv::LatticeSpec::from_matrix(2, 1, 1, 1);
    const auto hist = solv::mc_pushforward(12345u, rho, n, bins, lat, 1);

    double sup = 0.0;
    for (std::size_t j = 0; j < hist.values.size(); ++j)
        sup = std::max(sup, std::fabs(hist.values[j] - solv::phi_periodized(hist.t_of(j), 40)));

    bool sigma_ok = true;
    const int wraps = static_cast<int>(std::ceil(2.0 * rho)) + 1;
    for (int j = 0; j < bins; ++j) {
        double p = 0.0;
        for (int k = 0; k < wraps; ++k)
            p += solv::band_mass(rho, (j + 0.0) / bins + k, (j + 1.0) / bins + k);
        const double count = hist.values[static_cast<std::size_t>(j)] *
                             static_cast<double>(n) / bins;
        const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
        if (std::fabs(count - static_cast<double>(n) * p) > 3.0 * sd) sigma_ok = false;
    }
    const double elapsed = seconds_since(t0);
    report(4, sup <= 0.02 && sigma_ok && elapsed < 120.0,
           "pushforward histogram (rho 12, n 1e6, 32 bins): sup distance " + fmt(sup) +
               " (<= 0.02), bins within 3 sigma: " + (sigma_ok ? "yes" : "NO") + ", " +
               fmt(elapsed) + " s (< 2 min)");
}

// --- criterion 5: the periodized density is not constant -------------------
void criterion_5() {
    // Brute-force summation oracle first, written against the closed-form
    // density only.
    auto hat = [](double t) {
        if (t <= 0.0) return 0.0;
        return (2.0 / kPi) * std::sqrt(std::exp(-t) - std::exp(-2.0 * t));
    };
    const double l2 = std::log(2.0);
    double bf0 = 0.0, bfl = 0.0;
    for (int k = 0; k <= 40; ++k) {
        bf0 += hat(static_cast<double>(k));
        if (l2 + k <= 40.0) bfl += hat(l2 + k);
    }
    const double bf_margin = bfl - bf0;

    const auto c40 = solv::check_not_constant(40);
    const auto c60 = solv::check_not_constant(60);
    const bool ok = bf_margin >= 0.09 && bf_margin <= 0.10 &&
                    std::fabs(c40.margin - bf_margin) <= 1e-12 && c40.margin > 0.05 &&
                    std::fabs(c40.margin - c60.margin) <= 1e-6;
    report(5, ok,
           "phi(log 2) - phi(0) = " + fmt(c40.margin) +
               " (> 0.05, in [0.09, 0.10], brute-force oracle agrees to " +
               fmt(std::fabs(c40.margin - bf_margin)) + ", K 40 vs 60 drift " +
               fmt(std::fabs(c40.margin - c60.margin)) + ")");
}

// --- criterion 6: Green identity residuals and the weighted Laplacian ------
void criterion_6() {
    double worst_res = 0.0;
    {
        const harmonic::TestFunction saddle{
            "x2_minus_y2", [](Vec2 z) { return z.x * z.x - z.y * z.y; },
            [](Vec2) { return 0.0; }, 1.0};
        worst_res = std::max(worst_res, harmonic::green_riesz_residual(
                                            [](Vec2) { return 1.0; }, saddle, 0.0, 0.7, 1e-8));
        const harmonic::TestFunction one{"one", [](Vec2) { return 1.0; },
                                         [](Vec2) { return 0.0; }, 1.0};
        worst_res = std::max(
            worst_res,
            harmonic::green_riesz_residual(
                [](Vec2 z) { return std::log(0.8) - std::log(std::hypot(z.x, z.y)); }, one,
                0.5, 0.8, 1e-8));
        const harmonic::TestFunction linear{"x", [](Vec2 z) { return z.x; },
                                            [](Vec2) { return 0.0; }, 1.0};
        worst_res = std::max(worst_res, harmonic::green_riesz_residual(
                                            [](Vec2 z) { return z.x * z.x + z.y * z.y; },
                                            linear, 0.3, 0.6, 1e-7));
    }

    // The phi-weighted Laplacian: boundary closed form vs direct quadrature
    // on 20 random polynomials, the pure |z|^2 case checked against its
    // analytic value 2 pi A (R'^2 - R^2).
    const auto p = weights::WeightProfile::from_radii(0.5, 0.8, weights::WeightKind::phi);
    std::mt19937_64 eng(2024u);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    bool pairs_ok = true;
    double analytic_err = 1e300;
    for (int trial = 0; trial < 20; ++trial) {
        double c[6];
        if (trial == 0) {
            c[0] = c[1] = c[2] = c[3] = c[4] = 0.0;
            c[5] = 1.0;  // |z|^2 exactly
        } else {
            for (double& x : c) x = coeff(eng);
        }
        harmonic::TestFunction f{
            "poly",
            [c0 = c[0], c1 = c[1], c2 = c[2], c3 = c[3], c4 = c[4], c5 = c[5]](Vec2 z) {
                return c0 + c1 * z.x + c2 * z.y + c3 * z.x * z.y +
                       c4 * (z.x * z.x - z.y * z.y) + c5 * (z.x * z.x + z.y * z.y);
            },
            [c5 = c[5]](Vec2) { return 4.0 * c5; }, 6.0};
        const double vb =
            harmonic::weighted_laplacian_integral(p, f, harmonic::LaplaceMethod::boundary, 1e-8);
        const double vd =
            harmonic::weighted_laplacian_integral(p, f, harmonic::LaplaceMethod::direct, 1e-8);
        if (std::fabs(vb - vd) > 1e-6 * (1.0 + std::fabs(vb))) pairs_ok = false;
        if (trial == 0) {
            const double analytic = 2.0 * kPi * p.A() * (0.8 * 0.8 - 0.5 * 0.5);
            analytic_err = std::fabs(vb - analytic);
            if (analytic_err > 1e-6 * (1.0 + std::fabs(analytic))) pairs_ok = false;
        }
    }
    report(6, worst_res < 1e-6 && pairs_ok,
           "Green identity residuals max " + fmt(worst_res) +
               " (< 1e-6); 20 boundary-vs-direct pairs within 1e-6*(1+|v|), |z|^2 vs "
               "analytic off by " +
               fmt(analytic_err));
}

// --- criterion 7: defect ratios shrink with the annulus --------------------
void criterion_7() {
    const auto basis = harmonic::regression_basis(harmonic::ChartKind::disk);
    bool bound_ok = true;
    double max2 = 0.0, max8 = 0.0;
    for (double rp : {2.0, 8.0}) {
        const auto p = weights::WeightProfile::from_rho(10.0, rp, weights::WeightKind::phi);
        const double bound = 4.0 * kPi * p.A() / weights::normalizer(p);
        double worst = 0.0;
        for (const auto& f : basis) {
            const double ratio = harmonic::defect_ratio(p, f, 1e-8);
            worst = std::max(worst, ratio);
            if (ratio > bound + 1e-8) bound_ok = false;
        }
        (rp == 2.0 ? max2 : max8) = worst;
    }
    report(7, max8 < 0.5 * max2 && bound_ok,
           "max defect ratio (rho 10): " + fmt(max8) + " at rho' 8 vs " + fmt(max2) +
               " at rho' 2 (factor " + fmt(max8 / max2) +
               " < 0.5); all ratios within the 4 pi A / normalizer bound: " +
               (bound_ok ? "yes" : "NO"));
}

// --- criterion 8: normalizer asymptotics ------------------------------------
void criterion_8() {
    bool window_ok = true;
    for (auto kind : {weights::WeightKind::psi, weights::WeightKind::phi}) {
        for (double rp : {4.0, 6.0, 8.0}) {
            const auto p = weights::WeightProfile::from_rho(12.0, rp, kind);
            const double scaled = weights::normalizer(p) / (4.0 * kPi * p.A() * rp);
            if (scaled < 0.9 || scaled > 1.1) window_ok = false;
        }
    }

    double prev = 1e300;
    bool monotone = true;
    double last = 0.0;
    for (double rho : {6.0, 9.0, 12.0}) {
        const auto psi = weights::WeightProfile::from_rho(rho, 4.0, weights::WeightKind::psi);
        const auto phi = weights::WeightProfile::from_rho(rho, 4.0, weights::WeightKind::phi);
        const double ratio = weights::normalizer(psi) / weights::normalizer(phi);
        if (!(ratio >= 1.0 && ratio < prev)) monotone = false;
        prev = ratio;
        last = ratio;
    }
    report(8, window_ok && monotone && std::fabs(last - 1.0) <= 1e-6,
           "normalizer/(4 pi A rho') in [0.9, 1.1] at rho 12: " +
               std::string(window_ok ? "yes" : "NO") +
               "; psi/phi ratio decreases to 1 along rho in {6,9,12} (final - 1 = " +
               fmt(last - 1.0) + ")");
}

// --- criterion 9: measure gap decay and the difference identity ------------
void criterion_9() {
    double prev = 1e300;
    bool monotone = true;
    double gap8 = 0.0, worst_resid = 0.0;
    for (double rp : {2.0, 4.0, 8.0}) {
        const auto psi = weights::WeightProfile::from_rho(10.0, rp, weights::WeightKind::psi);
        const auto phi = weights::WeightProfile::from_rho(10.0, rp, weights::WeightKind::phi);
        const double gap = weights::measure_gap(psi, phi, 1e-10);
        if (!(gap < prev)) monotone = false;
        prev = gap;
        if (rp == 8.0) gap8 = gap;

        const double diff = weights::weight_difference_integral(psi, phi, 1e-12);
        const double n_psi = weights::normalizer(psi, 1e-12);
        const double n_phi = weights::normalizer(phi, 1e-12);
        // Both sides subtract quadratures of normalizer size, so the identity
        // is measured relative to that scale.
        worst_resid = std::max(
            worst_resid, std::fabs(diff - (n_psi - n_phi)) / (1.0 + n_psi + n_phi));
    }
    report(9, monotone && gap8 < 0.15 && worst_resid <= 1e-10,
           "L1 gap strictly decreasing over rho' in {2,4,8} at rho 10, gap(8) = " +
               fmt(gap8) + " (< 0.15); difference-integral identity residual " +
               fmt(worst_resid) + " (<= 1e-10 relative)");
}

// --- criterion 10: flow commutation on frames and the leaf ------------------
void criterion_10() {
    const double grid[] = {-2.0, -1.0, 0.5, 1.0, 3.0};
    double worst = 0.0;
    for (double t : grid) {
        for (double s : grid) {
            const double sp = s * std::exp(-t);
            // Frame flows act by right multiplication, so the product
            // g^t h^s g^{-t} is built inside-out.
            const auto lhs = hyp::geodesic_flow(
                -t, hyp::horocycle_flow(s, hyp::geodesic_flow(t, hyp::UnitTangent::identity())));
            const auto rhs = hyp::horocycle_flow(sp, hyp::UnitTangent::identity());
            worst = std::max({worst, std::fabs(lhs.m11 - rhs.m11), std::fabs(lhs.m12 - rhs.m12),
                              std::fabs(lhs.m21 - rhs.m21), std::fabs(lhs.m22 - rhs.m22)});

            const hyp::HalfPlanePoint z(0.7, 1.3);
            const auto a = solv::flow_Y(t, solv::flow_S(s, z));
            const auto b = solv::flow_S(sp, solv::flow_Y(t, z));
            worst = std::max({worst, std::fabs(a.x - b.x), std::fabs(a.y - b.y)});
        }
    }
    report(10, worst < 1e-12,
           "conjugation and flow commutation residuals over the 5x5 grid: max " +
               fmt(worst) + " (< 1e-12)");
}

// --- criterion 11: CLI determinism ------------------------------------------
std::string run_to_file(const std::string& cli, const std::string& args, const fs::path& out) {
    const std::string cmd = "\"" + cli + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return std::string();
    std::ifstream in(out, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_11(const std::string& cli) {
    const std::vector<std::string> commands = {
        "limit-integral",
        "phihat-curve",
        "band-convergence --rho-list 4,8 --bins 16",
        "mc-solv --rho 6 --n 200000 --bins 16",
        "defect-sweep --rho 10 --rho-prime-list 2,4",
        "measure-gap --rho-list 4 --rho-prime-list 2,8",
        "flows-check",
        "green-riesz",
    };
    const fs::path work = fs::temp_directory_path() / "equilab_acceptance";
    std::error_code ec;
    fs::create_directories(work, ec);

    bool ok = true;
    std::string bad;
    for (const auto& args : commands) {
        const std::string a = run_to_file(cli, args + " --threads 1", work / "a.csv");
        const std::string b = run_to_file(cli, args + " --threads 1", work / "b.csv");
        const std::string c = run_to_file(cli, args + " --threads 4", work / "c.csv");
        if (a.empty() || a != b || a != c) {
            ok = false;
            if (bad.empty()) bad = args;
        }
    }
    fs::remove_all(work, ec);
    report(11, ok,
           ok ? "all 8 commands byte-identical across reruns and --threads {1,4}"
              : "output drift or failure in: " + bad);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance_tests <cli-binary>\n");
        return 64;
    }

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11(argv[1]);

    if (g_failures == 0) {
        std::printf("acceptance: all 11 criteria satisfied\n");
    } else {
        std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    }
    return g_failures;
}
