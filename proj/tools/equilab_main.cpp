#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "equilab/csv.hpp"
#include "equilab/error.hpp"
#include "equilab/harmonic.hpp"
#include "equilab/hyp.hpp"
#include "equilab/quad.hpp"
#include "equilab/solv.hpp"
#include "equilab/types.hpp"
#include "equilab/weights.hpp"

namespace {

using equilab::Vec2;
using equilab::csv::format_number;
namespace hyp = equilab::hyp;
namespace quad = equilab::quad;
namespace weights = equilab::weights;
namespace harmonic = equilab::harmonic;
namespace solv = equilab::solv;

constexpr double kPi = std::numbers::pi;

// Every command appends CSV rows and check results here; a failed check
// makes the process exit nonzero after the report is written.
struct Report {
    std::ostringstream csv_text;
    equilab::csv::Writer writer{csv_text};
    std::vector<std::string> violations;

    void row(const std::vector<std::string>& cells) { writer.row(cells); }
    void check(bool ok, const std::string& what) {
        if (!ok) violations.push_back(what);
    }
};

struct GlobalOpts {
    std::string output;
    int threads = 1;
    std::uint64_t seed = 12345;
    double tol = -1.0;  // unset; commands substitute their own default

    double tol_or(double dflt) const { return tol > 0.0 ? tol : dflt; }
};

void run_limit_integral(Report& rep, const GlobalOpts& g) {
    const double tol = g.tol_or(1e-10);
    auto f = [](double t) {
        const double r = std::exp(-t) * (-std::expm1(-t));
        return std::sqrt(std::max(r, 0.0));
    };
    const double value = quad::integrate_1d(f, {0.0, 0.0, true, tol});
    const double reference = 0.5 * kPi;
    const double diff = value - reference;

    rep.row({"quantity", "value"});
    rep.row({"integral", format_number(value)});
    rep.row({"reference", format_number(reference)});
    rep.row({"difference", format_number(diff)});
    rep.check(std::abs(diff) <= std::max(tol, 1e-10),
              "limit-integral: |integral - pi/2| exceeds tolerance");
}

void run_phihat_curve(Report& rep, double t_lo, double t_hi, int points, int K) {
    if (!(t_lo < t_hi) || points < 2) {
        throw equilab::Error::domain("phihat-curve: need t-lo < t-hi and points >= 2");
    }
    const double step = (t_hi - t_lo) / static_cast<double>(points - 1);

    rep.row({"t", "phi_hat", "phi_periodized"});
    std::vector<double> ts(points), vals(points);
    for (int i = 0; i < points; ++i) {
        const double t = t_lo + step * static_cast<double>(i);
        ts[i] = t;
        vals[i] = solv::phi_hat(t);
        rep.row({format_number(t), format_number(vals[i]),
                 format_number(solv::phi_periodized(t, K))});
    }

    bool zero_left_of_origin = true;
    for (int i = 0; i < points; ++i) {
        if (ts[i] <= 0.0 && vals[i] != 0.0) zero_left_of_origin = false;
    }
    rep.check(zero_left_of_origin, "phihat-curve: phi_hat must vanish for t <= 0");

    const double lg2 = std::log(2.0);
    if (t_lo <= lg2 && lg2 <= t_hi) {
        const auto it = std::max_element(vals.begin(), vals.end());
        const double t_at_max = ts[static_cast<std::size_t>(it - vals.begin())];
        rep.check(std::abs(t_at_max - lg2) <= step + 1e-15,
                  "phihat-curve: maximum not within one grid step of log 2");
    }
    if (t_lo <= 0.0 && t_hi >= 16.0) {
        double trap = 0.0;
        for (int i = 0; i + 1 < points; ++i) trap += 0.5 * (vals[i] + vals[i + 1]) * step;
        rep.check(std::abs(trap - 1.0) <= 1e-3,
                  "phihat-curve: grid trapezoid of phi_hat not within 1e-3 of 1");
    }
}

void run_band_convergence(Report& rep, const GlobalOpts& g, const std::vector<double>& rhos,
                          int bins, double t_max) {
    if (bins < 1 || !(t_max > 0.0)) {
        throw equilab::Error::domain("band-convergence: need bins >= 1 and t-max > 0");
    }
    const double tol = g.tol_or(1e-10);

    std::vector<double> limit_mass(static_cast<std::size_t>(bins));
    for (int j = 0; j < bins; ++j) {
        const double a = t_max * static_cast<double>(j) / bins;
        const double b = t_max * static_cast<double>(j + 1) / bins;
        limit_mass[static_cast<std::size_t>(j)] =
            quad::integrate_1d([](double t) { return solv::phi_hat(t); },
                               {a, b, false, 1e-12});
    }

    rep.row({"rho", "total_mass", "sup_bin_distance"});
    std::vector<double> sups;
    for (double rho : rhos) {
        const double total = solv::band_mass(rho, 0.0, 2.0 * rho, tol);
        double sup = 0.0;
        for (int j = 0; j < bins; ++j) {
            const double a = t_max * static_cast<double>(j) / bins;
            const double b = t_max * static_cast<double>(j + 1) / bins;
            const double mass = solv::band_mass(rho, a, b, tol);
            sup = std::max(sup, std::abs(mass - limit_mass[static_cast<std::size_t>(j)]));
        }
        sups.push_back(sup);
        rep.row({format_number(rho), format_number(total), format_number(sup)});
        rep.check(std::abs(total - 1.0) <= 1e-8,
                  "band-convergence: total band mass differs from 1 beyond 1e-8");
        if (rho >= 14.0) {
            rep.check(sup < 5e-3,
                      "band-convergence: sup bin distance at rho >= 14 not below 5e-3");
        }
    }
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        for (std::size_t j = i + 1; j < rhos.size(); ++j) {
            if (rhos[i] < rhos[j]) {
                rep.check(sups[i] > sups[j],
                          "band-convergence: sup bin distance not decreasing in rho");
            } else if (rhos[j] < rhos[i]) {
                rep.check(sups[j] > sups[i],
                          "band-convergence: sup bin distance not decreasing in rho");
            }
        }
    }
}

void run_mc_solv(Report& rep, const GlobalOpts& g, double rho, std::uint64_t n, int bins,
                 int K, const std::vector<std::int64_t>& lattice) {
    const auto lat =
        solv::LatticeSpec::from_matrix(lattice[0], lattice[1], lattice[2], lattice[3]);
    const auto hist =
        solv::mc_pushforward(g.seed, rho, static_cast<std::size_t>(n), bins, lat, g.threads);

    // Exact per-bin predictions: band masses summed over integer shifts.
    const int wraps = static_cast<int>(std::ceil(2.0 * rho)) + 1;
    std::vector<double> pred(hist.values.size(), 0.0);
    for (std::size_t j = 0; j < hist.values.size(); ++j) {
        const double a = static_cast<double>(j) / bins;
        const double b = static_cast<double>(j + 1) / bins;
        for (int k = 0; k < wraps; ++k) {
            pred[j] += solv::band_mass(rho, a + k, b + k);
        }
    }

    rep.row({"series", "t", "value"});
    double mass = 0.0;
    for (std::size_t j = 0; j < hist.values.size(); ++j) {
        rep.row({"histogram", format_number(hist.t_of(j)), format_number(hist.values[j])});
        mass += hist.values[j] / bins;
    }
    double sup_vs_phi = 0.0;
    for (std::size_t j = 0; j < hist.values.size(); ++j) {
        const double phi = solv::phi_periodized(hist.t_of(j), K);
        sup_vs_phi = std::max(sup_vs_phi, std::abs(hist.values[j] - phi));
        rep.row({"phi", format_number(hist.t_of(j)), format_number(phi)});
    }
    for (std::size_t j = 0; j < hist.values.size(); ++j) {
        rep.row({"constant", format_number(hist.t_of(j)), "1"});
    }
    for (std::size_t j = 0; j < hist.values.size(); ++j) {
        rep.row({"band", format_number(hist.t_of(j)), format_number(pred[j] * bins)});
    }
    const auto cc = solv::check_not_constant(K);
    rep.row({"phi_at_0", "0", format_number(cc.phi0)});
    rep.row({"phi_at_log2", "0", format_number(cc.phi_log2)});
    rep.row({"margin", "0", format_number(cc.margin)});

    rep.check(std::abs(mass - 1.0) <= 1e-12, "mc-solv: histogram mass differs from 1");
    rep.check(cc.margin > 0.05, "mc-solv: phi(log 2) - phi(0) margin not above 0.05");
    if (rho >= 12.0 && n >= 1000000 && bins == 32 && K >= 40) {
        rep.check(sup_vs_phi <= 0.02,
                  "mc-solv: sup distance between histogram and phi exceeds 0.02");
    }
    for (std::size_t j = 0; j < hist.values.size(); ++j) {
        const double count = std::llround(hist.values[j] * static_cast<double>(n) / bins);
        const double expect = static_cast<double>(n) * pred[j];
        const double sigma =
            std::sqrt(static_cast<double>(n) * pred[j] * std::max(1.0 - pred[j], 0.0));
        rep.check(std::abs(count - expect) <= 3.0 * sigma,
                  "mc-solv: bin count outside 3 sigma of the band-mass prediction");
    }
}

void run_defect_sweep(Report& rep, const GlobalOpts& g, double rho,
                      const std::vector<double>& rho_primes) {
    const double tol = g.tol_or(1e-8);
    const auto basis = harmonic::regression_basis(harmonic::ChartKind::disk);

    rep.row({"rho_prime", "function", "ratio", "bound"});
    std::vector<double> max_ratio;
    for (double rp : rho_primes) {
        const auto p = weights::WeightProfile::from_rho(rho, rp, weights::WeightKind::phi);
        const double bound = 4.0 * kPi * p.A() / weights::normalizer(p);
        double worst = 0.0;
        for (const auto& f : basis) {
            const double ratio = harmonic::defect_ratio(p, f, tol);
            worst = std::max(worst, ratio);
            rep.row({format_number(rp), f.name, format_number(ratio), format_number(bound)});
            rep.check(ratio <= bound + 1e-8,
                      "defect-sweep: ratio above the 4*pi*A/normalizer bound");
            if (f.name == "one") {
                rep.check(ratio <= 1e-12, "defect-sweep: constant function ratio not 0");
            }
        }
        max_ratio.push_back(worst);
    }
    for (std::size_t i = 0; i + 1 < rho_primes.size(); ++i) {
        if (rho_primes[i] < rho_primes[i + 1]) {
            rep.check(max_ratio[i] > max_ratio[i + 1],
                      "defect-sweep: max ratio not decreasing in rho_prime");
        }
    }
}

void run_measure_gap(Report& rep, const GlobalOpts& g, const std::vector<double>& rhos,
                     const std::vector<double>& rho_primes) {
    const double tol = g.tol_or(1e-10);

    rep.row({"rho", "rho_prime", "gap", "bound", "identity_residual"});
    for (double rho : rhos) {
        std::vector<double> gaps;
        for (double rp : rho_primes) {
            const auto p_psi =
                weights::WeightProfile::from_rho(rho, rp, weights::WeightKind::psi);
            const auto p_phi =
                weights::WeightProfile::from_rho(rho, rp, weights::WeightKind::phi);
            const double gap = weights::measure_gap(p_psi, p_phi, tol);
            const double bound = weights::measure_gap_bound(p_psi, p_phi, tol);
            const double diff = weights::weight_difference_integral(p_psi, p_phi, tol);
            const double n_psi = weights::normalizer(p_psi, tol);
            const double n_phi = weights::normalizer(p_phi, tol);
            // The residual is relative to the normalizer scale: both sides
            // subtract quadratures of that size, so it is the only scale the
            // comparison can resolve.
            const double identity_residual =
                std::abs(diff - (n_psi - n_phi)) / (1.0 + n_psi + n_phi);
            gaps.push_back(gap);
            rep.row({format_number(rho), format_number(rp), format_number(gap),
                     format_number(bound), format_number(identity_residual)});
            rep.check(gap <= bound + 1e-6, "measure-gap: gap above the normalizer-ratio bound");
            rep.check(identity_residual <= 1e-8,
                      "measure-gap: difference integral does not match normalizer difference");
        }
        for (std::size_t i = 0; i + 1 < rho_primes.size(); ++i) {
            if (rho_primes[i] < rho_primes[i + 1]) {
                rep.check(gaps[i] > gaps[i + 1],
                          "measure-gap: gap not decreasing in rho_prime");
            }
        }
    }
}

void run_flows_check(Report& rep, bool refine) {
    std::vector<double> grid = {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0};
    if (refine) {
        std::vector<double> dense;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            dense.push_back(grid[i]);
            if (i + 1 < grid.size()) dense.push_back(0.5 * (grid[i] + grid[i + 1]));
        }
        grid = dense;
    }

    const hyp::UnitTangent frames[2] = {hyp::UnitTangent::identity(),
                                        hyp::UnitTangent(1.25, -0.5, 0.75, 0.5)};
    const Vec2 bases[3] = {{0.0, 1.0}, {1.0, 2.0}, {-0.7, 0.3}};

    rep.row({"s", "t", "frame_residual", "leaf_residual"});
    for (double s : grid) {
        for (double t : grid) {
            const double sp = s * std::exp(-t);

            double frame_res = 0.0;
            for (const auto& u : frames) {
                const auto lhs = hyp::horocycle_flow(s, hyp::geodesic_flow(t, u));
                const auto rhs = hyp::geodesic_flow(t, hyp::horocycle_flow(sp, u));
                frame_res = std::max(
                    {frame_res, std::abs(lhs.m11 - rhs.m11), std::abs(lhs.m12 - rhs.m12),
                     std::abs(lhs.m21 - rhs.m21), std::abs(lhs.m22 - rhs.m22)});
            }

            double leaf_res = 0.0;
            for (const Vec2& b : bases) {
                const hyp::HalfPlanePoint z(b.x, b.y);
                const auto lhs = solv::flow_Y(t, solv::flow_S(s, z));
                const auto rhs = solv::flow_S(sp, solv::flow_Y(t, z));
                leaf_res = std::max({leaf_res, std::abs(lhs.x - rhs.x),
                                     std::abs(lhs.y - rhs.y)});
            }

            rep.row({format_number(s), format_number(t), format_number(frame_res),
                     format_number(leaf_res)});
            rep.check(frame_res < 1e-12 && leaf_res < 1e-12,
                      "flows-check: commutation residual not below 1e-12");
            if (s == 0.0) {
                rep.check(frame_res == 0.0 && leaf_res == 0.0,
                          "flows-check: s = 0 rows must be exactly 0");
            }
        }
    }
}

void run_green_riesz(Report& rep, const GlobalOpts& g) {
    const double tol = g.tol_or(1e-8);

    struct Config {
        std::string name;
        std::function<double(Vec2)> phi;
        harmonic::TestFunction f;
        double r_in, r_out;
        double target;
    };
    std::vector<Config> configs;
    configs.push_back({"constant_weight",
                       [](Vec2) { return 1.0; },
                       {"x2_minus_y2", [](Vec2 z) { return z.x * z.x - z.y * z.y; },
                        [](Vec2) { return 0.0; }, 1.0},
                       0.0, 0.7, 1e-8});
    configs.push_back({"log_annulus",
                       [](Vec2 z) { return std::log(0.8) - std::log(std::hypot(z.x, z.y)); },
                       {"one", [](Vec2) { return 1.0; }, [](Vec2) { return 0.0; }, 1.0},
                       0.5, 0.8, 1e-8});
    configs.push_back({"square_annulus",
                       [](Vec2 z) { return z.x * z.x + z.y * z.y; },
                       {"x", [](Vec2 z) { return z.x; }, [](Vec2) { return 0.0; }, 1.0},
                       0.3, 0.6, 1e-7});

    rep.row({"name", "r_in", "r_out", "residual", "limit"});
    for (const auto& cfg : configs) {
        const double res = harmonic::green_riesz_residual(cfg.phi, cfg.f, cfg.r_in,
                                                          cfg.r_out, tol);
        const double limit = std::max(cfg.target, tol);
        rep.row({cfg.name, format_number(cfg.r_in), format_number(cfg.r_out),
                 format_number(res), format_number(limit)});
        rep.check(res <= limit, "green-riesz: residual above the limit for " + cfg.name);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for hyperbolic ball measures on a solvable suspension"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    app.set_config("--config", "", "Read options from a file of key = value lines");

    GlobalOpts g;
    app.add_option("--output", g.output, "Write the CSV report to this file (default stdout)");
    app.add_option("--threads", g.threads, "Worker threads for samplers")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Sampler seed")
        ->envname("EQUILAB_SEED")
        ->capture_default_str();
    app.add_option("--tol", g.tol, "Override the command's default tolerance");

    auto* cmd_limit = app.add_subcommand(
        "limit-integral", "Half-infinite limit integral against its closed form");

    auto* cmd_phihat = app.add_subcommand(
        "phihat-curve", "Limit density and its periodization on a uniform grid");
    double ph_t_lo = -1.0, ph_t_hi = 16.0;
    int ph_points = 851, ph_K = 40;
    cmd_phihat->add_option("--t-lo", ph_t_lo, "Grid start")->capture_default_str();
    cmd_phihat->add_option("--t-hi", ph_t_hi, "Grid end")->capture_default_str();
    cmd_phihat->add_option("--points", ph_points, "Grid size")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    cmd_phihat->add_option("--K", ph_K, "Periodization truncation")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();

    auto* cmd_band = app.add_subcommand(
        "band-convergence", "Band masses against the limit density, per rho");
    std::vector<double> bc_rhos = {4.0, 8.0, 12.0, 14.0};
    int bc_bins = 32;
    double bc_t_max = 8.0;
    cmd_band->add_option("--rho-list", bc_rhos, "Ball radii")
        ->delimiter(',')
        ->capture_default_str();
    cmd_band->add_option("--bins", bc_bins, "Comparison bands on [0, t-max]")
        ->check(CLI::Range(1, 4096))
        ->capture_default_str();
    cmd_band->add_option("--t-max", bc_t_max, "Comparison window end")->capture_default_str();

    auto* cmd_mc = app.add_subcommand(
        "mc-solv", "Monte Carlo pushforward to the circle coordinate of the quotient");
    double mc_rho = 12.0;
    std::uint64_t mc_n = 1000000;
    int mc_bins = 32, mc_K = 40;
    std::vector<std::int64_t> mc_lattice = {2, 1, 1, 1};
    cmd_mc->add_option("--rho", mc_rho, "Ball radius")->capture_default_str();
    cmd_mc->add_option("--n", mc_n, "Sample count")->capture_default_str();
    cmd_mc->add_option("--bins", mc_bins, "Histogram bins on [0,1)")
        ->check(CLI::Range(1, 4096))
        ->capture_default_str();
    cmd_mc->add_option("--K", mc_K, "Periodization truncation")
        ->check(CLI::Range(20, 100000))
        ->capture_default_str();
    cmd_mc->add_option("--lattice", mc_lattice, "Monodromy matrix entries a b c d")
        ->expected(4)
        ->capture_default_str();

    auto* cmd_defect = app.add_subcommand(
        "defect-sweep", "Harmonicity defect ratios of the log profile over a test basis");
    double ds_rho = 10.0;
    std::vector<double> ds_rho_primes = {2.0, 4.0, 8.0};
    cmd_defect->add_option("--rho", ds_rho, "Inner radius parameter")->capture_default_str();
    cmd_defect->add_option("--rho-prime-list", ds_rho_primes, "Annulus widths")
        ->delimiter(',')
        ->capture_default_str();

    auto* cmd_gap = app.add_subcommand(
        "measure-gap", "L1 distance between the normalized ramp and log measures");
    std::vector<double> mg_rhos = {4.0, 10.0};
    std::vector<double> mg_rho_primes = {2.0, 8.0};
    cmd_gap->add_option("--rho-list", mg_rhos, "Inner radius parameters")
        ->delimiter(',')
        ->capture_default_str();
    cmd_gap->add_option("--rho-prime-list", mg_rho_primes, "Annulus widths")
        ->delimiter(',')
        ->capture_default_str();

    auto* cmd_flows = app.add_subcommand(
        "flows-check", "Geodesic/horocycle commutation residuals on frames and the leaf");
    bool fc_refine = false;
    cmd_flows->add_flag("--refine", fc_refine, "Insert grid midpoints");

    auto* cmd_green = app.add_subcommand(
        "green-riesz", "Green identity residuals for three weight/test pairs");

    CLI11_PARSE(app, argc, argv);

    Report rep;
    try {
        if (*cmd_limit) run_limit_integral(rep, g);
        if (*cmd_phihat) run_phihat_curve(rep, ph_t_lo, ph_t_hi, ph_points, ph_K);
        if (*cmd_band) run_band_convergence(rep, g, bc_rhos, bc_bins, bc_t_max);
        if (*cmd_mc) run_mc_solv(rep, g, mc_rho, mc_n, mc_bins, mc_K, mc_lattice);
        if (*cmd_defect) run_defect_sweep(rep, g, ds_rho, ds_rho_primes);
        if (*cmd_gap) run_measure_gap(rep, g, mg_rhos, mg_rho_primes);
        if (*cmd_flows) run_flows_check(rep, fc_refine);
        if (*cmd_green) run_green_riesz(rep, g);
    } catch (const equilab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (g.output.empty()) {
        std::cout << rep.csv_text.str();
    } else {
        std::ofstream out(g.output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file " << g.output << "\n";
            return 2;
        }
        out << rep.csv_text.str();
    }

    for (const auto& v : rep.violations) {
        std::cerr << "CHECK FAILED: " << v << "\n";
    }
    return rep.violations.empty() ? 0 : 1;
}
