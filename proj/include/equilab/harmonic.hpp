#pragma once

#include <functional>
#include <string>
#include <vector>

#include "equilab/types.hpp"
#include "equilab/weights.hpp"

namespace equilab::harmonic {

// A C² test function on a plane chart. laplacian_e, when set, is the exact
// Euclidean Laplacian and is preferred over finite differences everywhere;
// sup_norm must dominate |eval| on the chart region the function is used on.
struct TestFunction {
    std::string name;
    std::function<double(Vec2)> eval;
    std::function<double(Vec2)> laplacian_e;  // empty: fall back to 5-point FD
    double sup_norm = 1.0;
};

// Which conformal chart a node measure lives in. The hyperbolic Laplacian is
// y² Δ_E on the half-plane and ((1-|z|²)²/4) Δ_E on the unit disk.
enum class ChartKind { halfplane, disk };

enum class LaplaceMethod { boundary, direct };

// |∫_Ω (φ Δ_E f - f Δ_E φ) v_E  -  ∮_{∂Ω} (φ ∂f/∂n - f ∂φ/∂n) σ_E| on the
// annulus r_in < |z| < r_out (r_in = 0 gives the disk), outward normals on
// both circles. Normal derivatives use central differences with step 1e-5;
// Δ_E φ uses Richardson-extrapolated 5-point stencils (O(h⁴) truncation),
// Δ_E f prefers f.laplacian_e.
double green_riesz_residual(const std::function<double(Vec2)>& phi, const TestFunction& f,
                            double r_in, double r_out, double tol = 1e-8);

// ∫_D φ Δ_P f v_P for the phi-kind weight profile, which equals
// ∫ φ Δ_E f v_E. The boundary method evaluates the closed form
// A (∮_{|z|=R'} f σ_E / R' - ∮_{|z|=R} f σ_E / R); direct integrates the
// 2D form, split at the interface circles |z| = R and |z| = R'.
double weighted_laplacian_integral(const weights::WeightProfile& p, const TestFunction& f,
                                   LaplaceMethod method, double tol = 1e-8);

// |∫ φ Δ_P f v_P| / (sup_norm · normalizer). Bounded by 4πA/normalizer up to
// quadrature slack; the vanishing of this ratio as ρ' grows is the
// harmonicity mechanism for the weighted limit measures.
double defect_ratio(const weights::WeightProfile& p, const TestFunction& f,
                    double tol = 1e-8);

// max over the basis of |Σ_nodes weight · Δ_P f(node)| / max_nodes |Δ_P f|,
// with nodes mapped through leaf_chart (identity when empty) into the given
// chart. A node landing outside the chart raises "chart-error".
double harmonicity_defect(const NodeMeasure& mu, const std::vector<TestFunction>& basis,
                          ChartKind chart,
                          const std::function<Vec2(Vec2)>& leaf_chart = {});

// The fixed 8-function test basis for the chart: bounded C² functions with
// analytic Euclidean Laplacians and exact sup-norm bounds. Disk: polynomials
// and separable trig. Half-plane: bounded functions of t = log y and
// u = x/y, so that y² Δ_E stays bounded on the whole chart.
std::vector<TestFunction> regression_basis(ChartKind chart);

}  // namespace equilab::harmonic
