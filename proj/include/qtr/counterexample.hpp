// SPDX-License-Identifier: Apache-2.0
//
// The Weyl transform of arclength measure on a level curve of the
// characteristic polynomial
//
//   p(x, y) = 2(2n - 1) - 2 sum_j (cos 2 pi x_j + cos 2 pi y_j),
//
// which solves the difference equation built by eq4_spec(). Curve work is
// done for n = 1, where the component through (1/4, 0) is the closed curve
// cos 2 pi x + cos 2 pi y = 1.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "qtr/fock.hpp"
#include "qtr/schatten.hpp"
#include "qtr/transforms.hpp"

namespace qtr {

/// p(w) for w = (x_1..x_n, y_1..y_n).
double char_poly_surface(std::span<const double> w);

/// Value and exact partial derivatives of p for n = 1.
struct SurfaceJet
{
    double p;
    double px;
    double py;
    double pxx;
    double pyy;
    double pxy;
};

SurfaceJet surface_jet(double x, double y);

/// Signed curvature of the level set of p through (x, y). Throws std::domain_error
/// when |grad p| < 1e-8.
double level_set_curvature(double x, double y);

/// Closed polyline on the zero set, nodes equally spaced in arclength
/// (cyclic: node size() would coincide with node 0).
struct LevelCurve
{
    std::vector<std::array<double, 2>> nodes;
    std::vector<double> weights;
    std::vector<double> curvatures;
    double length = 0.0;
    /// Distance between the continuation end point and the seed.
    double closure_gap = 0.0;

    std::size_t size() const { return nodes.size(); }
    SurfaceMeasure measure() const;
};

inline constexpr std::size_t kMinCurveNodes = 64;

/// Arclength continuation from (1/4, 0) with Newton projection onto p = 0.
/// Throws std::runtime_error when continuation leaves the basin or fails to close.
LevelCurve trace_zero_component(std::size_t nodes);

/// Curvature at every node of `curve`.
std::vector<double> curvature_profile(const LevelCurve &curve);

struct CounterexampleReport
{
    double norm_s2 = 0.0;
    /// ||D A||_{S^2} / ||A||_{S^2} on the leading levels/2 block.
    double residual_rel = 0.0;
    /// Same ratio on the full truncated matrix; dominated by the truncation edge.
    double residual_rel_full = 0.0;
    /// max |A - A^*|
    double selfadjoint_defect = 0.0;
    /// max_i |p(z_i)| w_i over the curve nodes.
    double fourier_side_residual = 0.0;
    SpectrumProfile spectrum;
    std::map<double, double> schatten_norms;

    nlohmann::ordered_json to_json() const;
};

struct Counterexample
{
    FockOperator op;
    CounterexampleReport report;
};

inline const std::vector<double> kCounterexamplePGrid{2.0, 3.0, 4.0, 5.0, 8.0};

/// A = W(sigma) for the traced curve, checked against the eq4_spec(1) difference equation.
Counterexample build_counterexample(const FockConfig &cfg, const LevelCurve &curve);
Counterexample build_counterexample(const FockConfig &cfg, std::size_t nodes);

/// sigma_hat(xi) = sum_i w_i exp(-2 pi i xi . z_i)
cplx measure_fourier(const LevelCurve &curve, std::array<double, 2> xi);

struct RayDecay
{
    std::array<double, 2> direction{};
    std::vector<double> radii;
    std::vector<double> magnitudes;
    /// Largest |imag sigma_hat| seen on the ray.
    double max_imag = 0.0;
    double exponent = 0.0;
    double standard_error = 0.0;
    /// Local maxima of |sigma_hat| used for the envelope fit.
    std::size_t peaks = 0;
};

/// |sigma_hat(r u)| along each ray; the log-log slope is fitted to the local
/// maxima of |sigma_hat|, which trace the envelope of the oscillation.
std::vector<RayDecay> fourier_decay_probe(const LevelCurve &curve, const std::vector<std::array<double, 2>> &rays,
                                          const std::vector<double> &radii);

/// Sign scan of p (n = 1) over one period cell [-1/2, 1/2)^2 with periodic wrap.
struct ZeroScan
{
    int grid = 0;
    int negative_components = 0;
    int positive_components = 0;
    /// Whether the negative component around the origin reaches the cell edge.
    bool origin_component_wraps = false;
    /// Sign-change edges between neighbouring samples.
    std::size_t crossings = 0;
};

ZeroScan zero_scan(int grid);

/// Columns x, y, weight, curvature.
void write_curve_csv(std::ostream &os, const LevelCurve &curve);

} // namespace qtr
