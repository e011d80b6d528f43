// SPDX-License-Identifier: Apache-2.0

#include "qtr/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qtr/io.hpp"
#include "qtr/qtranslate.hpp"

namespace qtr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Vec2 = std::array<double, 2>;

Vec2 operator+(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
Vec2 operator*(double s, Vec2 a) { return {s * a[0], s * a[1]}; }
double dot(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
double norm(Vec2 a) { return std::hypot(a[0], a[1]); }

Vec2 unit_tangent(Vec2 p)
{
    const auto j = surface_jet(p[0], p[1]);
    const double g = std::hypot(j.px, j.py);
    if (g < 1e-8)
        throw std::runtime_error("continuation: gradient vanishes near (" + io::format_double(p[0]) + ", " +
                                 io::format_double(p[1]) + ")");
    return {-j.py / g, j.px / g};
}

/// Newton steps along the gradient onto p = 0.
Vec2 project(Vec2 p)
{
    for (int it = 0; it < 50; ++it) {
        const auto j = surface_jet(p[0], p[1]);
        if (std::abs(j.p) < 1e-15)
            return p;
        const double g2 = j.px * j.px + j.py * j.py;
        if (g2 < 1e-16)
            break;
        p = p - (j.p / g2) * Vec2{j.px, j.py};
    }
    const double residual = std::abs(surface_jet(p[0], p[1]).p);
    if (residual > 1e-12)
        throw std::runtime_error("continuation: Newton projection failed, |p| = " + io::format_double(residual) +
                                 " at (" + io::format_double(p[0]) + ", " + io::format_double(p[1]) + ")");
    return p;
}

/// One RK4 step of the unit-speed tangent flow followed by projection.
Vec2 advance(Vec2 p, double h)
{
    const Vec2 k1 = unit_tangent(p);
    const Vec2 k2 = unit_tangent(p + (0.5 * h) * k1);
    const Vec2 k3 = unit_tangent(p + (0.5 * h) * k2);
    const Vec2 k4 = unit_tangent(p + h * k3);
    return project(p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// Length of one loop around the origin, measured by winding angle.
double coarse_length(Vec2 seed)
{
    constexpr double h = 1e-3;
    constexpr std::size_t max_steps = 1'000'000;
    Vec2 p = seed;
    double winding = 0.0;
    for (std::size_t step = 1; step <= max_steps; ++step) {
        const Vec2 q = advance(p, h);
        double d = std::atan2(q[1], q[0]) - std::atan2(p[1], p[0]);
        if (d > std::numbers::pi)
            d -= kTwoPi;
        if (d < -std::numbers::pi)
            d += kTwoPi;
        if (winding + d >= kTwoPi) {
            const double frac = (kTwoPi - winding) / d;
            return (static_cast<double>(step) - 1.0 + frac) * h;
        }
        winding += d;
        p = q;
    }
    throw std::runtime_error("continuation: curve did not close after " + std::to_string(max_steps) + " steps");
}

} // namespace

double char_poly_surface(std::span<const double> w)
{
    if (w.empty() || w.size() % 2 != 0)
        throw std::invalid_argument("char_poly_surface: expected 2n coordinates");
    const double n = static_cast<double>(w.size() / 2);
    double s = 0.0;
    for (double c : w)
        s += std::cos(kTwoPi * c);
    return 2.0 * (2.0 * n - 1.0) - 2.0 * s;
}

SurfaceJet surface_jet(double x, double y)
{
    const double cx = std::cos(kTwoPi * x);
    const double cy = std::cos(kTwoPi * y);
    const double sx = std::sin(kTwoPi * x);
    const double sy = std::sin(kTwoPi * y);
    const double a = 2.0 * kTwoPi;
    const double b = 2.0 * kTwoPi * kTwoPi;
    return SurfaceJet{2.0 - 2.0 * cx - 2.0 * cy, a * sx, a * sy, b * cx, b * cy, 0.0};
}

double level_set_curvature(double x, double y)
{
    const auto j = surface_jet(x, y);
    const double g = std::hypot(j.px, j.py);
    if (g < 1e-8)
        throw std::domain_error("level_set_curvature: |grad p| < 1e-8 at (" + io::format_double(x) + ", " +
                                io::format_double(y) + ")");
    return (j.pxx * j.py * j.py - 2.0 * j.pxy * j.px * j.py + j.pyy * j.px * j.px) / (g * g * g);
}

SurfaceMeasure LevelCurve::measure() const
{
    SurfaceMeasure mu;
    mu.nodes.reserve(nodes.size());
    for (const auto &p : nodes)
        mu.nodes.emplace_back(p[0], p[1]);
    mu.weights = weights;
    return mu;
}

LevelCurve trace_zero_component(std::size_t nodes)
{
    if (nodes < kMinCurveNodes)
        throw std::invalid_argument("trace_zero_component: need at least " + std::to_string(kMinCurveNodes) +
                                    " nodes");
    const Vec2 seed = project({0.25, 0.0});
    const Vec2 seed_tangent = unit_tangent(seed);
    double length = coarse_length(seed);

    LevelCurve curve;
    for (int iteration = 0; iteration < 12; ++iteration) {
        const double h = length / static_cast<double>(nodes);
        curve.nodes.assign(1, seed);
        Vec2 p = seed;
        for (std::size_t i = 1; i <= nodes; ++i) {
            p = advance(p, h);
            if (i < nodes)
                curve.nodes.push_back(p);
        }
        const Vec2 gap = p - seed;
        curve.closure_gap = norm(gap);
        if (curve.closure_gap < 1e-13)
            break;
        length -= dot(gap, seed_tangent);
    }
    if (curve.closure_gap > 1e-8)
        throw std::runtime_error("trace_zero_component: loop failed to close, gap " +
                                 io::format_double(curve.closure_gap));
    curve.length = length;
    curve.weights.assign(nodes, length / static_cast<double>(nodes));
    curve.curvatures = curvature_profile(curve);
    return curve;
}

std::vector<double> curvature_profile(const LevelCurve &curve)
{
    std::vector<double> k(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i)
        k[i] = level_set_curvature(curve.nodes[i][0], curve.nodes[i][1]);
    return k;
}

nlohmann::ordered_json CounterexampleReport::to_json() const
{
    nlohmann::ordered_json j;
    j["norm_s2"] = norm_s2;
    j["residual_rel"] = residual_rel;
    j["residual_rel_full"] = residual_rel_full;
    j["selfadjoint_defect"] = selfadjoint_defect;
    j["fourier_side_residual"] = fourier_side_residual;
    j["decay_exponent"] = spectrum.fit_exponent;
    j["decay_stderr"] = spectrum.fit_stderr;
    j["decay_range"] = {spectrum.fit_range.lo, spectrum.fit_range.hi};
    nlohmann::ordered_json norms = nlohmann::ordered_json::object();
    for (const auto &[p, v] : schatten_norms) {
        char key[32];
        std::snprintf(key, sizeof key, "%g", p);
        norms[key] = v;
    }
    j["schatten_norms"] = norms;
    return j;
}

Counterexample build_counterexample(const FockConfig &cfg, const LevelCurve &curve)
{
    cfg.validate();
    if (cfg.n != 1)
        throw std::invalid_argument("build_counterexample: only n = 1 is supported");
    if (cfg.levels < 64)
        throw std::invalid_argument("build_counterexample: need at least 64 levels");
    const SurfaceMeasure sigma = curve.measure();
    FockOperator a = weyl_of_measure(sigma, cfg);

    CounterexampleReport rep;
    const auto &m = a.matrix();
    rep.norm_s2 = m.norm();
    rep.selfadjoint_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();

    const DifferenceSpec spec = eq4_spec(1);
    const FockOperator da = difference_apply(spec, a);
    const auto half = static_cast<Eigen::Index>(cfg.levels / 2);
    rep.residual_rel = da.matrix().topLeftCorner(half, half).norm() / m.topLeftCorner(half, half).norm();
    rep.residual_rel_full = da.matrix().norm() / rep.norm_s2;

    for (std::size_t i = 0; i < sigma.nodes.size(); ++i)
        rep.fourier_side_residual = std::max(
            rep.fourier_side_residual, std::abs(characteristic_poly(spec, sigma.nodes[i])) * sigma.weights[i]);

    rep.spectrum = spectrum_profile(a);
    for (double p : kCounterexamplePGrid)
        rep.schatten_norms[p] = schatten_norm(std::span<const double>(rep.spectrum.values), p);
    return Counterexample{std::move(a), std::move(rep)};
}

Counterexample build_counterexample(const FockConfig &cfg, std::size_t nodes)
{
    return build_counterexample(cfg, trace_zero_component(nodes));
}

cplx measure_fourier(const LevelCurve &curve, std::array<double, 2> xi)
{
    cplx s = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i)
        s += curve.weights[i] * std::polar(1.0, -kTwoPi * dot(xi, curve.nodes[i]));
    return s;
}

std::vector<RayDecay> fourier_decay_probe(const LevelCurve &curve, const std::vector<std::array<double, 2>> &rays,
                                          const std::vector<double> &radii)
{
    if (radii.size() < 3)
        throw std::invalid_argument("fourier_decay_probe: need at least three radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || radii[i] > 100.0)
            throw std::invalid_argument("fourier_decay_probe: radii must lie in (0, 100]");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::invalid_argument("fourier_decay_probe: radii must be ascending");
    }
    std::vector<RayDecay> out;
    for (const auto &ray : rays) {
        const double len = norm(ray);
        if (!(len > 0.0))
            throw std::invalid_argument("fourier_decay_probe: zero ray direction");
        RayDecay d;
        d.direction = {ray[0] / len, ray[1] / len};
        d.radii = radii;
        d.magnitudes.resize(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const cplx v = measure_fourier(curve, {radii[i] * d.direction[0], radii[i] * d.direction[1]});
            d.magnitudes[i] = std::abs(v);
            d.max_imag = std::max(d.max_imag, std::abs(v.imag()));
        }
        std::vector<double> pr;
        std::vector<double> pv;
        for (std::size_t i = 1; i + 1 < radii.size(); ++i)
            if (d.magnitudes[i] >= d.magnitudes[i - 1] && d.magnitudes[i] >= d.magnitudes[i + 1] &&
                d.magnitudes[i] > 0.0) {
                pr.push_back(radii[i]);
                pv.push_back(d.magnitudes[i]);
            }
        d.peaks = pr.size();
        if (pr.size() < 3) {
            pr = radii;
            pv = d.magnitudes;
        }
        // fit log v = a + b log r directly (radii are not 1..k indices)
        const std::size_t cnt = pr.size();
        double mx = 0.0;
        double my = 0.0;
        for (std::size_t i = 0; i < cnt; ++i) {
            mx += std::log(pr[i]);
            my += std::log(pv[i]);
        }
        mx /= static_cast<double>(cnt);
        my /= static_cast<double>(cnt);
        double sxx = 0.0;
        double sxy = 0.0;
        for (std::size_t i = 0; i < cnt; ++i) {
            const double dx = std::log(pr[i]) - mx;
            sxx += dx * dx;
            sxy += dx * (std::log(pv[i]) - my);
        }
        d.exponent = sxy / sxx;
        if (cnt > 2) {
            double ssr = 0.0;
            for (std::size_t i = 0; i < cnt; ++i) {
                const double r = std::log(pv[i]) - (my + d.exponent * (std::log(pr[i]) - mx));
                ssr += r * r;
            }
            d.standard_error = std::sqrt(ssr / static_cast<double>(cnt - 2) / sxx);
        }
        out.push_back(std::move(d));
    }
    return out;
}

ZeroScan zero_scan(int grid)
{
    if (grid < 8)
        throw std::invalid_argument("zero_scan: grid must be >= 8");
    const auto g = static_cast<std::size_t>(grid);
    std::vector<int> sign(g * g);
    auto coord = [grid](int i) { return (i + 0.5) / grid - 0.5; };
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double w[2] = {coord(i), coord(j)};
            sign[static_cast<std::size_t>(i) * g + static_cast<std::size_t>(j)] = char_poly_surface(w) < 0.0 ? -1 : 1;
        }

    std::vector<std::size_t> parent(g * g);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t a) {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    };
    ZeroScan scan;
    scan.grid = grid;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            const std::size_t a = i * g + j;
            for (const std::size_t b : {((i + 1) % g) * g + j, i * g + (j + 1) % g}) {
                if (sign[a] == sign[b])
                    parent[find(a)] = find(b);
                else
                    ++scan.crossings;
            }
        }
    std::vector<bool> seen(g * g, false);
    for (std::size_t a = 0; a < g * g; ++a) {
        const std::size_t r = find(a);
        if (!seen[r]) {
            seen[r] = true;
            (sign[a] < 0 ? scan.negative_components : scan.positive_components)++;
        }
    }
    // the origin sits at the corner shared by the four central cells
    const std::size_t centre = (g / 2) * g + g / 2;
    const std::size_t root = find(centre);
    for (std::size_t k = 0; k < g; ++k)
        for (const std::size_t a : {k, (g - 1) * g + k, k * g, k * g + g - 1})
            if (find(a) == root)
                scan.origin_component_wraps = true;
    return scan;
}

void write_curve_csv(std::ostream &os, const LevelCurve &curve)
{
    io::write_header(os, {"x", "y", "weight", "curvature"});
    for (std::size_t i = 0; i < curve.size(); ++i)
        io::write_csv_row(os, {curve.nodes[i][0], curve.nodes[i][1], curve.weights[i], curve.curvatures[i]});
}

} // namespace qtr
