// SPDX-License-Identifier: Apache-2.0

#include "qtr/transforms.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtr/io.hpp"
#include "qtr/parallel.hpp"

namespace qtr {

PhaseGrid::PhaseGrid(int n, double side, int points_per_axis, std::size_t point_cap)
    : n_(n), side_(side), m_(points_per_axis), total_(1)
{
    if (n < 1)
        throw std::invalid_argument("PhaseGrid: n must be >= 1");
    if (!(side > 0.0) || !std::isfinite(side))
        throw std::invalid_argument("PhaseGrid: side must be positive");
    if (points_per_axis < 2 || points_per_axis % 2 != 0)
        throw std::invalid_argument("PhaseGrid: points per axis must be even and >= 2");
    for (int a = 0; a < 2 * n; ++a) {
        total_ *= static_cast<std::size_t>(points_per_axis);
        if (total_ > point_cap)
            throw std::invalid_argument("PhaseGrid: " + std::to_string(points_per_axis) + "^" +
                                        std::to_string(2 * n) + " points exceeds cap " + std::to_string(point_cap));
    }
}

double PhaseGrid::cell_volume() const { return std::pow(spacing(), 2 * n_); }

PhaseGrid PhaseGrid::reciprocal() const { return PhaseGrid(n_, m_ / side_, m_); }

std::vector<int> PhaseGrid::unflatten(std::size_t flat) const
{
    std::vector<int> idx(static_cast<std::size_t>(axes()));
    for (int a = axes() - 1; a >= 0; --a) {
        idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % static_cast<std::size_t>(m_));
        flat /= static_cast<std::size_t>(m_);
    }
    return idx;
}

std::size_t PhaseGrid::flatten(const std::vector<int> &index) const
{
    std::size_t flat = 0;
    for (int i : index)
        flat = flat * static_cast<std::size_t>(m_) + static_cast<std::size_t>(i);
    return flat;
}

std::vector<double> PhaseGrid::node_coords(std::size_t flat) const
{
    const auto idx = unflatten(flat);
    std::vector<double> c(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        c[a] = coordinate(idx[a]);
    return c;
}

PhasePoint PhaseGrid::node(std::size_t flat) const { return PhasePoint::from_coords(node_coords(flat)); }

bool PhaseGrid::on_boundary(std::size_t flat) const
{
    for (int i : unflatten(flat))
        if (i == 0 || i == m_ - 1)
            return true;
    return false;
}

bool PhaseGrid::compatible(const PhaseGrid &other) const
{
    return n_ == other.n_ && m_ == other.m_ && std::abs(side_ - other.side_) <= 1e-12 * side_;
}

PhaseFunction::PhaseFunction(PhaseGrid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.total_points())
        throw std::invalid_argument("PhaseFunction: " + std::to_string(values_.size()) + " values for a grid of " +
                                    std::to_string(grid_.total_points()) + " nodes");
    for (const auto &v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("PhaseFunction: non-finite sample");
}

PhaseFunction PhaseFunction::zeros(const PhaseGrid &grid)
{
    return PhaseFunction(grid, std::vector<cplx>(grid.total_points(), 0.0));
}

PhaseFunction PhaseFunction::sample(const PhaseGrid &grid, const std::function<cplx(const PhasePoint &)> &fn)
{
    std::vector<cplx> v(grid.total_points());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = fn(grid.node(i));
    return PhaseFunction(grid, std::move(v));
}

PhaseFunction PhaseFunction::delta(const PhaseGrid &grid)
{
    std::vector<cplx> v(grid.total_points(), 0.0);
    const std::vector<int> centre(static_cast<std::size_t>(grid.axes()), grid.points_per_axis() / 2);
    v[grid.flatten(centre)] = 1.0 / grid.cell_volume();
    return PhaseFunction(grid, std::move(v));
}

double PhaseFunction::lp_norm(double p) const
{
    if (std::isinf(p))
        return max_abs();
    if (!(p > 0.0))
        throw std::invalid_argument("lp_norm: p must be positive");
    double s = 0.0;
    for (const auto &v : values_)
        s += std::pow(std::abs(v), p);
    return std::pow(s * grid_.cell_volume(), 1.0 / p);
}

double PhaseFunction::max_abs() const
{
    double m = 0.0;
    for (const auto &v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

double PhaseFunction::boundary_mass_fraction() const
{
    double total = 0.0;
    double edge = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double a = std::abs(values_[i]);
        total += a;
        if (a != 0.0 && grid_.on_boundary(i))
            edge += a;
    }
    return total > 0.0 ? edge / total : 0.0;
}

namespace {

void require_compatible(const PhaseGrid &a, const PhaseGrid &b)
{
    if (!a.compatible(b))
        throw std::invalid_argument("PhaseFunction: grids differ");
}

} // namespace

PhaseFunction PhaseFunction::operator+(const PhaseFunction &other) const
{
    require_compatible(grid_, other.grid_);
    auto v = values_;
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] += other.values_[i];
    return PhaseFunction(grid_, std::move(v));
}

PhaseFunction PhaseFunction::operator-(const PhaseFunction &other) const { return *this + other * -1.0; }

PhaseFunction PhaseFunction::operator*(cplx s) const
{
    auto v = values_;
    for (auto &x : v)
        x *= s;
    return PhaseFunction(grid_, std::move(v));
}

PhaseFunction PhaseFunction::hadamard(const PhaseFunction &other) const
{
    require_compatible(grid_, other.grid_);
    auto v = values_;
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] *= other.values_[i];
    return PhaseFunction(grid_, std::move(v));
}

double max_abs_difference(const PhaseFunction &a, const PhaseFunction &b) { return (a - b).max_abs(); }

void SurfaceMeasure::validate() const
{
    if (nodes.empty())
        throw std::invalid_argument("SurfaceMeasure: need at least one node");
    if (nodes.size() != weights.size())
        throw std::invalid_argument("SurfaceMeasure: node and weight counts differ");
    const auto n = nodes.front().dim();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].dim() != n)
            throw std::invalid_argument("SurfaceMeasure: mixed node dimensions");
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw std::invalid_argument("SurfaceMeasure: weights must be positive and finite");
    }
}

double SurfaceMeasure::total_mass() const
{
    double s = 0.0;
    for (double w : weights)
        s += w;
    return s;
}

namespace {

// tr((D_c (x) D_{c+1} (x) ...) X_sub) for the size x size block of X at (row0, col0).
cplx trace_factored(const std::vector<Eigen::MatrixXcd> &d, const Eigen::MatrixXcd &x, Eigen::Index row0,
                    Eigen::Index col0, std::size_t c, Eigen::Index size)
{
    const Eigen::Index n_lv = d[c].rows();
    if (c + 1 == d.size())
        return d[c].cwiseProduct(x.block(row0, col0, n_lv, n_lv).transpose()).sum();
    const Eigen::Index sub = size / n_lv;
    cplx s = 0.0;
    for (Eigen::Index j = 0; j < n_lv; ++j)
        for (Eigen::Index i = 0; i < n_lv; ++i)
            s += d[c](i, j) * trace_factored(d, x, row0 + j * sub, col0 + i * sub, c + 1, sub);
    return s;
}

} // namespace

cplx fourier_wigner_at(const FockOperator &x, const PhasePoint &w)
{
    if (w.dim() != static_cast<std::size_t>(x.config().n))
        throw std::invalid_argument("fourier_wigner: point dimension does not match operator");
    if (w.dim() == 1)
        return detail::trace_displacement_product(detail::displacement_parameter(-w.x()[0], -w.y()[0]), x.matrix());
    std::vector<Eigen::MatrixXcd> factors;
    for (std::size_t c = 0; c < w.dim(); ++c)
        factors.push_back(displacement_1d(-w.x()[c], -w.y()[c], x.config().levels));
    return trace_factored(factors, x.matrix(), 0, 0, 0, x.matrix().rows());
}

PhaseFunction fourier_wigner(const FockOperator &x, const PhaseGrid &grid)
{
    if (grid.n() != x.config().n)
        throw std::invalid_argument("fourier_wigner: grid n = " + std::to_string(grid.n()) +
                                    " but operator n = " + std::to_string(x.config().n));
    std::vector<cplx> v(grid.total_points());
    if (x.is_zero())
        return PhaseFunction(grid, std::move(v));
    parallel_for(v.size(), [&](std::size_t i) { v[i] = fourier_wigner_at(x, grid.node(i)); });
    return PhaseFunction(grid, std::move(v));
}

namespace {

FockOperator weighted_rho_sum(const std::vector<PhasePoint> &points, const std::vector<cplx> &coeffs,
                              const FockConfig &cfg)
{
    if (cfg.n == 1) {
        std::vector<cplx> params;
        std::vector<cplx> c;
        params.reserve(points.size());
        c.reserve(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (coeffs[i] == 0.0)
                continue;
            params.push_back(detail::displacement_parameter(points[i].x()[0], points[i].y()[0]));
            c.push_back(coeffs[i]);
        }
        return FockOperator(cfg, detail::accumulate_displacements(params, c, cfg.levels));
    }
    const auto d = static_cast<Eigen::Index>(cfg.dim());
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 0; i < points.size(); ++i)
        if (coeffs[i] != 0.0)
            acc += coeffs[i] * rho_matrix(points[i], cfg).matrix();
    return FockOperator(cfg, std::move(acc));
}

} // namespace

FockOperator weyl_transform(const PhaseFunction &f, const FockConfig &cfg, WeylOptions options)
{
    cfg.validate();
    const auto &grid = f.grid();
    if (grid.n() != cfg.n)
        throw std::invalid_argument("weyl_transform: grid n does not match config n");
    const double edge = f.boundary_mass_fraction();
    if (edge > kBoundaryMassThreshold) {
        const std::string msg = "weyl_transform: boundary mass fraction " + io::format_double(edge) +
                                " exceeds " + io::format_double(kBoundaryMassThreshold);
        if (options.boundary == BoundaryPolicy::strict)
            throw std::runtime_error(msg);
        std::cerr << "warning: " << msg << '\n';
    }
    const double vol = grid.cell_volume();
    std::vector<PhasePoint> points;
    std::vector<cplx> coeffs;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0.0)
            continue;
        points.push_back(grid.node(i));
        coeffs.push_back(f[i] * vol);
    }
    return weighted_rho_sum(points, coeffs, cfg);
}

FockOperator weyl_of_measure(const SurfaceMeasure &mu, const FockConfig &cfg, double node_bound)
{
    mu.validate();
    cfg.validate();
    if (mu.n() != static_cast<std::size_t>(cfg.n))
        throw std::invalid_argument("weyl_of_measure: measure lives in R^" + std::to_string(2 * mu.n()) +
                                    " but config n = " + std::to_string(cfg.n));
    for (const auto &z : mu.nodes)
        for (double c : z.coords())
            if (std::abs(c) > node_bound)
                throw std::invalid_argument("weyl_of_measure: node component " + io::format_double(c) +
                                            " outside representable region |c| <= " + io::format_double(node_bound));
    std::vector<cplx> coeffs(mu.weights.begin(), mu.weights.end());
    return weighted_rho_sum(mu.nodes, coeffs, cfg);
}

namespace {

/// K[k][j] = scale * exp(sign 2 pi i (k - M/2)(j - M/2) / M)
Eigen::MatrixXcd dft_kernel(int m, int sign, double scale)
{
    Eigen::MatrixXcd k(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            long long p = static_cast<long long>(r - m / 2) * (c - m / 2);
            p %= m;
            k(r, c) = std::polar(scale, sign * 2.0 * std::numbers::pi * static_cast<double>(p) / m);
        }
    return k;
}

void transform_axis(std::vector<cplx> &data, const PhaseGrid &grid, int axis, const Eigen::MatrixXcd &kernel)
{
    const auto m = static_cast<std::size_t>(grid.points_per_axis());
    std::size_t stride = 1;
    for (int a = grid.axes() - 1; a > axis; --a)
        stride *= m;
    const std::size_t outer = data.size() / (m * stride);
    parallel_for(outer * stride, [&](std::size_t line) {
        const std::size_t base = (line / stride) * m * stride + line % stride;
        Eigen::VectorXcd in(static_cast<Eigen::Index>(m));
        for (std::size_t j = 0; j < m; ++j)
            in(static_cast<Eigen::Index>(j)) = data[base + j * stride];
        const Eigen::VectorXcd out = kernel * in;
        for (std::size_t j = 0; j < m; ++j)
            data[base + j * stride] = out(static_cast<Eigen::Index>(j));
    });
}

/// Applies the kernel with the given sign along each axis.
PhaseFunction fourier_with_signs(const PhaseFunction &f, const std::vector<int> &signs)
{
    const auto &grid = f.grid();
    std::vector<cplx> data = f.values();
    const Eigen::MatrixXcd plus = dft_kernel(grid.points_per_axis(), +1, grid.spacing());
    const Eigen::MatrixXcd minus = dft_kernel(grid.points_per_axis(), -1, grid.spacing());
    for (int a = 0; a < grid.axes(); ++a)
        transform_axis(data, grid, a, signs[static_cast<std::size_t>(a)] > 0 ? plus : minus);
    return PhaseFunction(grid.reciprocal(), std::move(data));
}

} // namespace

PhaseFunction symplectic_fourier(const PhaseFunction &f)
{
    const auto &grid = f.grid();
    const int n = grid.n();
    // x axes carry e^{-2 pi i eta.x}, y axes e^{+2 pi i xi.y}
    std::vector<int> signs(static_cast<std::size_t>(2 * n), -1);
    for (int a = n; a < 2 * n; ++a)
        signs[static_cast<std::size_t>(a)] = +1;
    const PhaseFunction tmp = fourier_with_signs(f, signs);
    // tmp is indexed (eta, xi); reorder to (xi, eta)
    const PhaseGrid out_grid = tmp.grid();
    std::vector<cplx> out(tmp.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto idx = out_grid.unflatten(i);
        std::vector<int> src(idx.size());
        for (int a = 0; a < n; ++a) {
            src[static_cast<std::size_t>(a)] = idx[static_cast<std::size_t>(n + a)];
            src[static_cast<std::size_t>(n + a)] = idx[static_cast<std::size_t>(a)];
        }
        out[i] = tmp[out_grid.flatten(src)];
    }
    return PhaseFunction(out_grid, std::move(out));
}

PhaseFunction ordinary_fourier(const PhaseFunction &f)
{
    return fourier_with_signs(f, std::vector<int>(static_cast<std::size_t>(f.grid().axes()), -1));
}

PhaseFunction inverse_fourier(const PhaseFunction &f)
{
    return fourier_with_signs(f, std::vector<int>(static_cast<std::size_t>(f.grid().axes()), +1));
}

PhaseFunction translate_samples(const PhaseFunction &f, const PhasePoint &shift)
{
    if (shift.dim() != static_cast<std::size_t>(f.grid().n()))
        throw std::invalid_argument("translate_samples: shift dimension does not match grid");
    const PhaseFunction spectrum = ordinary_fourier(f);
    const auto &freq = spectrum.grid();
    const auto s = shift.coords();
    std::vector<cplx> v(spectrum.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto zeta = freq.node_coords(i);
        double dot = 0.0;
        for (std::size_t a = 0; a < zeta.size(); ++a)
            dot += zeta[a] * s[a];
        v[i] = spectrum[i] * std::polar(1.0, 2.0 * std::numbers::pi * dot);
    }
    const PhaseFunction back = inverse_fourier(PhaseFunction(freq, std::move(v)));
    return PhaseFunction(f.grid(), back.values());
}

FockOperator weyl_correspondence(const PhaseFunction &f, const FockConfig &cfg, WeylOptions options)
{
    return weyl_transform(inverse_fourier(f), cfg, options);
}

PhasePoint symplectic_rotation(const PhasePoint &z)
{
    std::vector<double> x(z.y().begin(), z.y().end());
    std::vector<double> y(z.x().begin(), z.x().end());
    for (auto &v : y)
        v = -v;
    return PhasePoint(std::move(x), std::move(y));
}

double damping_gaussian(const PhasePoint &z)
{
    const double r = z.norm();
    return std::exp(-0.5 * std::numbers::pi * r * r);
}

PhaseFunction beta_damp(const FockOperator &x, const PhaseGrid &grid)
{
    const PhaseFunction a = fourier_wigner(x, grid);
    std::vector<cplx> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = damping_gaussian(grid.node(i)) * a[i];
    return PhaseFunction(grid, std::move(v));
}

void write_phase_function_csv(std::ostream &os, const PhaseFunction &f)
{
    auto names = io::coordinate_header(static_cast<std::size_t>(f.grid().n()));
    names.push_back("re");
    names.push_back("im");
    io::write_header(os, names);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto row = f.grid().node_coords(i);
        row.push_back(f[i].real());
        row.push_back(f[i].imag());
        io::write_csv_row(os, row);
    }
}

void write_measure_csv(std::ostream &os, const SurfaceMeasure &mu)
{
    mu.validate();
    auto names = io::coordinate_header(mu.n());
    names.push_back("weight");
    io::write_header(os, names);
    for (std::size_t i = 0; i < mu.nodes.size(); ++i) {
        auto row = mu.nodes[i].coords();
        row.push_back(mu.weights[i]);
        io::write_csv_row(os, row);
    }
}

SurfaceMeasure read_measure_csv(std::istream &is)
{
    const auto rows = io::read_numeric_csv(is);
    if (rows.empty())
        throw std::runtime_error("measure csv: no rows");
    const std::size_t cols = rows.front().size();
    if (cols < 3 || (cols - 1) % 2 != 0)
        throw std::runtime_error("measure csv: expected 2n coordinate columns plus a weight column");
    SurfaceMeasure mu;
    for (const auto &row : rows) {
        mu.nodes.push_back(PhasePoint::from_coords(std::span<const double>(row.data(), cols - 1)));
        mu.weights.push_back(row.back());
    }
    mu.validate();
    return mu;
}

} // namespace qtr
