// SPDX-License-Identifier: Apache-2.0

#include "qtr/fock.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qtr/parallel.hpp"

namespace qtr {

namespace {

constexpr double kRescale = 1e150;

} // namespace

std::size_t FockConfig::dim() const
{
    std::size_t d = 1;
    for (int i = 0; i < n; ++i)
        d *= static_cast<std::size_t>(levels);
    return d;
}

void FockConfig::validate() const
{
    if (n < 1)
        throw std::invalid_argument("FockConfig: n must be >= 1");
    if (levels < 2)
        throw std::invalid_argument("FockConfig: levels must be >= 2");
    std::size_t d = 1;
    for (int i = 0; i < n; ++i) {
        d *= static_cast<std::size_t>(levels);
        if (d > dim_cap)
            throw std::invalid_argument("FockConfig: levels^n = " + std::to_string(levels) + "^" +
                                        std::to_string(n) + " exceeds dimension cap " + std::to_string(dim_cap));
    }
}

FockConfig make_config(int n, int levels, std::size_t dim_cap)
{
    FockConfig cfg{n, levels, dim_cap};
    cfg.validate();
    return cfg;
}

FockOperator::FockOperator(FockConfig cfg, Eigen::MatrixXcd matrix) : cfg_(cfg), m_(std::move(matrix))
{
    cfg_.validate();
    const auto d = static_cast<Eigen::Index>(cfg_.dim());
    if (m_.rows() != d || m_.cols() != d)
        throw std::invalid_argument("FockOperator: matrix is " + std::to_string(m_.rows()) + "x" +
                                    std::to_string(m_.cols()) + ", config requires " + std::to_string(d));
    if (!m_.allFinite())
        throw std::invalid_argument("FockOperator: non-finite entries");
}

FockOperator FockOperator::zero(const FockConfig &cfg)
{
    const auto d = static_cast<Eigen::Index>(cfg.dim());
    return FockOperator(cfg, Eigen::MatrixXcd::Zero(d, d));
}

FockOperator FockOperator::identity(const FockConfig &cfg)
{
    const auto d = static_cast<Eigen::Index>(cfg.dim());
    return FockOperator(cfg, Eigen::MatrixXcd::Identity(d, d));
}

FockOperator FockOperator::basis_projector(const FockConfig &cfg, std::size_t k)
{
    auto p = zero(cfg);
    if (k >= p.dim())
        throw std::out_of_range("basis_projector: index out of range");
    Eigen::MatrixXcd m = p.matrix();
    m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    return FockOperator(cfg, std::move(m));
}

FockOperator FockOperator::adjoint() const { return FockOperator(cfg_, m_.adjoint()); }

Eigen::MatrixXcd FockOperator::block(std::size_t rows, std::size_t cols) const
{
    return m_.topLeftCorner(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

bool FockOperator::is_zero() const { return (m_.array() == cplx(0.0)).all(); }

void require_same_config(const FockOperator &a, const FockOperator &b)
{
    if (!(a.config() == b.config()))
        throw std::invalid_argument("FockOperator: truncation configs differ");
}

FockOperator FockOperator::operator+(const FockOperator &other) const
{
    require_same_config(*this, other);
    return FockOperator(cfg_, m_ + other.m_);
}

FockOperator FockOperator::operator-(const FockOperator &other) const
{
    require_same_config(*this, other);
    return FockOperator(cfg_, m_ - other.m_);
}

FockOperator FockOperator::operator*(const FockOperator &other) const
{
    require_same_config(*this, other);
    return FockOperator(cfg_, m_ * other.m_);
}

FockOperator FockOperator::operator*(cplx s) const { return FockOperator(cfg_, m_ * s); }

LineGrid LineGrid::centered(double half_width, std::size_t points)
{
    if (!(half_width > 0.0) || points < 2)
        throw std::invalid_argument("LineGrid: need half_width > 0 and at least two points");
    const double h = 2.0 * half_width / static_cast<double>(points - 1);
    return LineGrid{-half_width, h, points};
}

Eigen::MatrixXd hermite_table(int kmax, std::span<const double> t)
{
    if (kmax < 0)
        throw std::invalid_argument("hermite_table: negative index");
    if (kmax > kMaxHermiteIndex)
        throw std::out_of_range("hermite_table: index " + std::to_string(kmax) + " exceeds stable limit " +
                                std::to_string(kMaxHermiteIndex));
    const double root2pi = std::sqrt(2.0 * std::numbers::pi);
    const double outer = std::pow(2.0 * std::numbers::pi, 0.25);
    const double psi0 = std::pow(std::numbers::pi, -0.25);
    Eigen::MatrixXd out(kmax + 1, static_cast<Eigen::Index>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double s = root2pi * t[i];
        // psi_k(s) = prev_scaled * exp(log_scale); the scale keeps exp(-s^2/2)
        // from underflowing before the recurrence has grown the value
        double log_scale = -0.5 * s * s;
        double factor = std::exp(log_scale);
        double prev = 0.0;
        double cur = psi0;
        const auto col = static_cast<Eigen::Index>(i);
        out(0, col) = outer * cur * factor;
        for (int k = 0; k < kmax; ++k) {
            const double next = std::sqrt(2.0 / (k + 1)) * s * cur - std::sqrt(double(k) / (k + 1)) * prev;
            prev = cur;
            cur = next;
            if (std::abs(cur) > kRescale) {
                cur /= kRescale;
                prev /= kRescale;
                log_scale += std::log(kRescale);
                factor = std::exp(log_scale);
            }
            out(k + 1, col) = outer * cur * factor;
        }
    }
    return out;
}

std::vector<double> hermite_basis_samples(int k, const LineGrid &grid)
{
    if (!(grid.spacing > 0.0))
        throw std::invalid_argument("hermite_basis_samples: grid spacing must be positive");
    std::vector<double> t(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i)
        t[i] = grid.at(i);
    const Eigen::MatrixXd table = hermite_table(k, t);
    std::vector<double> out(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i)
        out[i] = table(k, static_cast<Eigen::Index>(i));
    return out;
}

namespace detail {

void laguerre_diagonal(double r, int k, std::span<double> out)
{
    const std::size_t len = out.size();
    if (len == 0)
        return;
    if (r == 0.0) {
        for (auto &v : out)
            v = (k == 0) ? 1.0 : 0.0;
        return;
    }
    const double xx = r * r;
    double log_pre = -0.5 * xx + k * std::log(r) - 0.5 * std::lgamma(k + 1.0);
    double factor = std::exp(log_pre);
    double prev = 1.0;
    out[0] = factor;
    if (len == 1)
        return;
    double cur = (1.0 + k - xx) / std::sqrt(k + 1.0);
    out[1] = cur * factor;
    for (std::size_t m = 1; m + 1 < len; ++m) {
        const double md = static_cast<double>(m);
        const double next = ((2.0 * md + 1.0 + k - xx) * cur - std::sqrt(md * (md + k)) * prev) /
                            std::sqrt((md + 1.0) * (md + 1.0 + k));
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescale) {
            cur /= kRescale;
            prev /= kRescale;
            log_pre += std::log(kRescale);
            factor = std::exp(log_pre);
        }
        out[m + 1] = cur * factor;
    }
}

cplx displacement_parameter(double x, double y)
{
    const double s = std::sqrt(std::numbers::pi);
    return {-s * x, s * y};
}

Eigen::MatrixXcd accumulate_displacements(std::span<const cplx> params, std::span<const cplx> coeffs, int levels)
{
    if (params.size() != coeffs.size())
        throw std::invalid_argument("accumulate_displacements: size mismatch");
    const auto count = params.size();
    std::vector<double> radius(count);
    std::vector<double> angle(count);
    for (std::size_t i = 0; i < count; ++i) {
        radius[i] = std::abs(params[i]);
        angle[i] = std::arg(params[i]);
    }
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(levels, levels);
    // each diagonal offset owns disjoint entries, so the node sums are
    // performed in the same order regardless of thread count
    parallel_for(static_cast<std::size_t>(levels), [&](std::size_t kk) {
        const int k = static_cast<int>(kk);
        const std::size_t len = static_cast<std::size_t>(levels - k);
        std::vector<double> buf(len);
        std::vector<cplx> lower(len, 0.0);
        std::vector<cplx> upper(len, 0.0);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < count; ++i) {
            if (coeffs[i] == 0.0)
                continue;
            laguerre_diagonal(radius[i], k, buf);
            const cplx ph = std::polar(1.0, k * angle[i]);
            const cplx lo = coeffs[i] * ph;
            const cplx up = coeffs[i] * sign * std::conj(ph);
            for (std::size_t m = 0; m < len; ++m) {
                lower[m] += lo * buf[m];
                upper[m] += up * buf[m];
            }
        }
        for (std::size_t m = 0; m < len; ++m) {
            const auto mi = static_cast<Eigen::Index>(m);
            acc(mi + k, mi) = lower[m];
            if (k > 0)
                acc(mi, mi + k) = upper[m];
        }
    });
    return acc;
}

cplx trace_displacement_product(cplx a, const Eigen::MatrixXcd &x)
{
    const auto levels = static_cast<int>(x.rows());
    const double r = std::abs(a);
    const double theta = std::arg(a);
    std::vector<double> buf(static_cast<std::size_t>(levels));
    cplx total = 0.0;
    for (int k = 0; k < levels; ++k) {
        const std::size_t len = static_cast<std::size_t>(levels - k);
        std::span<double> diag(buf.data(), len);
        laguerre_diagonal(r, k, diag);
        const cplx ph = std::polar(1.0, k * theta);
        cplx lo = 0.0;
        cplx up = 0.0;
        for (std::size_t m = 0; m < len; ++m) {
            const auto mi = static_cast<Eigen::Index>(m);
            // tr(D X) = sum_{j,l} D[j,l] X[l,j]
            lo += diag[m] * x(mi, mi + k);
            if (k > 0)
                up += diag[m] * x(mi + k, mi);
        }
        total += ph * lo;
        if (k > 0)
            total += ((k % 2 == 0) ? 1.0 : -1.0) * std::conj(ph) * up;
    }
    return total;
}

} // namespace detail

Eigen::MatrixXcd displacement_1d(double x, double y, int levels)
{
    if (levels < 1)
        throw std::invalid_argument("displacement_1d: levels must be positive");
    const cplx a = detail::displacement_parameter(x, y);
    const double r = std::abs(a);
    const double theta = std::arg(a);
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(levels, levels);
    std::vector<double> buf(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k) {
        const std::size_t len = static_cast<std::size_t>(levels - k);
        std::span<double> diag(buf.data(), len);
        detail::laguerre_diagonal(r, k, diag);
        const cplx lo = std::polar(1.0, k * theta);
        const cplx up = ((k % 2 == 0) ? 1.0 : -1.0) * std::conj(lo);
        for (std::size_t m = 0; m < len; ++m) {
            const auto mi = static_cast<Eigen::Index>(m);
            d(mi + k, mi) = lo * diag[m];
            if (k > 0)
                d(mi, mi + k) = up * diag[m];
        }
    }
    return d;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b)
{
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

FockOperator rho_matrix(const PhasePoint &z, const FockConfig &cfg)
{
    cfg.validate();
    if (z.dim() != static_cast<std::size_t>(cfg.n))
        throw std::invalid_argument("rho_matrix: point dimension " + std::to_string(z.dim()) +
                                    " does not match config n = " + std::to_string(cfg.n));
    Eigen::MatrixXcd m = displacement_1d(z.x()[0], z.y()[0], cfg.levels);
    for (std::size_t i = 1; i < z.dim(); ++i)
        m = kron(m, displacement_1d(z.x()[i], z.y()[i], cfg.levels));
    return FockOperator(cfg, std::move(m));
}

Eigen::MatrixXcd apply_rho(const PhasePoint &z, const FockConfig &cfg, const Eigen::MatrixXcd &x)
{
    cfg.validate();
    if (z.dim() != static_cast<std::size_t>(cfg.n))
        throw std::invalid_argument("apply_rho: point dimension does not match config");
    const auto dim = static_cast<Eigen::Index>(cfg.dim());
    if (x.rows() != dim)
        throw std::invalid_argument("apply_rho: operand has " + std::to_string(x.rows()) + " rows, expected " +
                                    std::to_string(dim));
    if (cfg.n == 1)
        return displacement_1d(z.x()[0], z.y()[0], cfg.levels) * x;

    const Eigen::Index n_lv = cfg.levels;
    Eigen::MatrixXcd out = x;
    Eigen::MatrixXcd tmp;
    // Row index = sum_c i_c * N^(n-1-c). Within one column, the rows that coordinate c
    // mixes form contiguous (stride x N) column-major tiles Z, and Z <- Z * D^T.
    Eigen::Index stride = dim;
    for (std::size_t c = 0; c < z.dim(); ++c) {
        stride /= n_lv;
        if (stride == 1) {
            // Fastest coordinate: the whole matrix is one N x (dim * cols / N) operand.
            Eigen::Map<Eigen::MatrixXcd> all(out.data(), n_lv, dim / n_lv * out.cols());
            tmp.noalias() = displacement_1d(z.x()[c], z.y()[c], cfg.levels) * all;
            all = tmp;
            continue;
        }
        const Eigen::MatrixXcd dt = displacement_1d(z.x()[c], z.y()[c], cfg.levels).transpose();
        for (Eigen::Index col = 0; col < out.cols(); ++col)
            for (Eigen::Index base = 0; base < dim; base += n_lv * stride) {
                Eigen::Map<Eigen::MatrixXcd> tile(out.data() + col * dim + base, stride, n_lv);
                tmp.noalias() = tile * dt;
                tile = tmp;
            }
    }
    return out;
}

FockOperator rho_adjoint(const PhasePoint &z, const FockConfig &cfg) { return rho_matrix(z, cfg).adjoint(); }

void write_operator(std::ostream &os, const FockOperator &op)
{
    char buf[96];
    os << op.dim() << '\n';
    const auto &m = op.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", m(i, j).real(), m(i, j).imag());
            os << buf;
        }
}

FockOperator read_operator(std::istream &is, const FockConfig &cfg)
{
    std::size_t dim = 0;
    if (!(is >> dim))
        throw std::runtime_error("read_operator: missing dimension line");
    if (dim != cfg.dim())
        throw std::runtime_error("read_operator: file dimension " + std::to_string(dim) +
                                 " does not match config dimension " + std::to_string(cfg.dim()));
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            double re = 0.0;
            double im = 0.0;
            if (!(is >> re >> im))
                throw std::runtime_error("read_operator: truncated entry list at row " + std::to_string(i));
            m(i, j) = cplx(re, im);
        }
    return FockOperator(cfg, std::move(m));
}

std::string operator_sidecar_json(const FockOperator &op)
{
    nlohmann::ordered_json j;
    j["n"] = op.config().n;
    j["levels"] = op.config().levels;
    j["dim"] = op.dim();
    return j.dump(2) + "\n";
}

FockConfig config_from_sidecar(const std::string &json_text)
{
    const auto j = nlohmann::json::parse(json_text);
    auto cfg = make_config(j.at("n").get<int>(), j.at("levels").get<int>());
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != cfg.dim())
        throw std::runtime_error("operator sidecar: dim inconsistent with n and levels");
    return cfg;
}

} // namespace qtr
