// SPDX-License-Identifier: Apache-2.0

#include "qtr/qtranslate.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qtr/io.hpp"
#include "qtr/parallel.hpp"

namespace qtr {

DifferenceSpec::DifferenceSpec(std::vector<PhasePoint> points, std::vector<cplx> coeffs)
    : points_(std::move(points)), coeffs_(std::move(coeffs))
{
    if (points_.empty())
        throw std::invalid_argument("DifferenceSpec: need at least one point");
    if (points_.size() != coeffs_.size())
        throw std::invalid_argument("DifferenceSpec: point and coefficient counts differ");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        require_same_dim(points_[i], points_.front());
        for (std::size_t j = 0; j < i; ++j)
            if (distance(points_[i], points_[j]) <= kDistinctPointThreshold)
                throw std::invalid_argument("DifferenceSpec: points " + std::to_string(j) + " and " +
                                            std::to_string(i) + " coincide");
    }
}

DifferenceSpec eq4_spec(int n)
{
    if (n < 1)
        throw std::invalid_argument("eq4_spec: n must be >= 1");
    const auto un = static_cast<std::size_t>(n);
    std::vector<PhasePoint> points{PhasePoint::origin(un)};
    std::vector<cplx> coeffs{2.0 * (2.0 * n - 1.0)};
    for (std::size_t j = 0; j < un; ++j)
        for (int s : {+1, -1}) {
            std::vector<double> e(un, 0.0);
            e[j] = s;
            points.emplace_back(e, std::vector<double>(un, 0.0));
            coeffs.emplace_back(-1.0);
            points.emplace_back(std::vector<double>(un, 0.0), e);
            coeffs.emplace_back(-1.0);
        }
    return DifferenceSpec(std::move(points), std::move(coeffs));
}

FockOperator translate(const PhasePoint &z, const FockOperator &x)
{
    // rho X rho* = (rho (rho X)*)*
    const Eigen::MatrixXcd left = apply_rho(z, x.config(), x.matrix());
    return FockOperator(x.config(), apply_rho(z, x.config(), left.adjoint()).adjoint());
}

FockOperator difference_apply(const DifferenceSpec &spec, const FockOperator &a)
{
    auto acc = FockOperator::zero(a.config());
    for (std::size_t i = 0; i < spec.size(); ++i)
        acc = acc + translate(spec.points()[i], a) * spec.coeffs()[i];
    return acc;
}

cplx characteristic_poly(const DifferenceSpec &spec, const PhasePoint &w)
{
    cplx s = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i)
        s += spec.coeffs()[i] * cocycle(spec.points()[i], w).value();
    return s;
}

Eigen::MatrixXcd gram_matrix(const std::vector<PhasePoint> &points, const FockOperator &a)
{
    if (a.is_zero())
        throw std::invalid_argument("gram_matrix: operator is zero");
    if (points.empty())
        throw std::invalid_argument("gram_matrix: no points");
    std::vector<Eigen::MatrixXcd> t(points.size());
    parallel_for(points.size(), [&](std::size_t i) { t[i] = translate(points[i], a).matrix(); });
    const auto k = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd g(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            // tr(T_j^* T_i) = sum conj(T_j) .* T_i
            const cplx v = (t[static_cast<std::size_t>(j)].conjugate().cwiseProduct(t[static_cast<std::size_t>(i)])).sum();
            g(i, j) = v;
            g(j, i) = std::conj(v);
        }
    return g;
}

double independence_margin(const std::vector<PhasePoint> &points, const FockOperator &a)
{
    const Eigen::MatrixXcd g = gram_matrix(points, a);
    const double norm2 = a.matrix().squaredNorm();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g, Eigen::EigenvaluesOnly);
    const double lambda = eig.eigenvalues().minCoeff() / norm2;
    return std::clamp(lambda, 0.0, 1.0);
}

void write_difference_spec_csv(std::ostream &os, const DifferenceSpec &spec)
{
    auto names = io::coordinate_header(spec.n());
    names.push_back("re_c");
    names.push_back("im_c");
    io::write_header(os, names);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        auto row = spec.points()[i].coords();
        row.push_back(spec.coeffs()[i].real());
        row.push_back(spec.coeffs()[i].imag());
        io::write_csv_row(os, row);
    }
}

DifferenceSpec read_difference_spec_csv(std::istream &is)
{
    const auto rows = io::read_numeric_csv(is);
    if (rows.empty())
        throw std::runtime_error("difference spec csv: no rows");
    const std::size_t cols = rows.front().size();
    if (cols < 4 || (cols - 2) % 2 != 0)
        throw std::runtime_error("difference spec csv: expected 2n coordinates plus re, im columns");
    std::vector<PhasePoint> points;
    std::vector<cplx> coeffs;
    for (const auto &row : rows) {
        points.push_back(PhasePoint::from_coords(std::span<const double>(row.data(), cols - 2)));
        coeffs.emplace_back(row[cols - 2], row[cols - 1]);
    }
    return DifferenceSpec(std::move(points), std::move(coeffs));
}

std::vector<PhasePoint> read_points_csv(std::istream &is)
{
    const auto rows = io::read_numeric_csv(is);
    if (rows.empty())
        throw std::runtime_error("points csv: no rows");
    std::vector<PhasePoint> points;
    for (const auto &row : rows)
        points.push_back(PhasePoint::from_coords(row));
    return points;
}

void write_points_csv(std::ostream &os, const std::vector<PhasePoint> &points)
{
    if (points.empty())
        return;
    io::write_header(os, io::coordinate_header(points.front().dim()));
    for (const auto &p : points)
        io::write_csv_row(os, p.coords());
}

} // namespace qtr
