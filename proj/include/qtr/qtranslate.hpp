// SPDX-License-Identifier: Apache-2.0
//
// Quantum translation z . X = rho(z) X rho(z)^{-1}, difference operators
// D A = sum_i c_i z_i . A, their characteristic trigonometric polynomials,
// and the Gram-matrix test for linear independence of translates.

#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "qtr/fock.hpp"
#include "qtr/phase_space.hpp"

namespace qtr {

/// Minimum pairwise distance for points of a DifferenceSpec.
inline constexpr double kDistinctPointThreshold = 1e-9;

/// Points z_1..z_k (pairwise distinct) with coefficients c_1..c_k.
class DifferenceSpec
{
public:
    DifferenceSpec(std::vector<PhasePoint> points, std::vector<cplx> coeffs);

    const std::vector<PhasePoint> &points() const { return points_; }
    const std::vector<cplx> &coeffs() const { return coeffs_; }
    std::size_t size() const { return points_.size(); }
    std::size_t n() const { return points_.front().dim(); }

private:
    std::vector<PhasePoint> points_;
    std::vector<cplx> coeffs_;
};

/// 2(2n-1) A - sum_j [(e_j,0).A + (-e_j,0).A + (0,e_j).A + (0,-e_j).A]
DifferenceSpec eq4_spec(int n);

/// rho(z) X rho(z)^*
FockOperator translate(const PhasePoint &z, const FockOperator &x);

/// sum_i c_i translate(z_i, A)
FockOperator difference_apply(const DifferenceSpec &spec, const FockOperator &a);

/// sum_i c_i e(z_i, w)
cplx characteristic_poly(const DifferenceSpec &spec, const PhasePoint &w);

/// G[i][j] = tr(translate(z_j, A)^* translate(z_i, A)). Throws if A = 0.
Eigen::MatrixXcd gram_matrix(const std::vector<PhasePoint> &points, const FockOperator &a);

/// lambda_min(G) / ||A||_{S^2}^2, clamped to [0, 1].
double independence_margin(const std::vector<PhasePoint> &points, const FockOperator &a);

/// Rows: coordinates..., re(c), im(c).
void write_difference_spec_csv(std::ostream &os, const DifferenceSpec &spec);
DifferenceSpec read_difference_spec_csv(std::istream &is);

/// Rows: coordinates...
std::vector<PhasePoint> read_points_csv(std::istream &is);
void write_points_csv(std::ostream &os, const std::vector<PhasePoint> &points);

} // namespace qtr
