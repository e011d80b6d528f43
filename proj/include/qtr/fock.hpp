// SPDX-License-Identifier: Apache-2.0
//
// Schrodinger representation rho(x, y, 1) in a truncated Hermite (Fock) basis.
//
//   (rho(x, y, 1) phi)(t) = exp(pi i (x.y + 2 y.t)) phi(t + x)
//
// Hermite functions use the pi-normalization h_0(t) = 2^{1/4} exp(-pi t^2).
// In that basis rho(x, y, 1) is the displacement operator D(a) with
// a = sqrt(pi) (-x + i y), one factor per coordinate.

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtr/phase_space.hpp"

namespace qtr {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultDimCap = 4096;

/// Largest Hermite index accepted by hermite_basis_samples.
inline constexpr int kMaxHermiteIndex = 512;

/// Truncation parameters: `levels` Hermite functions per coordinate, n coordinates.
struct FockConfig
{
    int n = 1;
    int levels = 2;
    std::size_t dim_cap = kDefaultDimCap;

    std::size_t dim() const;
    void validate() const;
    bool operator==(const FockConfig &other) const { return n == other.n && levels == other.levels; }
};

/// Validating constructor.
FockConfig make_config(int n, int levels, std::size_t dim_cap = kDefaultDimCap);

/// Complex square matrix acting on the truncated space, tagged with its config.
class FockOperator
{
public:
    FockOperator(FockConfig cfg, Eigen::MatrixXcd matrix);

    static FockOperator zero(const FockConfig &cfg);
    static FockOperator identity(const FockConfig &cfg);
    /// Projector onto the k-th basis vector (k = 0 is the ground state P_0).
    static FockOperator basis_projector(const FockConfig &cfg, std::size_t k);

    const FockConfig &config() const { return cfg_; }
    const Eigen::MatrixXcd &matrix() const { return m_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

    FockOperator adjoint() const;
    /// Leading rows x cols sub-block.
    Eigen::MatrixXcd block(std::size_t rows, std::size_t cols) const;
    double frobenius_norm() const { return m_.norm(); }
    bool is_zero() const;

    FockOperator operator+(const FockOperator &other) const;
    FockOperator operator-(const FockOperator &other) const;
    FockOperator operator*(const FockOperator &other) const;
    FockOperator operator*(cplx s) const;

private:
    FockConfig cfg_;
    Eigen::MatrixXcd m_;
};

inline FockOperator operator*(cplx s, const FockOperator &op) { return op * s; }

void require_same_config(const FockOperator &a, const FockOperator &b);

/// Uniform 1-D grid t_i = start + i * spacing.
struct LineGrid
{
    double start = 0.0;
    double spacing = 1.0;
    std::size_t points = 0;

    /// `points` nodes spread evenly over [-half_width, half_width].
    static LineGrid centered(double half_width, std::size_t points);
    double at(std::size_t i) const { return start + static_cast<double>(i) * spacing; }
};

/// Samples of the k-th orthonormal Hermite function on `grid`.
/// Throws std::out_of_range for k > kMaxHermiteIndex.
std::vector<double> hermite_basis_samples(int k, const LineGrid &grid);

/// Samples of h_0..h_kmax at arbitrary abscissae; row k holds h_k.
Eigen::MatrixXd hermite_table(int kmax, std::span<const double> t);

/// One-coordinate factor <h_j, rho(x, y, 1) h_k>, j, k < levels.
Eigen::MatrixXcd displacement_1d(double x, double y, int levels);

/// rho(z, 1) on the truncated space: Kronecker product of the per-coordinate factors.
FockOperator rho_matrix(const PhasePoint &z, const FockConfig &cfg);

/// rho_matrix(z) * x, applied one coordinate factor at a time: O(N^(2n+1))
/// instead of O(N^(3n)).
Eigen::MatrixXcd apply_rho(const PhasePoint &z, const FockConfig &cfg, const Eigen::MatrixXcd &x);

/// Conjugate transpose of rho_matrix(z); equals rho_matrix(-z) up to truncation.
FockOperator rho_adjoint(const PhasePoint &z, const FockConfig &cfg);

/// Kronecker product, first factor slowest.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

namespace detail {

/// For a = r e^{i theta} and diagonal offset k, fills
///   out[m] = e^{-r^2/2} r^k sqrt(m!/(m+k)!) L_m^{(k)}(r^2),   m = 0..out.size()-1,
/// so that <h_{m+k}|D(a)|h_m> = out[m] e^{i k theta} and
/// <h_m|D(a)|h_{m+k}> = out[m] (-e^{-i theta})^k.
void laguerre_diagonal(double r, int k, std::span<double> out);

/// Displacement parameter a = sqrt(pi)(-x + i y) for one coordinate.
cplx displacement_parameter(double x, double y);

/// sum_i coeffs[i] D(a_i) for one coordinate, accumulated diagonal by diagonal.
Eigen::MatrixXcd accumulate_displacements(std::span<const cplx> params, std::span<const cplx> coeffs, int levels);

/// tr(D(a) X) for one coordinate without forming D(a).
cplx trace_displacement_product(cplx a, const Eigen::MatrixXcd &x);

} // namespace detail

// Text dump: first line dim, then dim^2 lines "re im" in row-major order.
void write_operator(std::ostream &os, const FockOperator &op);
FockOperator read_operator(std::istream &is, const FockConfig &cfg);
/// JSON sidecar carrying the config.
std::string operator_sidecar_json(const FockOperator &op);
FockConfig config_from_sidecar(const std::string &json_text);

} // namespace qtr
