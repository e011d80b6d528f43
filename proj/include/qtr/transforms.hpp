// SPDX-License-Identifier: Apache-2.0
//
// Transforms between phase-space functions and operators:
//
//   alpha(X)(x, y)   = tr(rho(-x, -y, 1) X)                      Fourier-Wigner
//   W(f)             = int f(x, y) rho(x, y, 1) dx dy             Weyl transform
//   f_check(xi, eta) = int f(x, y) e^{2 pi i (xi.y - eta.x)}      symplectic Fourier
//   F f(zeta)        = int f(w) e^{-2 pi i zeta.w} dw             ordinary Fourier
//   Weyl(f)          = W(F^{-1} f)
//   beta(X)          = g alpha(X),  g(x, y) = exp(-pi/2 (|x|^2 + |y|^2))
//
// Integrals are Riemann sums on uniform centered grids.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "qtr/fock.hpp"
#include "qtr/phase_space.hpp"

namespace qtr {

inline constexpr std::size_t kDefaultGridPointCap = std::size_t{1} << 24;

/// Ratio ||W(f)||_{S^2} / ||f||_{L^2}. Measured from the ground state:
/// W(exp(-pi |z|^2 / 2)) = P_0, and both norms equal one.
inline constexpr double kPlancherelConstant = 1.0;

/// Fraction of total |f| mass allowed on the outermost grid layer.
inline constexpr double kBoundaryMassThreshold = 1e-10;

/// Uniform grid on R^{2n}: M points per axis, spacing h = L / M, node i at (i - M/2) h.
class PhaseGrid
{
public:
    PhaseGrid(int n, double side, int points_per_axis, std::size_t point_cap = kDefaultGridPointCap);

    int n() const { return n_; }
    int axes() const { return 2 * n_; }
    double side() const { return side_; }
    int points_per_axis() const { return m_; }
    double spacing() const { return side_ / m_; }
    double coordinate(int index) const { return (index - m_ / 2) * spacing(); }
    std::size_t total_points() const { return total_; }
    /// h^{2n}
    double cell_volume() const;

    /// Frequency grid of the discrete Fourier transform: side M / L, same M.
    PhaseGrid reciprocal() const;

    /// Multi-index of a flat (row-major, axis 0 slowest) index.
    std::vector<int> unflatten(std::size_t flat) const;
    std::size_t flatten(const std::vector<int> &index) const;
    PhasePoint node(std::size_t flat) const;
    std::vector<double> node_coords(std::size_t flat) const;
    bool on_boundary(std::size_t flat) const;

    /// Same n and M, sides equal to relative 1e-12.
    bool compatible(const PhaseGrid &other) const;

private:
    int n_;
    double side_;
    int m_;
    std::size_t total_;
};

/// Complex samples on a PhaseGrid, axes ordered (x_1..x_n, y_1..y_n).
class PhaseFunction
{
public:
    PhaseFunction(PhaseGrid grid, std::vector<cplx> values);

    static PhaseFunction zeros(const PhaseGrid &grid);
    static PhaseFunction sample(const PhaseGrid &grid, const std::function<cplx(const PhasePoint &)> &fn);
    /// Discrete delta at the origin node: value 1 / h^{2n}.
    static PhaseFunction delta(const PhaseGrid &grid);

    const PhaseGrid &grid() const { return grid_; }
    const std::vector<cplx> &values() const { return values_; }
    cplx operator[](std::size_t flat) const { return values_[flat]; }
    std::size_t size() const { return values_.size(); }

    /// Riemann-sum L^p norm; p = infinity gives the max.
    double lp_norm(double p) const;
    double max_abs() const;
    /// Fraction of sum |f| carried by the outermost layer of nodes.
    double boundary_mass_fraction() const;

    PhaseFunction operator+(const PhaseFunction &other) const;
    PhaseFunction operator-(const PhaseFunction &other) const;
    PhaseFunction operator*(cplx s) const;
    /// Pointwise product.
    PhaseFunction hadamard(const PhaseFunction &other) const;

private:
    PhaseGrid grid_;
    std::vector<cplx> values_;
};

double max_abs_difference(const PhaseFunction &a, const PhaseFunction &b);

/// Point masses approximating a smooth measure on a hypersurface of R^{2n}.
struct SurfaceMeasure
{
    std::vector<PhasePoint> nodes;
    std::vector<double> weights;

    void validate() const;
    double total_mass() const;
    std::size_t n() const { return nodes.empty() ? 0 : nodes.front().dim(); }
};

enum class BoundaryPolicy { warn, strict };

struct WeylOptions
{
    BoundaryPolicy boundary = BoundaryPolicy::warn;
};

/// alpha(X) at every node of `grid`.
PhaseFunction fourier_wigner(const FockOperator &x, const PhaseGrid &grid);

/// alpha(X) at a single point.
cplx fourier_wigner_at(const FockOperator &x, const PhasePoint &w);

/// Riemann sum of f(z) rho(z) h^{2n}. Boundary mass above kBoundaryMassThreshold
/// warns on stderr, or throws std::runtime_error under BoundaryPolicy::strict.
FockOperator weyl_transform(const PhaseFunction &f, const FockConfig &cfg, WeylOptions options = {});

/// Default bound on |node component| for weyl_of_measure.
inline constexpr double kMeasureNodeBound = 10.0;

/// sum_i w_i rho(z_i). Throws std::invalid_argument if a node component exceeds `node_bound`.
FockOperator weyl_of_measure(const SurfaceMeasure &mu, const FockConfig &cfg, double node_bound = kMeasureNodeBound);

/// Output lives on grid.reciprocal(); axes ordered (xi, eta).
PhaseFunction symplectic_fourier(const PhaseFunction &f);
PhaseFunction ordinary_fourier(const PhaseFunction &f);
PhaseFunction inverse_fourier(const PhaseFunction &f);

/// Samples of w -> f(w + shift), by a phase ramp in the Fourier domain.
PhaseFunction translate_samples(const PhaseFunction &f, const PhasePoint &shift);

/// W(F^{-1} f). Satisfies Weyl(T_{Jz} f) = z . Weyl(f), Jz = (z_y, -z_x); see translate().
FockOperator weyl_correspondence(const PhaseFunction &f, const FockConfig &cfg, WeylOptions options = {});

/// Symplectic rotation J(x, y) = (y, -x) relating ordinary and quantum translation.
PhasePoint symplectic_rotation(const PhasePoint &z);

/// exp(-pi/2 |z|^2) alpha(X).
PhaseFunction beta_damp(const FockOperator &x, const PhaseGrid &grid);

double damping_gaussian(const PhasePoint &z);

// CSV dumps. PhaseFunction: coordinates..., re, im. SurfaceMeasure: coordinates..., weight.
void write_phase_function_csv(std::ostream &os, const PhaseFunction &f);
void write_measure_csv(std::ostream &os, const SurfaceMeasure &mu);
SurfaceMeasure read_measure_csv(std::istream &is);

} // namespace qtr
