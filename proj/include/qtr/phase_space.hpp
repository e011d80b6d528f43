// SPDX-License-Identifier: Apache-2.0
//
// Phase-space points of R^{2n}, the symplectic form and the bicharacter
// e(a, b) = exp(2 pi i (x_a . y_b - y_a . x_b)).

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qtr {

/// A point (x, y) of phase space R^{2n}. Immutable; n >= 1, finite components.
class PhasePoint
{
public:
    PhasePoint(std::vector<double> x, std::vector<double> y);

    /// n = 1 convenience.
    PhasePoint(double x, double y) : PhasePoint(std::vector<double>{x}, std::vector<double>{y}) {}

    static PhasePoint origin(std::size_t n);

    /// Coordinates laid out as (x_1..x_n, y_1..y_n).
    static PhasePoint from_coords(std::span<const double> coords);

    std::size_t dim() const { return x_.size(); }
    std::span<const double> x() const { return x_; }
    std::span<const double> y() const { return y_; }
    std::vector<double> coords() const;

    double norm() const;
    bool is_origin() const;

    PhasePoint operator+(const PhasePoint &other) const;
    PhasePoint operator-(const PhasePoint &other) const;
    PhasePoint operator-() const;
    PhasePoint operator*(double s) const;
    bool operator==(const PhasePoint &other) const = default;

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

inline PhasePoint operator*(double s, const PhasePoint &p) { return p * s; }

double distance(const PhasePoint &a, const PhasePoint &b);

/// Unit-modulus complex value of e(a, b).
class Bicharacter
{
public:
    /// exp(2 pi i turns)
    explicit Bicharacter(double turns);

    std::complex<double> value() const { return value_; }
    double turns() const { return turns_; }

    Bicharacter operator*(const Bicharacter &other) const { return Bicharacter(turns_ + other.turns_); }

private:
    double turns_;
    std::complex<double> value_;
};

/// x_a . y_b - y_a . x_b. Throws std::invalid_argument on dimension mismatch.
double symplectic_form(const PhasePoint &a, const PhasePoint &b);

/// e(a, b) = exp(2 pi i symplectic_form(a, b)).
Bicharacter cocycle(const PhasePoint &a, const PhasePoint &b);

void require_same_dim(const PhasePoint &a, const PhasePoint &b);

} // namespace qtr
