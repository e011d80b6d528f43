// SPDX-License-Identifier: Apache-2.0

#include "qtr/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qtr {

PhasePoint::PhasePoint(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y))
{
    if (x_.empty() || x_.size() != y_.size())
        throw std::invalid_argument("PhasePoint: x and y must have equal length n >= 1");
    for (std::size_t i = 0; i < x_.size(); ++i)
        if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
            throw std::invalid_argument("PhasePoint: non-finite component");
}

PhasePoint PhasePoint::origin(std::size_t n)
{
    return PhasePoint(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0));
}

PhasePoint PhasePoint::from_coords(std::span<const double> coords)
{
    if (coords.size() < 2 || coords.size() % 2 != 0)
        throw std::invalid_argument("PhasePoint: coordinate count must be 2n, n >= 1");
    const std::size_t n = coords.size() / 2;
    return PhasePoint(std::vector<double>(coords.begin(), coords.begin() + n),
                      std::vector<double>(coords.begin() + n, coords.end()));
}

std::vector<double> PhasePoint::coords() const
{
    std::vector<double> out(x_);
    out.insert(out.end(), y_.begin(), y_.end());
    return out;
}

double PhasePoint::norm() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i)
        s += x_[i] * x_[i] + y_[i] * y_[i];
    return std::sqrt(s);
}

bool PhasePoint::is_origin() const
{
    for (std::size_t i = 0; i < x_.size(); ++i)
        if (x_[i] != 0.0 || y_[i] != 0.0)
            return false;
    return true;
}

PhasePoint PhasePoint::operator+(const PhasePoint &other) const
{
    require_same_dim(*this, other);
    auto x = x_;
    auto y = y_;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += other.x_[i];
        y[i] += other.y_[i];
    }
    return PhasePoint(std::move(x), std::move(y));
}

PhasePoint PhasePoint::operator-(const PhasePoint &other) const { return *this + (-other); }

PhasePoint PhasePoint::operator-() const { return *this * -1.0; }

PhasePoint PhasePoint::operator*(double s) const
{
    auto x = x_;
    auto y = y_;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] *= s;
        y[i] *= s;
    }
    return PhasePoint(std::move(x), std::move(y));
}

double distance(const PhasePoint &a, const PhasePoint &b) { return (a - b).norm(); }

Bicharacter::Bicharacter(double turns)
    : turns_(turns), value_(std::polar(1.0, 2.0 * std::numbers::pi * turns))
{
}

void require_same_dim(const PhasePoint &a, const PhasePoint &b)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument("phase point dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()));
}

double symplectic_form(const PhasePoint &a, const PhasePoint &b)
{
    require_same_dim(a, b);
    double xy = 0.0;
    double yx = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        xy += a.x()[i] * b.y()[i];
        yx += a.y()[i] * b.x()[i];
    }
    // written as a difference of two dot products so that swapping a and b
    // negates the result exactly
    return xy - yx;
}

Bicharacter cocycle(const PhasePoint &a, const PhasePoint &b) { return Bicharacter(symplectic_form(a, b)); }

} // namespace qtr
