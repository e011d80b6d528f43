// Independent reference computations used only by the tests. None of these
// share code paths with the library: Hermite functions come from Boost's
// Hermite polynomials, integrals from direct quadrature or tanh-sinh, Fourier
// transforms from the defining sums.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/hermite.hpp>

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

/// Orthonormal Hermite function with h_0(t) = 2^{1/4} exp(-pi t^2), from the
/// physicists' polynomial: h_k(t) = (2 pi)^{1/4} psi_k(sqrt(2 pi) t).
inline double hermite_function(int k, double t)
{
    const double u = std::sqrt(2 * pi) * t;
    const double log_norm = 0.5 * (k * std::log(2.0) + std::lgamma(k + 1.0) + 0.5 * std::log(pi));
    return std::pow(2 * pi, 0.25) * boost::math::hermite(static_cast<unsigned>(k), u) *
           std::exp(-0.5 * u * u - log_norm);
}

/// <h_j, rho(x, y, 1) h_k> = int h_j(t) exp(pi i (x y + 2 y t)) h_k(t + x) dt
/// by a Riemann sum over [-8, 8] with 4096 points.
inline cplx matrix_element(int j, int k, double x, double y, double half_width = 8.0, int points = 4096)
{
    const double h = 2 * half_width / (points - 1);
    cplx s = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = -half_width + i * h;
        s += hermite_function(j, t) * std::polar(1.0, pi * (x * y + 2 * y * t)) * hermite_function(k, t + x);
    }
    return s * h;
}

/// Direct O(M^4) evaluation of int f(x, y) e^{2 pi i (xi y - eta x)} dx dy on a
/// centred M x M grid of spacing h, at reciprocal node (a, b) with spacing 1/(M h).
template <class Values>
cplx symplectic_fourier_direct(const Values &f, int m, double h, int a, int b)
{
    const double dk = 1.0 / (m * h);
    const double xi = (a - m / 2) * dk, eta = (b - m / 2) * dk;
    cplx s = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double x = (i - m / 2) * h, y = (j - m / 2) * h;
            s += f[static_cast<std::size_t>(i * m + j)] * std::polar(1.0, 2 * pi * (xi * y - eta * x));
        }
    return s * h * h;
}

/// Upper branch of cos 2 pi x + cos 2 pi y = 1: y(x) for |x| <= 1/4.
inline double branch(double x) { return std::acos(1.0 - std::cos(2 * pi * x)) / (2 * pi); }

/// sqrt(1 + y'(x)^2) at x = +-(1/4 - u). Written in the endpoint distance u so
/// that cos 2 pi x = sin 2 pi u keeps full relative accuracy near the
/// integrable singularity at u = 0.
inline double branch_speed_from_end(double u)
{
    const double c = std::sin(2 * pi * u), s = std::cos(2 * pi * u);
    return std::sqrt(1.0 + s * s / (c * (2.0 - c)));
}

/// int_{-1/4}^{1/4} f(x) sqrt(1 + y'^2) dx for the upper branch, by tanh-sinh
/// on each half with the singular end at u = 0.
template <class F>
double branch_integral(F f)
{
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate([&](double u) { return (f(0.25 - u) + f(u - 0.25)) * branch_speed_from_end(u); }, 0.0, 0.25);
}

/// Length of the closed curve: two branches.
inline double curve_length()
{
    return 2.0 * branch_integral([](double) { return 1.0; });
}

/// sigma_hat(xi) = int exp(-2 pi i xi . z) ds over both branches.
inline cplx curve_fourier(std::array<double, 2> xi)
{
    auto part = [&](double sign, bool imag) {
        return branch_integral([&](double x) {
            const double phase = -2 * pi * (xi[0] * x + sign * xi[1] * branch(x));
            return imag ? std::sin(phase) : std::cos(phase);
        });
    };
    return {part(1.0, false) + part(-1.0, false), part(1.0, true) + part(-1.0, true)};
}

/// Graph curvature y'' / (1 + y'^2)^{3/2} of the upper branch, by central
/// differences, at `samples` points of [-0.2, 0.2]. With the eightfold symmetry
/// of the curve this range covers every point up to symmetry.
inline std::vector<double> branch_curvatures(int samples = 100000)
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(samples));
    const double d = 1e-4;
    for (int i = 0; i < samples; ++i) {
        const double x = -0.2 + 0.4 * i / (samples - 1);
        const double y0 = branch(x - d), y1 = branch(x), y2 = branch(x + d);
        const double dy = (y2 - y0) / (2 * d);
        const double ddy = (y2 - 2 * y1 + y0) / (d * d);
        out.push_back(ddy / std::pow(1.0 + dy * dy, 1.5));
    }
    return out;
}

} // namespace oracle
