// SPDX-License-Identifier: Apache-2.0
//
// Singular values, Schatten p-norms and power-law decay fits of spectra.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtr/fock.hpp"

namespace qtr {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// 1-based inclusive index interval [lo, hi] into a spectrum.
struct IndexRange
{
    std::size_t lo = 1;
    std::size_t hi = 1;
};

struct DecayFit
{
    double exponent = 0.0;
    double standard_error = 0.0;
};

/// Descending singular values with a log-log slope fitted over `fit_range`.
struct SpectrumProfile
{
    std::vector<double> values;
    double fit_exponent = 0.0;
    double fit_stderr = 0.0;
    IndexRange fit_range;
};

std::vector<double> singular_values(const Eigen::MatrixXcd &m);
std::vector<double> singular_values(const FockOperator &x);

/// (sum s_j^p)^{1/p}; p = kInfinity gives s_1. Throws for p < 1.
double schatten_norm(std::span<const double> singular, double p);
double schatten_norm(const FockOperator &x, double p);
double schatten_norm(const Eigen::MatrixXcd &m, double p);

/// Ordinary least-squares slope of log s_j against log j over `range`.
/// Throws std::invalid_argument when a value in range is not positive.
DecayFit decay_exponent(std::span<const double> s, IndexRange range);

/// Head (j < 10) and tail (j > dim/2) excluded.
IndexRange default_fit_range(std::size_t length);

SpectrumProfile spectrum_profile(const FockOperator &x);
SpectrumProfile spectrum_profile(std::vector<double> values, IndexRange range);

/// CSV "j,s_j" and the JSON fit summary {exponent, stderr, j_lo, j_hi}.
void write_spectrum_csv(std::ostream &os, const SpectrumProfile &profile);
std::string spectrum_fit_json(const SpectrumProfile &profile);

} // namespace qtr
