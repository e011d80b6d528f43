// SPDX-License-Identifier: Apache-2.0

#include "qtr/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qtr/io.hpp"

namespace qtr {

std::vector<double> singular_values(const Eigen::MatrixXcd &m)
{
    if (!m.allFinite())
        throw std::invalid_argument("singular_values: non-finite entries");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const Eigen::VectorXd s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::vector<double> singular_values(const FockOperator &x) { return singular_values(x.matrix()); }

double schatten_norm(std::span<const double> singular, double p)
{
    if (std::isnan(p) || p < 1.0)
        throw std::invalid_argument("schatten_norm: p must be >= 1");
    if (singular.empty())
        return 0.0;
    if (std::isinf(p))
        return *std::max_element(singular.begin(), singular.end());
    const double top = *std::max_element(singular.begin(), singular.end());
    if (top == 0.0)
        return 0.0;
    // scale by the largest value so large p does not overflow
    double s = 0.0;
    for (double v : singular)
        s += std::pow(v / top, p);
    return top * std::pow(s, 1.0 / p);
}

double schatten_norm(const FockOperator &x, double p) { return schatten_norm(x.matrix(), p); }

double schatten_norm(const Eigen::MatrixXcd &m, double p)
{
    if (std::isnan(p) || p < 1.0)
        throw std::invalid_argument("schatten_norm: p must be >= 1");
    if (p == 2.0)
        return m.norm();
    const auto s = singular_values(m);
    return schatten_norm(std::span<const double>(s), p);
}

DecayFit decay_exponent(std::span<const double> s, IndexRange range)
{
    if (range.lo < 1 || range.hi > s.size() || range.lo >= range.hi)
        throw std::invalid_argument("decay_exponent: invalid index range [" + std::to_string(range.lo) + ", " +
                                    std::to_string(range.hi) + "] for length " + std::to_string(s.size()));
    const std::size_t count = range.hi - range.lo + 1;
    std::vector<double> lx(count);
    std::vector<double> ly(count);
    for (std::size_t j = range.lo; j <= range.hi; ++j) {
        const double v = s[j - 1];
        if (!(v > 0.0))
            throw std::invalid_argument("decay_exponent: nonpositive value at index " + std::to_string(j));
        lx[j - range.lo] = std::log(static_cast<double>(j));
        ly[j - range.lo] = std::log(v);
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(count);
    my /= static_cast<double>(count);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    DecayFit fit;
    fit.exponent = sxy / sxx;
    if (count > 2) {
        const double intercept = my - fit.exponent * mx;
        double ssr = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double r = ly[i] - (intercept + fit.exponent * lx[i]);
            ssr += r * r;
        }
        fit.standard_error = std::sqrt(ssr / static_cast<double>(count - 2) / sxx);
    }
    return fit;
}

IndexRange default_fit_range(std::size_t length)
{
    if (length < 22)
        throw std::invalid_argument("default_fit_range: spectrum too short for the [10, dim/2] window");
    return IndexRange{10, length / 2};
}

SpectrumProfile spectrum_profile(std::vector<double> values, IndexRange range)
{
    SpectrumProfile p;
    p.values = std::move(values);
    const auto fit = decay_exponent(p.values, range);
    p.fit_exponent = fit.exponent;
    p.fit_stderr = fit.standard_error;
    p.fit_range = range;
    return p;
}

SpectrumProfile spectrum_profile(const FockOperator &x)
{
    auto s = singular_values(x);
    const auto range = default_fit_range(s.size());
    return spectrum_profile(std::move(s), range);
}

void write_spectrum_csv(std::ostream &os, const SpectrumProfile &profile)
{
    io::write_header(os, {"j", "s_j"});
    for (std::size_t j = 0; j < profile.values.size(); ++j)
        io::write_csv_row(os, {static_cast<double>(j + 1), profile.values[j]});
}

std::string spectrum_fit_json(const SpectrumProfile &profile)
{
    nlohmann::ordered_json j;
    j["exponent"] = profile.fit_exponent;
    j["stderr"] = profile.fit_stderr;
    j["j_lo"] = profile.fit_range.lo;
    j["j_hi"] = profile.fit_range.hi;
    return io::to_json_string(j);
}

} // namespace qtr
