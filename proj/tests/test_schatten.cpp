#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/QR>
#include <json.hpp>

#include "qtr/schatten.hpp"

using namespace qtr;

namespace {

Eigen::MatrixXcd random_matrix(std::mt19937_64 &rng, int n)
{
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i)
        m(i) = cplx(g(rng), g(rng));
    return m;
}

Eigen::MatrixXcd random_unitary(std::mt19937_64 &rng, int n)
{
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(rng, n));
    return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

} // namespace

TEST_CASE("singular values")
{
    const auto id = FockOperator::identity(make_config(1, 4));
    CHECK(singular_values(id) == std::vector<double>{1.0, 1.0, 1.0, 1.0});

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(1, 1) = 3.0;
    const auto s = singular_values(d);
    CHECK(s[0] == doctest::Approx(3.0));
    CHECK(s[1] == 0.0);

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(0, 1) = cplx(NAN, 0.0);
    CHECK_THROWS_AS(singular_values(bad), std::invalid_argument);

    std::mt19937_64 rng(1);
    const auto m = random_matrix(rng, 12);
    const auto sv = singular_values(m);
    CHECK(std::is_sorted(sv.rbegin(), sv.rend()));

    // Normal input: singular values are eigenvalue magnitudes.
    const auto u = random_unitary(rng, 6);
    Eigen::VectorXcd eig(6);
    eig << cplx(3, 1), cplx(-2, 0), cplx(0, 0.5), cplx(1, 1), cplx(-0.1, 0), cplx(0, -4);
    const Eigen::MatrixXcd normal = u * eig.asDiagonal() * u.adjoint();
    std::vector<double> mags;
    for (auto e : eig)
        mags.push_back(std::abs(e));
    std::sort(mags.rbegin(), mags.rend());
    const auto sn = singular_values(normal);
    for (std::size_t i = 0; i < mags.size(); ++i)
        CHECK(sn[i] == doctest::Approx(mags[i]).epsilon(1e-12));
}

TEST_CASE("Schatten norms")
{
    const auto id = FockOperator::identity(make_config(1, 9));
    CHECK(schatten_norm(id, 2.0) == doctest::Approx(3.0));
    CHECK(schatten_norm(id, kInfinity) == 1.0);
    CHECK(schatten_norm(id, 1.0) == doctest::Approx(9.0));
    CHECK_THROWS_AS(schatten_norm(id, 0.5), std::invalid_argument);

    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(5), v = Eigen::VectorXcd::Zero(5);
    u(1) = 3.0;
    v(3) = cplx(0.0, 5.0 / 3.0);
    const Eigen::MatrixXcd rank_one = u * v.adjoint();
    for (double p : {1.0, 2.0, 3.5, 8.0, kInfinity})
        CHECK(schatten_norm(rank_one, p) == doctest::Approx(5.0));

    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        const auto x = random_matrix(rng, 10), y = random_matrix(rng, 10);
        CHECK(schatten_norm(x, 4.0) <= schatten_norm(x, 2.0));
        CHECK(schatten_norm(x, 2.0) <= schatten_norm(x, 1.0));
        CHECK(schatten_norm(x, 2.0) == doctest::Approx(x.norm()).epsilon(1e-12));
        for (double p : {1.0, 2.0, 4.0, kInfinity})
            CHECK(schatten_norm(Eigen::MatrixXcd(x + y), p) <= schatten_norm(x, p) + schatten_norm(y, p) + 1e-10);

        const auto a = random_unitary(rng, 10), b = random_unitary(rng, 10);
        const auto s0 = singular_values(x);
        const auto s1 = singular_values(Eigen::MatrixXcd(a * x * b));
        for (std::size_t i = 0; i < s0.size(); ++i)
            CHECK(std::abs(s0[i] - s1[i]) < 1e-8);
    }

    // Scaling keeps huge and tiny spectra finite.
    const std::vector<double> big{1e200, 1e200};
    CHECK(schatten_norm(big, 2.0) == doctest::Approx(std::sqrt(2.0) * 1e200));
    const std::vector<double> zeros{0.0, 0.0};
    CHECK(schatten_norm(zeros, 3.0) == 0.0);
}

TEST_CASE("power-law decay fits")
{
    std::vector<double> quarter, half, flat;
    for (int j = 1; j <= 100; ++j) {
        quarter.push_back(std::pow(j, -0.25));
        half.push_back(std::pow(j, -0.5));
        flat.push_back(2.0);
    }
    const auto fq = decay_exponent(quarter, {1, 100});
    CHECK(std::abs(fq.exponent + 0.25) < 1e-12);
    CHECK(fq.standard_error < 1e-12);
    CHECK(std::abs(decay_exponent(half, {1, 100}).exponent + 0.5) < 1e-12);
    CHECK(std::abs(decay_exponent(flat, {1, 100}).exponent) < 1e-12);

    half[40] = 0.0;
    CHECK_THROWS_AS(decay_exponent(half, {1, 100}), std::invalid_argument);
    CHECK_NOTHROW(decay_exponent(half, {1, 40}));
    CHECK_THROWS_AS(decay_exponent(quarter, {0, 10}), std::invalid_argument);
    CHECK_THROWS_AS(decay_exponent(quarter, {10, 101}), std::invalid_argument);
    CHECK_THROWS_AS(decay_exponent(quarter, {10, 10}), std::invalid_argument);

    const auto r = default_fit_range(256);
    CHECK(r.lo == 10);
    CHECK(r.hi == 128);
    CHECK_THROWS_AS(default_fit_range(16), std::invalid_argument);
}

TEST_CASE("spectrum profile dumps")
{
    std::vector<double> s;
    for (int j = 1; j <= 64; ++j)
        s.push_back(std::pow(j, -0.3));
    const auto prof = spectrum_profile(s, default_fit_range(s.size()));
    CHECK(prof.fit_exponent == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(prof.fit_range.hi == 32);

    std::ostringstream csv;
    write_spectrum_csv(csv, prof);
    const auto text = csv.str();
    CHECK(text.rfind("j,s_j\n1,1\n", 0) == 0);

    const auto js = nlohmann::json::parse(spectrum_fit_json(prof));
    CHECK(js.at("j_lo") == 10);
    CHECK(js.at("j_hi") == 32);
    CHECK(js.at("exponent").get<double>() == doctest::Approx(-0.3));
    CHECK(js.contains("stderr"));
}
