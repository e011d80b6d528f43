#include <doctest.h>

#include <cmath>
#include <random>

#include "qtr/phase_space.hpp"

using qtr::PhasePoint;

TEST_CASE("phase points reject malformed coordinates")
{
    CHECK_THROWS_AS(PhasePoint({1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PhasePoint(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(PhasePoint(NAN, 0.0), std::invalid_argument);
    const std::vector<double> odd{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(PhasePoint::from_coords(odd), std::invalid_argument);
}

TEST_CASE("coordinate layout and arithmetic")
{
    const std::vector<double> c{1.0, 2.0, 3.0, 4.0};
    const auto p = PhasePoint::from_coords(c);
    CHECK(p.dim() == 2);
    CHECK(p.x()[1] == 2.0);
    CHECK(p.y()[0] == 3.0);
    CHECK(p.coords() == c);
    CHECK((p - p).is_origin());
    CHECK((p + (-p)) == PhasePoint::origin(2));
    CHECK((2.0 * p).y()[1] == 8.0);
    CHECK(p.norm() == doctest::Approx(std::sqrt(30.0)));
    CHECK(qtr::distance(PhasePoint(0.0, 0.0), PhasePoint(3.0, 4.0)) == doctest::Approx(5.0));
    CHECK_THROWS_AS(p + PhasePoint(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("symplectic form and bicharacter")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    auto draw = [&] { return PhasePoint({u(rng), u(rng)}, {u(rng), u(rng)}); };
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = draw(), b = draw(), c = draw();
        CHECK(qtr::symplectic_form(a, b) == -qtr::symplectic_form(b, a));
        CHECK(qtr::symplectic_form(a, a) == 0.0);
        CHECK(qtr::symplectic_form(a + b, c) ==
              doctest::Approx(qtr::symplectic_form(a, c) + qtr::symplectic_form(b, c)));
        const auto e_ab = qtr::cocycle(a, b).value();
        CHECK(std::abs(e_ab) == doctest::Approx(1.0));
        CHECK(std::abs(e_ab * qtr::cocycle(b, a).value() - 1.0) < 1e-12);
        const auto lhs = qtr::cocycle(a + b, c).value();
        const auto rhs = (qtr::cocycle(a, c) * qtr::cocycle(b, c)).value();
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
    CHECK(qtr::symplectic_form(PhasePoint(1.0, 0.0), PhasePoint(0.0, 1.0)) == 1.0);
    CHECK(std::abs(qtr::cocycle(PhasePoint(0.5, 0.0), PhasePoint(0.0, 0.5)).value() - std::complex<double>(0.0, 1.0)) < 1e-15);
    CHECK_THROWS_AS(qtr::require_same_dim(PhasePoint(1.0, 1.0), PhasePoint::origin(2)), std::invalid_argument);
}
