#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qtr/qtranslate.hpp"
#include "qtr/schatten.hpp"
#include "qtr/suites.hpp"
#include "qtr/transforms.hpp"

using namespace qtr;

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

TEST_CASE("difference specs")
{
    CHECK_THROWS_AS(DifferenceSpec({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(DifferenceSpec({PhasePoint(0.0, 0.0)}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(DifferenceSpec({PhasePoint(0.3, 0.1), PhasePoint(0.3, 0.1)}, {1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(DifferenceSpec({PhasePoint(0.3, 0.1), PhasePoint(0.3, 0.1 + 1e-10)}, {1.0, -1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DifferenceSpec({PhasePoint(0.3, 0.1), PhasePoint::origin(2)}, {1.0, -1.0}), std::invalid_argument);
    CHECK_NOTHROW(DifferenceSpec({PhasePoint(0.3, 0.1), PhasePoint(0.3, 0.1 + 1e-8)}, {1.0, -1.0}));

    const auto s1 = eq4_spec(1);
    CHECK(s1.size() == 5);
    CHECK(s1.coeffs()[0] == cplx(2.0));
    const auto s2 = eq4_spec(2);
    CHECK(s2.size() == 9);
    CHECK(s2.coeffs()[0] == cplx(6.0));
    CHECK_THROWS_AS(eq4_spec(0), std::invalid_argument);

    std::stringstream ss;
    write_difference_spec_csv(ss, s2);
    const auto back = read_difference_spec_csv(ss);
    CHECK(back.points() == s2.points());
    CHECK(back.coeffs() == s2.coeffs());
}

TEST_CASE("characteristic polynomial")
{
    CHECK(std::abs(characteristic_poly(eq4_spec(1), PhasePoint(0.0, 0.0)) - (-2.0)) < 1e-15);
    CHECK(std::abs(characteristic_poly(eq4_spec(2), PhasePoint::origin(2)) - (-2.0)) < 1e-15);
    CHECK(std::abs(characteristic_poly(eq4_spec(1), PhasePoint(0.25, 0.0))) < 1e-15);
    CHECK(std::abs(characteristic_poly(eq4_spec(1), PhasePoint(0.0, -0.25))) < 1e-15);

    const DifferenceSpec one({PhasePoint(0.7, -0.2)}, {cplx(0.0, 3.0)});
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto w = suites::random_point_in_ball(1, 5.0, rng);
        CHECK(std::abs(characteristic_poly(one, w)) == doctest::Approx(3.0));
    }
    CHECK_THROWS_AS(characteristic_poly(one, PhasePoint::origin(2)), std::invalid_argument);
}

TEST_CASE("quantum translation")
{
    const auto cfg = make_config(1, 64);
    std::mt19937_64 rng(8);
    const auto a = suites::random_low_rank(cfg, 5, 8, rng);

    CHECK((translate(PhasePoint(0.0, 0.0), a) - a).frobenius_norm() < 1e-12);
    CHECK_THROWS_AS(translate(PhasePoint::origin(2), a), std::invalid_argument);

    const PhasePoint z(0.31, -0.22);
    const auto moved = translate(z, a);
    const auto s0 = singular_values(a), s1 = singular_values(Eigen::MatrixXcd(moved.block(32, 32)));
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(std::abs(s0[i] - s1[i]) < 1e-4);

    for (double x : {-1.5, 0.0, 0.75})
        for (double y : {-0.5, 1.25}) {
            const PhasePoint w(x, y);
            const auto lhs = fourier_wigner_at(moved, w);
            const auto rhs = cocycle(z, w).value() * fourier_wigner_at(a, w);
            CHECK(std::abs(lhs - rhs) < 1e-5);
        }

    const DifferenceSpec ident({PhasePoint(0.0, 0.0)}, {1.0});
    CHECK((difference_apply(ident, a) - a).frobenius_norm() < 1e-12);
    const DifferenceSpec pair({PhasePoint(0.1, 0.0), PhasePoint(0.0, 0.1)}, {1.0, -1.0});
    CHECK(difference_apply(pair, FockOperator::zero(cfg)).is_zero());
}

TEST_CASE("Gram matrices and independence margins")
{
    const auto cfg = make_config(1, 64);
    const auto p0 = FockOperator::basis_projector(cfg, 0);

    const auto g1 = gram_matrix({PhasePoint(0.4, 0.1)}, p0);
    CHECK(g1.rows() == 1);
    CHECK(std::abs(g1(0, 0) - 1.0) < 1e-12);
    CHECK_THROWS_AS(gram_matrix({PhasePoint(0.0, 0.0)}, FockOperator::zero(cfg)), std::invalid_argument);

    for (double d : {0.1, 0.5, 1.0, 2.0}) {
        const auto g = gram_matrix({PhasePoint(0.0, 0.0), PhasePoint(0.6 * d, 0.8 * d)}, p0);
        const double off = std::exp(-kPi * d * d);
        CHECK(std::abs(g(0, 0) - 1.0) < 1e-6);
        CHECK(std::abs(g(1, 1) - 1.0) < 1e-6);
        CHECK(std::abs(std::abs(g(0, 1)) - off) < 1e-6);
        CHECK(std::abs(g(0, 1) - std::conj(g(1, 0))) < 1e-14);
        const double m = independence_margin({PhasePoint(0.0, 0.0), PhasePoint(0.6 * d, 0.8 * d)}, p0);
        CHECK(std::abs(m - (1.0 - off)) < 1e-5);
    }
    CHECK(independence_margin({PhasePoint(-1.5, 0.0), PhasePoint(1.5, 0.0)}, p0) > 1.0 - 1e-10);

    // Coincident points, allowed here, give a singular Gram matrix.
    const PhasePoint z(0.2, 0.3);
    CHECK(independence_margin({z, z}, p0) < 1e-12);

    std::mt19937_64 rng(12);
    const auto a = suites::random_low_rank(cfg, 3, 8, rng);
    const auto pts = suites::random_separated_points(1, 5, 1.0, 0.3, rng);
    const auto g = gram_matrix(pts, a);
    CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
    const double margin = independence_margin(pts, a);
    CHECK(margin > 1e-6);
    CHECK(margin <= 1.0);
}

TEST_CASE("point files")
{
    const std::vector<PhasePoint> pts{PhasePoint(0.1, 0.2), PhasePoint(-0.3, 0.4)};
    std::stringstream ss;
    write_points_csv(ss, pts);
    CHECK(read_points_csv(ss) == pts);
    std::stringstream with_header("# comment\nx,y\n0.5,0.25\n\n1,2\n");
    const auto parsed = read_points_csv(with_header);
    CHECK(parsed.size() == 2);
    CHECK(parsed[1] == PhasePoint(1.0, 2.0));
    std::stringstream odd("1,2,3\n");
    CHECK_THROWS(read_points_csv(odd));
}

TEST_CASE("translation property suites")
{
    const auto cfg = make_config(1, 64);
    const auto inter = suites::intertwining_check(cfg, 3, 3, 5);
    INFO(inter.metrics.dump());
    CHECK(inter.pass());
    const auto alg = suites::translation_algebra_check(cfg, 3, 5);
    INFO(alg.metrics.dump());
    CHECK(alg.pass());
    const auto pairs = suites::pair_margin_check(cfg, {0.25, 0.5, 1.0, 2.0}, 5);
    INFO(pairs.metrics.dump());
    CHECK(pairs.pass());
    const auto configs = suites::random_configuration_check(
        cfg, {suites::OperatorKind::ground_state, suites::OperatorKind::rank3, suites::OperatorKind::bump}, 2, 5);
    INFO(configs.metrics.dump());
    CHECK(configs.pass());
}
