// SPDX-License-Identifier: Apache-2.0
//
// Verification suites shared by the command-line tool and the acceptance
// binary. Each check returns its metrics as ordered JSON plus the names of
// the metrics that missed their thresholds. Random families are drawn from
// std::mt19937_64 seeded per check, so results depend only on the seed.

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qtr/counterexample.hpp"
#include "qtr/fock.hpp"
#include "qtr/transforms.hpp"

namespace qtr::suites {

using json = nlohmann::ordered_json;

struct CheckResult
{
    json metrics = json::object();
    std::vector<std::string> failures;
    /// Sidecar files: (file name, contents).
    std::vector<std::pair<std::string, std::string>> files;

    bool pass() const { return failures.empty(); }
    /// Adds `name` to the failures unless `ok`.
    void expect(const std::string &name, bool ok);
};

/// Generator for one check: the same (seed, stream) always yields the same draws.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream);

/// Uniform sample from the ball |z| <= radius in R^{2n}.
PhasePoint random_point_in_ball(int n, double radius, std::mt19937_64 &rng);

/// `count` points in |z| <= radius with pairwise distance >= min_separation.
std::vector<PhasePoint> random_separated_points(int n, std::size_t count, double radius, double min_separation,
                                                std::mt19937_64 &rng);

/// Random operator of the given rank whose row and column spaces lie in the
/// basis vectors with every coordinate index < support. Unit Frobenius norm.
FockOperator random_low_rank(const FockConfig &cfg, int rank, int support, std::mt19937_64 &rng);

/// exp(-pi a |z - c|^2) exp(2 pi i k . z) for n = 1.
PhaseFunction gaussian_packet(const PhaseGrid &grid, double a, std::array<double, 2> centre,
                              std::array<double, 2> frequency = {0.0, 0.0});

/// Sum of one to three smooth bumps exp(1 - 1/(1 - |z-c|^2/r^2)) with centres in
/// [-1/2, 1/2]^2 and radii in [0.3, 0.5], so the support lies in [-1, 1]^2 (n = 1).
PhaseFunction random_bump(const PhaseGrid &grid, std::mt19937_64 &rng);

/// Grid on which random_bump is sampled before taking its Weyl transform.
PhaseGrid bump_grid();

/// Operator families for the independence checks.
enum class OperatorKind { ground_state, rank3, bump };

OperatorKind parse_operator_kind(const std::string &name);
std::string operator_kind_name(OperatorKind kind);
FockOperator make_operator(OperatorKind kind, const FockConfig &cfg, std::mt19937_64 &rng, WeylOptions options = {});

// ---- representation ----

/// Identity at the origin, ground-state entry, projective relation, isometry of the
/// leading columns and adjoint consistency for `samples` random |z| <= radius.
CheckResult representation_check(const FockConfig &cfg, std::size_t samples, double radius, std::uint64_t seed);

// ---- transforms ----

/// alpha(W(f)) = f on Gaussian packets at (grid, levels) and at doubled M and levels.
CheckResult inversion_check(const PhaseGrid &grid, int levels, WeylOptions options = {});

/// ||W(f)||_{S^2} / ||f||_2 over `family` random Gaussian packets.
CheckResult plancherel_check(const PhaseGrid &grid, int levels, std::size_t family, std::uint64_t seed,
                             WeylOptions options = {});

/// Symplectic Fourier transform applied twice, plus closed-form Gaussian transforms.
CheckResult fourier_check(const PhaseGrid &grid);

/// ||symplectic_fourier(beta(X))||_p / ||X||_{S^p} over `family` random rank <= 5 operators.
CheckResult beta_probe(const PhaseGrid &grid, int levels, const std::vector<double> &ps, std::size_t family,
                       std::uint64_t seed);

/// ||W(T)||_{S^p} / ||T_hat||_p over `family` random bumps supported in [-1, 1]^2.
CheckResult support_ratio_probe(int levels, double p, std::size_t family, std::uint64_t seed,
                                WeylOptions options = {});

/// Weyl(translate_samples(f, Jz)) against translate(z, Weyl(f)) on a Gaussian packet.
CheckResult covariance_check(const PhaseGrid &grid, int levels, std::uint64_t seed, WeylOptions options = {});

// ---- quantum translation ----

/// alpha(z . A) = e(z, .) alpha(A) over `operators` x `shifts` random pairs, |w| <= 2.
CheckResult intertwining_check(const FockConfig &cfg, std::size_t operators, std::size_t shifts, std::uint64_t seed);

/// Group law, Schatten isometry and the Fourier-side factorization of the difference operator.
CheckResult translation_algebra_check(const FockConfig &cfg, std::size_t samples, std::uint64_t seed);

/// Two translates of P_0 at distance d: margin against 1 - exp(-pi d^2).
CheckResult pair_margin_check(const FockConfig &cfg, const std::vector<double> &distances, std::uint64_t seed);

/// Margins of `configurations` random 5-point sets per operator family.
CheckResult random_configuration_check(const FockConfig &cfg, const std::vector<OperatorKind> &kinds,
                                       std::size_t configurations, std::uint64_t seed, WeylOptions options = {});

/// Margin of given points for one operator.
CheckResult independence_check(const FockConfig &cfg, const std::vector<PhasePoint> &points, OperatorKind kind,
                               std::uint64_t seed, WeylOptions options = {});

// ---- counterexample ----

/// Node residuals, closure, length, curvature at (1/4, 0), min |kappa| and sign of kappa.
CheckResult curve_check(const LevelCurve &curve);

/// A = W(sigma) at `levels` and at levels / 2: residuals, norm, self-adjointness,
/// spectrum fit and the Schatten norms on `ps`.
CheckResult counterexample_check(const LevelCurve &curve, int levels, const std::vector<double> &ps, bool dump);

/// Singular-value decay exponent of W(sigma) over [10, levels / 2] against [-0.35, -0.15].
CheckResult spectral_decay_check(const LevelCurve &curve, int levels);

/// |sigma_hat| decay along `rays` over radii [5, 50] against [-0.65, -0.35].
CheckResult fourier_decay_check(const LevelCurve &curve, const std::vector<std::array<double, 2>> &rays);

/// Four rays at generic angles.
std::vector<std::array<double, 2>> generic_rays();

/// Sign scan of the characteristic polynomial over one period cell.
CheckResult zero_scan_check(int grid);

} // namespace qtr::suites
