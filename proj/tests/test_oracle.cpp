#include <catch2/catch_amalgamated.hpp>

#include "trigauss/oracle.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace trigauss;
using Catch::Approx;

namespace {
double max_abs(const Mat6& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("drift matrices generate symplectic flows") {
    // M*Omega + Omega*M^T = 0 is exactly the condition for exp(Mt) symplectic
    const Mat6& w = symplectic_form();
    const Mat6 opa = opa_drift(1.0).entries;
    CHECK(max_abs(opa * w + w * opa.transpose()) == 0.0);
    const Mat6 asym = asymmetric_drift(1.0, 0.6).entries;
    CHECK(max_abs(asym * w + w * asym.transpose()) == 0.0);
}

TEST_CASE("two-pump drift cubes back to itself") {
    // M^3 = zeta^2 M pins the whole power series to three terms
    const Mat6 m = asymmetric_drift(1.0, 0.6).entries;
    const double zeta2 = 1.0 - 0.6 * 0.6;
    CHECK(max_abs(m * m * m - zeta2 * m) <= 1e-12);
}

TEST_CASE("matrix exponential") {
    CHECK(max_abs(expm(Mat6::Zero()) - Mat6::Identity()) == 0.0);

    // one-parameter group property on both generators
    for (const auto& gen : {opa_drift(1.0).entries, asymmetric_drift(1.0, 0.6).entries}) {
        for (const auto& [a, b] : {std::pair{0.3, 0.7}, {1.0, 1.0}, {0.5, 1.5}}) {
            const Mat6 whole = expm(gen * (a + b));
            const Mat6 split = expm(gen * a) * expm(gen * b);
            CHECK(max_abs(whole - split) <= 1e-10);
        }
        // inverse from the reversed flow
        CHECK(max_abs(expm(gen * 0.9) * expm(gen * -0.9) - Mat6::Identity()) <= 1e-12);
    }

    // diagonal generator has an elementwise exponential
    Mat6 d = Mat6::Zero();
    d(0, 0) = 0.5;
    d(1, 1) = -0.5;
    const Mat6 e = expm(d);
    CHECK(e(0, 0) == Approx(std::exp(0.5)).epsilon(1e-14));
    CHECK(e(1, 1) == Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(e(2, 2) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("propagators are symplectic across the grids") {
    const Mat6& w = symplectic_form();
    for (double kt = 0.0; kt <= 2.0; kt += 0.2) {
        const Mat6 s = build_propagator(OpaParams{kt}).entries;
        CHECK(max_abs(s * w * s.transpose() - w) <= 1e-11);
    }
    for (double t = 0.0; t <= 2.5; t += 0.25) {
        const Mat6 s = build_propagator(AsymmetricParams{1.0, 0.6, t}).entries;
        CHECK(max_abs(s * w * s.transpose() - w) <= 1e-11);
    }
    for (double r = 0.0; r <= 3.0; r += 0.3) {
        const Mat6 s = build_propagator(AokiParams{r, 2.0 / 3.0, 0.5}).entries;
        CHECK(max_abs(s * w * s.transpose() - w) <= 1e-11);
    }
}

TEST_CASE("passive network propagator is orthogonal and symplectic") {
    const Mat6 s = aoki_passive_propagator(2.0 / 3.0, 0.5).entries;
    CHECK(max_abs(s * s.transpose() - Mat6::Identity()) <= 1e-14);
    const Mat6& w = symplectic_form();
    CHECK(max_abs(s * w * s.transpose() - w) <= 1e-14);
}

TEST_CASE("propagation reproduces each closed-form covariance") {
    CHECK(max_abs(oracle_covariance(OpaParams{std::log(2.0)}).entries() -
                  opa_covariance({std::log(2.0)}).entries()) <= 1e-10);
    CHECK(max_abs(oracle_covariance(AokiParams{1.0, 2.0 / 3.0, 0.5}).entries() -
                  aoki_covariance({1.0, 2.0 / 3.0, 0.5}).entries()) <= 1e-10);
    CHECK(max_abs(oracle_covariance(AsymmetricParams{1.0, 0.6, 1.25}).entries() -
                  asymmetric_covariance({1.0, 0.6, 1.25}).entries()) <= 1e-10);
}

TEST_CASE("propagating vacuum by the identity changes nothing") {
    const CovarianceMatrix vac{Mat6::Identity()};
    const CovarianceMatrix out = propagate({Mat6::Identity()}, vac);
    CHECK(max_abs(out.entries() - vac.entries()) == 0.0);
}

TEST_CASE("two-mode squeezer limit of the two-pump propagator") {
    const CovarianceMatrix v = oracle_covariance(AsymmetricParams{1.0, 0.0, 0.7});
    CHECK(variance_of(v, qx(1)) == Approx(std::cosh(1.4)).epsilon(1e-12));
    CHECK(covariance_of(v, qx(1), qx(3)) == Approx(std::sinh(1.4)).epsilon(1e-12));
    CHECK(variance_of(v, qx(2)) == Approx(1.0).margin(1e-13));
}

TEST_CASE("closed forms agree with propagation over every default grid") {
    double worst = 0.0;
    for (double kt = 0.0; kt <= 2.0; kt += 0.01) {
        const VerifyReport r = verify_model(OpaParams{kt});
        worst = std::max(worst, r.max_abs_diff);
        CHECK(r.pure);
        CHECK(r.physical);
    }
    CHECK(worst <= 1e-10);

    worst = 0.0;
    for (double r = 0.0; r <= 3.0; r += 0.01) {
        const VerifyReport rep = verify_model(AokiParams{r, 2.0 / 3.0, 0.5});
        worst = std::max(worst, rep.max_abs_diff);
        CHECK(rep.pure);
        CHECK(rep.physical);
    }
    CHECK(worst <= 1e-10);

    worst = 0.0;
    for (double t = 0.0; t <= 2.5; t += 0.0125) {
        const VerifyReport r = verify_model(AsymmetricParams{1.0, 0.6, t});
        worst = std::max(worst, r.max_abs_diff);
        CHECK(r.pure);
        CHECK(r.physical);
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("coefficient map equals the exponential route") {
    for (const double t : {0.25, 0.7, 1.25, 2.0, 2.5}) {
        const AsymmetricParams p{1.0, 0.6, t};
        const Mat6 blocks = test_helpers::asym_propagator_from_coefficients(p);
        const Mat6 exp_route = build_propagator(p).entries;
        CHECK(max_abs(blocks - exp_route) <= 1e-11);
    }
}

TEST_CASE("two-pump verification survives the near-degenerate limit") {
    const VerifyReport r = verify_model(AsymmetricParams{1.0, 1.0 - 1e-9, 1.3});
    CHECK(r.max_abs_diff <= 1e-10);
    CHECK(r.pure);
    CHECK(r.physical);
}

TEST_CASE("mistyped coefficient variant is not a Gaussian dynamics") {
    // denominator and sign slips that circulate in print: the map fails the
    // symplectic condition outright, and the state it would produce violates
    // the uncertainty bound, so the covariance constructor rejects it
    const AsymmetricParams p{1.0, 0.6, 1.25};  // zeta*t = 1
    const Mat6 bad = test_helpers::asym_propagator_mistyped(p);
    CHECK(test_helpers::symplectic_defect(bad) > 0.1);

    const Mat6 would_be = bad * Mat6(Mat6::Identity()) * bad.transpose();
    CHECK_THROWS_AS(CovarianceMatrix{would_be}, std::invalid_argument);

    // the corrected map passes both gates at the same parameters
    const Mat6 good = test_helpers::asym_propagator_from_coefficients(p);
    CHECK(test_helpers::symplectic_defect(good) <= 1e-11);
    CHECK(is_pure(CovarianceMatrix(Mat6(good * good.transpose()))));
}

TEST_CASE("propagator parameter validation") {
    CHECK_THROWS_AS(build_propagator(OpaParams{-0.5}), std::invalid_argument);
    CHECK_THROWS_AS(build_propagator(AokiParams{-0.5, 2.0 / 3.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(build_propagator(AsymmetricParams{1.0, 0.6, -1.0}), std::invalid_argument);
}
