#include <catch2/catch_amalgamated.hpp>

#include "trigauss/criteria.hpp"
#include "trigauss/models.hpp"

#include <cmath>
#include <random>

using namespace trigauss;
using Catch::Approx;

namespace {
const CovarianceMatrix& vacuum() {
    static const CovarianceMatrix v{Mat6::Identity()};
    return v;
}
AokiParams sym(double r) { return {r, 2.0 / 3.0, 0.5}; }
}  // namespace

TEST_CASE("every criterion sits exactly on its bound for vacuum") {
    const CovarianceMatrix& v = vacuum();
    for (const auto& [i, j] : kModePairs) {
        for (const Sign s : {Sign::plus, Sign::minus}) {
            const auto r = duan_simon(v, i, j, s);
            CHECK(r.value == Approx(4.0).margin(1e-12));
            CHECK_FALSE(r.violated);
        }
        CHECK(reid_epr(v, i, j).value == Approx(1.0).margin(1e-12));
        CHECK(vlf_pairwise(v, i, j).value == Approx(4.0).margin(1e-12));
    }
    for (int m = 1; m <= 3; ++m) {
        CHECK(vlf_single(v, m).value == Approx(4.0).margin(1e-12));
        CHECK(steering3_one_from_two(v, m).value == Approx(1.0).margin(1e-12));
        CHECK(steering3_two_from_one(v, m).value == Approx(4.0).margin(1e-12));
    }
    const GainVector g = vlf_optimal_gains(v);
    CHECK(g.g1 == 0.0);
    CHECK(g.g2 == 0.0);
    CHECK(g.g3 == 0.0);
}

TEST_CASE("index validation") {
    const CovarianceMatrix& v = vacuum();
    CHECK_THROWS_AS(duan_simon(v, 1, 1, Sign::plus), std::invalid_argument);
    CHECK_THROWS_AS(duan_simon(v, 0, 2, Sign::plus), std::invalid_argument);
    CHECK_THROWS_AS(reid_epr(v, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(vlf_pairwise(v, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(vlf_single(v, 0), std::invalid_argument);
    CHECK_THROWS_AS(steering3_one_from_two(v, 5), std::invalid_argument);
    CHECK_THROWS_AS(steering3_two_from_one(v, -1), std::invalid_argument);
}

TEST_CASE("pair inequality against the scalar reference") {
    const CovarianceMatrix v = aoki_covariance(sym(1.0));
    const auto f = aoki_closed_forms(1.0);
    const auto minus = duan_simon(v, 1, 2, Sign::minus);
    CHECK(minus.value == Approx(f.ds_minus).margin(1e-12));
    CHECK(minus.violated);
    const auto plus = duan_simon(v, 1, 2, Sign::plus);
    CHECK(plus.value == Approx(f.ds_plus).margin(1e-12));
    CHECK_FALSE(plus.violated);

    const auto opa = duan_simon(opa_covariance({std::log(2.0)}), 1, 2, Sign::minus);
    CHECK(opa.value == Approx(3.25).margin(1e-9));
    CHECK(opa.violated);
}

TEST_CASE("inferred-variance pair products") {
    // pure two-mode squeezing between 1 and 3: textbook value 1/cosh(2t)^2
    const CovarianceMatrix v = asymmetric_covariance({1.0, 0.0, 0.5});
    const auto r13 = reid_epr(v, 1, 3);
    CHECK(r13.value == Approx(1.0 / (std::cosh(1.0) * std::cosh(1.0))).margin(1e-12));
    CHECK(r13.violated);
    CHECK(reid_epr(v, 3, 1).violated);
    // the uncoupled vacuum mode can neither steer nor be steered
    CHECK(reid_epr(v, 2, 1).value == Approx(1.0).margin(1e-12));
    CHECK_FALSE(reid_epr(v, 2, 1).violated);
    // reading mode 1 out of the uncorrelated vacuum gains nothing over V(X1)V(Y1)
    CHECK(reid_epr(v, 1, 2).value ==
          Approx(std::cosh(1.0) * std::cosh(1.0)).margin(1e-12));
    CHECK_FALSE(reid_epr(v, 1, 2).violated);
}

TEST_CASE("pair products saturate for the fully symmetric states") {
    // both symmetric models are minimum-uncertainty in every mode pair: the
    // product sits on the bound for all parameters instead of crossing it
    for (double kt = 0.0; kt <= 2.0; kt += 0.1)
        CHECK(std::abs(reid_epr(opa_covariance({kt}), 1, 2).value - 1.0) <= 1e-9);
    for (double r = 0.0; r <= 3.0; r += 0.15)
        for (const auto& [i, j] : kModePairs)
            CHECK(std::abs(reid_epr(aoki_covariance(sym(r)), i, j).value - 1.0) <= 1e-9);
}

TEST_CASE("pair products under the two-pump dynamics") {
    // 1 steered by 2 and 2 steered by 3 never cross the bound on the grid
    double min12 = 10.0, min23 = 10.0, min21 = 10.0;
    for (double t = 0.0; t <= 2.5; t += 0.0125) {
        const CovarianceMatrix v = asymmetric_covariance({1.0, 0.6, t});
        min12 = std::min(min12, reid_epr(v, 1, 2).value);
        min23 = std::min(min23, reid_epr(v, 2, 3).value);
        min21 = std::min(min21, reid_epr(v, 2, 1).value);
    }
    CHECK(min12 >= 1.0 - 1e-9);
    CHECK(min23 >= 1.0 - 1e-9);
    // the reverse direction 2 steered by 1 does cross
    CHECK(min21 < 0.65);
}

TEST_CASE("optimized gains beat every alternative") {
    const CovarianceMatrix v = aoki_covariance(sym(1.0));
    const double optimal = vlf_pairwise(v, 1, 2).value;
    CHECK(optimal == Approx(aoki_closed_forms(1.0).v_ij).margin(1e-10));

    CHECK(vlf_pairwise(v, 1, 2, GainVector{0.0, 0.0, 0.0}).value >= optimal - 1e-12);
    CHECK(vlf_pairwise(v, 1, 2, GainVector{1.0, 1.0, 1.0}).value >= optimal - 1e-12);
    CHECK(vlf_pairwise(v, 1, 2, GainVector{-1.0, -1.0, -1.0}).value >= optimal - 1e-12);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> gain(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const GainVector g{gain(rng), gain(rng), gain(rng)};
        CHECK(vlf_pairwise(v, 1, 2, g).value >= optimal - 1e-12);
    }

    // full permutation symmetry forces equal gains
    const GainVector g = vlf_optimal_gains(opa_covariance({0.8}));
    CHECK(g.g1 == Approx(g.g2).margin(1e-14));
    CHECK(g.g2 == Approx(g.g3).margin(1e-14));
}

TEST_CASE("pairwise three-mode inequality matches the reference on the whole grid") {
    for (double r = 0.0; r <= 3.0; r += 0.01) {
        const CovarianceMatrix v = aoki_covariance(sym(r));
        const double want = aoki_closed_forms(r).v_ij;
        for (const auto& [i, j] : kModePairs)
            CHECK(vlf_pairwise(v, i, j).value == Approx(want).margin(1e-10));
    }
}

TEST_CASE("single-condition three-mode inequality") {
    const CovarianceMatrix v = aoki_covariance(sym(1.0));
    const double want = aoki_closed_forms(1.0).v_ijk;
    for (int p = 1; p <= 3; ++p) CHECK(vlf_single(v, p).value == Approx(want).margin(1e-12));
    CHECK(vlf_single(v, 1).violated);

    // recrossing of the bound: violated just below ln(17+12*sqrt(2)), not above
    const double r0 = std::log(17.0 + 12.0 * std::sqrt(2.0));
    CHECK(vlf_single(aoki_covariance(sym(r0 - 0.01)), 1).violated);
    CHECK_FALSE(vlf_single(aoki_covariance(sym(r0 + 0.01)), 1).violated);
}

TEST_CASE("two steering one") {
    const CovarianceMatrix v = aoki_covariance(sym(1.0));
    const double want = aoki_closed_forms(1.0).steer_one;
    for (int m = 1; m <= 3; ++m) {
        const auto r = steering3_one_from_two(v, m);
        CHECK(r.value == Approx(want).margin(1e-12));
        CHECK(r.violated);
    }

    // two-pump dynamics: mode 1 is steered hard by the pair...
    const auto s1 = steering3_one_from_two(asymmetric_covariance({1.0, 0.6, 2.5}), 1);
    CHECK(s1.value == Approx(0.008532457523).margin(1e-9));
    CHECK(s1.violated);
    // ...while modes 2 and 3 sit exactly on the bound for every t
    for (double t = 0.0; t <= 2.5; t += 0.0125) {
        const CovarianceMatrix w = asymmetric_covariance({1.0, 0.6, t});
        CHECK(std::abs(steering3_one_from_two(w, 2).value - 1.0) <= 1e-9);
        CHECK(std::abs(steering3_one_from_two(w, 3).value - 1.0) <= 1e-9);
    }
}

TEST_CASE("one steering two") {
    const CovarianceMatrix v = aoki_covariance(sym(1.0));
    const double want = aoki_closed_forms(1.0).steer_pair;
    for (int m = 1; m <= 3; ++m) {
        const auto best = steering3_two_from_one(v, m);
        CHECK(best.value == Approx(want).margin(1e-12));
        CHECK(best.violated);
        // the explicit-sign overloads bracket the best one
        CHECK(steering3_two_from_one(v, m, Sign::plus).value >= best.value);
        CHECK(steering3_two_from_one(v, m, Sign::minus).value >= best.value);
        CHECK(steering3_two_from_one(v, m, best.sign_x).value == best.value);
    }

    // permutation-symmetric states tie the two steering directions together
    for (double kt = 0.0; kt <= 2.0; kt += 0.1) {
        const CovarianceMatrix w = opa_covariance({kt});
        CHECK(steering3_two_from_one(w, 1).value ==
              Approx(4.0 * steering3_one_from_two(w, 1).value).margin(1e-10));
    }
}

TEST_CASE("classification of known states") {
    const StateClass vac = classify(vacuum());
    CHECK(vac.bipartite_pairs.empty());
    CHECK_FALSE(vac.tripartite);
    CHECK_FALSE(vac.t_state);
    CHECK(vac.steerable_pairs.empty());

    // moderate symmetric squeezing: everything entangled with everything
    const StateClass mid = classify(aoki_covariance(sym(1.0)));
    CHECK(mid.bipartite_pairs.size() == 3);
    CHECK(mid.tripartite);
    CHECK(mid.tripartite_by_pairwise);
    CHECK(mid.tripartite_by_single);
    CHECK_FALSE(mid.t_state);

    // strong symmetric squeezing: pair criteria die out, only the tripartite
    // ones survive
    const StateClass strong = classify(aoki_covariance(sym(2.0)));
    CHECK(strong.bipartite_pairs.empty());
    CHECK(strong.tripartite);
    CHECK(strong.t_state);

    // two-mode squeezing between 1 and 3 only: steerable both ways, mode 2 inert
    const StateClass tms = classify(asymmetric_covariance({1.0, 0.0, 0.5}));
    CHECK(tms.bipartite_pairs.count({1, 3}) == 1);
    CHECK(tms.steerable_pairs.count({1, 3}) == 1);
    CHECK(tms.steerable_pairs.count({3, 1}) == 1);
    for (const auto& [a, b] : tms.steerable_pairs) {
        CHECK(a != 2);
        CHECK(b != 2);
    }
}

TEST_CASE("classification agrees with the underlying criteria") {
    for (const double t : {0.5, 1.25, 2.0}) {
        const CovarianceMatrix v = asymmetric_covariance({1.0, 0.6, t});
        const StateClass sc = classify(v);
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                if (a != b)
                    CHECK(sc.steerable_pairs.count({a, b}) ==
                          (reid_epr(v, a, b).violated ? 1u : 0u));
        for (const auto& [i, j] : kModePairs) {
            const bool pair_flag = duan_simon(v, i, j, Sign::plus).violated ||
                                   duan_simon(v, i, j, Sign::minus).violated;
            CHECK(sc.bipartite_pairs.count({i, j}) == (pair_flag ? 1u : 0u));
        }
        CHECK(sc.t_state == (sc.tripartite && sc.bipartite_pairs.empty()));
    }
}

TEST_CASE("criteria are equivariant under mode relabeling") {
    // permutation-symmetric states must give index-independent values
    for (const CovarianceMatrix& v :
         {opa_covariance({0.8}), aoki_covariance(sym(1.3))}) {
        const double d0 = duan_simon(v, 1, 2, Sign::minus).value;
        const double p0 = vlf_pairwise(v, 1, 2).value;
        for (const auto& [i, j] : kModePairs) {
            CHECK(duan_simon(v, i, j, Sign::minus).value == Approx(d0).margin(1e-10));
            CHECK(vlf_pairwise(v, i, j).value == Approx(p0).margin(1e-10));
        }
        const double s0 = vlf_single(v, 1).value;
        const double o0 = steering3_one_from_two(v, 1).value;
        for (int m = 1; m <= 3; ++m) {
            CHECK(vlf_single(v, m).value == Approx(s0).margin(1e-10));
            CHECK(steering3_one_from_two(v, m).value == Approx(o0).margin(1e-10));
        }
    }
}
