#pragma once

// Bipartite and tripartite entanglement / steering criteria for three-mode
// Gaussian states. All are sufficient conditions: a value strictly below the
// bound certifies the property, a value at or above it proves nothing.
//
// With the vacuum-normalized quadratures used here the bounds are 4 for the
// variance-sum criteria and 1 for the inferred-variance products (4 for the
// combined-pair product).

#include "core.hpp"

#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace trigauss {

enum class CriterionLabel {
    DS_PLUS,      // V(Xi+Xj) + V(Yi-Yj), bound 4
    DS_MINUS,     // V(Xi-Xj) + V(Yi+Yj), bound 4
    REID_PAIR,    // Vinf(Xi) * Vinf(Yi) inferred from mode j, bound 1
    VLF_PAIR,     // V(Xi-Xj) + V(Yi+Yj+gk*Yk), bound 4
    VLF_SINGLE,   // V(Xp-(Xa+Xb)/sqrt2) + V(Yp+(Ya+Yb)/sqrt2), bound 4
    STEER3_ONE,   // two modes steer the third, bound 1
    STEER3_PAIR,  // one mode steers the combined pair, bound 4
};

enum class Sign { plus, minus };

inline double signum(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }

// Verdicts use strict inequality with a small slack so exact bound saturation
// (zero interaction) never counts as violation.
inline constexpr double kViolationSlack = 1e-9;

struct CriterionResult {
    double value = 0.0;
    double bound = 0.0;
    bool violated = false;
    CriterionLabel label{};
    std::vector<int> indices;  // modes, in argument order
    Sign sign_x = Sign::plus;  // inference signs actually used (STEER3_* only)
    Sign sign_y = Sign::plus;
};

namespace detail {
inline CriterionResult make_result(double value, double bound, CriterionLabel label,
                                   std::vector<int> indices) {
    CriterionResult r;
    r.value = value;
    r.bound = bound;
    r.violated = value < bound - kViolationSlack;
    r.label = label;
    r.indices = std::move(indices);
    return r;
}

inline void require_mode(int m, const char* who) {
    if (m < 1 || m > 3) throw std::invalid_argument(std::string(who) + ": mode must be 1, 2 or 3");
}

inline void require_distinct(int i, int j, const char* who) {
    require_mode(i, who);
    require_mode(j, who);
    if (i == j) throw std::invalid_argument(std::string(who) + ": modes must be distinct");
}

// The two modes other than m, in ascending order.
inline std::pair<int, int> others(int m) {
    return {m == 1 ? 2 : 1, m == 3 ? 2 : 3};
}
}  // namespace detail

inline constexpr std::array<std::pair<int, int>, 3> kModePairs{{{1, 2}, {1, 3}, {2, 3}}};

// Sum criterion: sign plus pairs Xi+Xj with Yi-Yj, sign minus pairs Xi-Xj
// with Yi+Yj. Below 4 certifies bipartite entanglement of modes i, j.
inline CriterionResult duan_simon(const CovarianceMatrix& cov, int i, int j, Sign sign) {
    detail::require_distinct(i, j, "duan_simon");
    const double s = signum(sign);
    const double value = variance_of(cov, qx(i) + s * qx(j)) + variance_of(cov, qy(i) - s * qy(j));
    return detail::make_result(value, 4.0,
                               sign == Sign::plus ? CriterionLabel::DS_PLUS : CriterionLabel::DS_MINUS,
                               {i, j});
}

// Variance of `target` after subtracting the best linear estimate built from
// `readout`.
inline double inferred_variance(const CovarianceMatrix& cov, const LinearCombination& target,
                                const LinearCombination& readout) {
    const double d = variance_of(cov, readout);
    if (!(d > 0.0)) throw std::logic_error("inferred_variance: readout variance must be positive");
    const double c = covariance_of(cov, target, readout);
    return variance_of(cov, target) - c * c / d;
}

// Product of inferred variances of the steered mode, each quadrature read out
// from the same quadrature of the steerer. Below 1 demonstrates steering of
// `steered` by `steerer`; the arguments are not interchangeable.
inline CriterionResult reid_epr(const CovarianceMatrix& cov, int steered, int steerer) {
    detail::require_distinct(steered, steerer, "reid_epr");
    const double vx = inferred_variance(cov, qx(steered), qx(steerer));
    const double vy = inferred_variance(cov, qy(steered), qy(steerer));
    return detail::make_result(vx * vy, 1.0, CriterionLabel::REID_PAIR, {steered, steerer});
}

struct GainVector {
    double g1 = 0.0, g2 = 0.0, g3 = 0.0;
    double operator[](int mode) const {
        switch (mode) {
            case 1: return g1;
            case 2: return g2;
            case 3: return g3;
        }
        throw std::invalid_argument("GainVector: mode must be 1, 2 or 3");
    }
};

// g_i = -[V(Yi,Yj) + V(Yi,Yk)] / V(Yi): the gain minimizing V(Yj+Yk+gi*Yi).
inline GainVector vlf_optimal_gains(const CovarianceMatrix& cov) {
    const auto g = [&cov](int i) {
        const auto [j, k] = detail::others(i);
        return -(covariance_of(cov, qy(i), qy(j)) + covariance_of(cov, qy(i), qy(k))) /
               variance_of(cov, qy(i));
    };
    return {g(1), g(2), g(3)};
}

// Pairwise three-mode inequality: the free mode's Y enters with gain g_k.
// Violation by any two of the three pairs certifies tripartite entanglement.
inline CriterionResult vlf_pairwise(const CovarianceMatrix& cov, int i, int j,
                                    const GainVector& gains) {
    detail::require_distinct(i, j, "vlf_pairwise");
    const int k = 6 - i - j;
    const double value = variance_of(cov, qx(i) - qx(j)) +
                         variance_of(cov, qy(i) + qy(j) + qy(k, gains[k]));
    return detail::make_result(value, 4.0, CriterionLabel::VLF_PAIR, {i, j});
}

inline CriterionResult vlf_pairwise(const CovarianceMatrix& cov, int i, int j) {
    return vlf_pairwise(cov, i, j, vlf_optimal_gains(cov));
}

// Single-condition inequality around a pivot mode; violation alone certifies
// tripartite entanglement.
inline CriterionResult vlf_single(const CovarianceMatrix& cov, int pivot) {
    detail::require_mode(pivot, "vlf_single");
    const auto [a, b] = detail::others(pivot);
    const double s = 1.0 / std::sqrt(2.0);
    const double value = variance_of(cov, qx(pivot) - qx(a, s) - qx(b, s)) +
                         variance_of(cov, qy(pivot) + qy(a, s) + qy(b, s));
    return detail::make_result(value, 4.0, CriterionLabel::VLF_SINGLE, {pivot});
}

// Two modes steer the third: the steered mode's quadratures are inferred from
// Xj +- Xk and Yj +- Yk. Each quadrature independently picks the sign giving
// the smaller inferred variance; readouts with (near-)zero variance are
// skipped. Below 1 demonstrates steering of `steered` by the pair.
inline CriterionResult steering3_one_from_two(const CovarianceMatrix& cov, int steered) {
    detail::require_mode(steered, "steering3_one_from_two");
    const auto [j, k] = detail::others(steered);
    const auto best = [&](Quad q, Sign& chosen) {
        double best_v = std::numeric_limits<double>::infinity();
        bool usable = false;
        for (Sign s : {Sign::plus, Sign::minus}) {
            const LinearCombination readout = quad(j, q) + signum(s) * quad(k, q);
            if (variance_of(cov, readout) <= 1e-12) continue;  // degenerate readout
            const double v = inferred_variance(cov, quad(steered, q), readout);
            if (v < best_v) {
                best_v = v;
                chosen = s;
                usable = true;
            }
        }
        if (!usable) best_v = variance_of(cov, quad(steered, q));  // no inference possible
        return best_v;
    };
    Sign sx = Sign::plus, sy = Sign::plus;
    const double vx = best(Quad::X, sx);
    const double vy = best(Quad::Y, sy);
    CriterionResult r = detail::make_result(vx * vy, 1.0, CriterionLabel::STEER3_ONE, {steered});
    r.sign_x = sx;
    r.sign_y = sy;
    return r;
}

// One mode steers the combined pair: inferred variances of Xj +- Xk and
// Yj +- Yk (same sign in both quadratures), read out from the steerer.
// Below 4 demonstrates steering of the pair.
inline CriterionResult steering3_two_from_one(const CovarianceMatrix& cov, int steerer, Sign sign) {
    detail::require_mode(steerer, "steering3_two_from_one");
    const auto [j, k] = detail::others(steerer);
    const double s = signum(sign);
    const double vx = inferred_variance(cov, qx(j) + qx(k, s), qx(steerer));
    const double vy = inferred_variance(cov, qy(j) + qy(k, s), qy(steerer));
    CriterionResult r = detail::make_result(vx * vy, 4.0, CriterionLabel::STEER3_PAIR, {steerer});
    r.sign_x = sign;
    r.sign_y = sign;
    return r;
}

// Most favorable sign.
inline CriterionResult steering3_two_from_one(const CovarianceMatrix& cov, int steerer) {
    const CriterionResult p = steering3_two_from_one(cov, steerer, Sign::plus);
    const CriterionResult m = steering3_two_from_one(cov, steerer, Sign::minus);
    return p.value <= m.value ? p : m;
}

// Entanglement regime of a state. A T state carries tripartite entanglement
// while no mode pair is bipartite entangled.
struct StateClass {
    std::set<std::pair<int, int>> bipartite_pairs;  // unordered {i,j}, i < j
    bool tripartite = false;
    bool t_state = false;
    std::set<std::pair<int, int>> steerable_pairs;  // directed (steered, steerer)
    // Diagnostic split of the tripartite verdict.
    bool tripartite_by_pairwise = false;  // >= 2 of the three optimized pairwise inequalities
    bool tripartite_by_single = false;    // any single-condition inequality
};

inline StateClass classify(const CovarianceMatrix& cov) {
    StateClass sc;
    for (const auto& [i, j] : kModePairs)
        if (duan_simon(cov, i, j, Sign::plus).violated ||
            duan_simon(cov, i, j, Sign::minus).violated)
            sc.bipartite_pairs.insert({i, j});
    const GainVector gains = vlf_optimal_gains(cov);
    int pairwise = 0;
    for (const auto& [i, j] : kModePairs) pairwise += vlf_pairwise(cov, i, j, gains).violated;
    sc.tripartite_by_pairwise = pairwise >= 2;
    for (int p = 1; p <= 3; ++p)
        if (vlf_single(cov, p).violated) sc.tripartite_by_single = true;
    sc.tripartite = sc.tripartite_by_pairwise || sc.tripartite_by_single;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            if (a != b && reid_epr(cov, a, b).violated) sc.steerable_pairs.insert({a, b});
    sc.t_state = sc.tripartite && sc.bipartite_pairs.empty();
    return sc;
}

}  // namespace trigauss
