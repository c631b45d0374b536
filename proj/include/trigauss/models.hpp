#pragma once

// Closed-form covariance matrices of three tripartite optical systems, all
// pure Gaussian states produced from vacuum by quadratic interactions:
//
//   - opa:  a single amplifier pumping all three mode pairs at equal rate;
//           fully permutation-symmetric output.
//   - aoki: three independently squeezed vacua combined on two beamsplitters;
//           permutation-symmetric for mu = 2/3, nu = 1/2.
//   - asymmetric: one crystal concurrently pair-creating into modes 1,3 (rate
//           kappa1) and frequency-converting between 2,3 (rate kappa2);
//           solutions below hold in the hyperbolic regime kappa1 > kappa2.

#include "core.hpp"

#include <variant>

namespace trigauss {

struct UnsupportedRegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

// ---------------------------------------------------------------- opa model

struct OpaParams {
    double kt = 0.0;  // nonlinearity x pump amplitude x interaction time
};

struct OpaCoefficients {
    double A, B, C, D;
};

inline OpaCoefficients opa_coefficients(double kt) {
    if (!(kt >= 0.0) || !std::isfinite(kt))
        throw std::invalid_argument("opa model: kt must be finite and >= 0");
    return {std::cosh(2 * kt) + 2 * std::cosh(kt),
            std::sinh(2 * kt) - 2 * std::sinh(kt),
            std::cosh(2 * kt) - std::cosh(kt),
            std::sinh(kt) + std::sinh(2 * kt)};
}

inline CovarianceMatrix opa_covariance(const OpaParams& p) {
    const auto [A, B, C, D] = opa_coefficients(p.kt);
    // Second moments over vacuum: each mode evolves as (A or B)/3 of itself
    // plus (C or D)/3 of the two partners.
    const double vx = ((A + B) * (A + B) + 2 * (C + D) * (C + D)) / 9.0;
    const double vy = ((A - B) * (A - B) + 2 * (C - D) * (C - D)) / 9.0;
    const double cx = (C + D) * (2 * A + 2 * B + C + D) / 9.0;
    const double cy = (C - D) * (2 * A - 2 * B + C - D) / 9.0;
    Mat6 v = Mat6::Zero();
    for (int a = 0; a < 3; ++a) {
        v(2 * a, 2 * a) = vx;
        v(2 * a + 1, 2 * a + 1) = vy;
        for (int b = 0; b < 3; ++b)
            if (a != b) {
                v(2 * a, 2 * b) = cx;
                v(2 * a + 1, 2 * b + 1) = cy;
            }
    }
    return CovarianceMatrix(v);
}

// --------------------------------------------------------------- aoki model

struct AokiParams {
    double r = 0.0;        // input squeezing parameter
    double mu = 2.0 / 3.0; // first beamsplitter reflectivity
    double nu = 0.5;       // second beamsplitter reflectivity
};

// Combined action of the two beamsplitters: row m gives output mode m in terms
// of the three inputs. Orthogonal for every mu, nu in [0,1].
inline Eigen::Matrix3d beamsplitter_network(double mu, double nu) {
    if (!(mu >= 0.0 && mu <= 1.0) || !(nu >= 0.0 && nu <= 1.0))
        throw std::invalid_argument("aoki model: reflectivities mu, nu must lie in [0,1]");
    Eigen::Matrix3d o;
    o << std::sqrt(1 - mu), std::sqrt(mu), 0.0,
        std::sqrt(mu * (1 - nu)), -std::sqrt((1 - mu) * (1 - nu)), std::sqrt(nu),
        std::sqrt(mu * nu), -std::sqrt(nu * (1 - mu)), -std::sqrt(1 - nu);
    return o;
}

inline CovarianceMatrix aoki_covariance(const AokiParams& p) {
    if (!(p.r >= 0.0) || !std::isfinite(p.r))
        throw std::invalid_argument("aoki model: r must be finite and >= 0");
    const Eigen::Matrix3d o = beamsplitter_network(p.mu, p.nu);
    // Minimum-uncertainty inputs: mode 1 squeezed in Y, modes 2 and 3 in X.
    const Eigen::Vector3d dx(std::exp(p.r), std::exp(-p.r), std::exp(-p.r));
    const Eigen::Vector3d dy(std::exp(-p.r), std::exp(p.r), std::exp(p.r));
    const Eigen::Matrix3d vx = o * dx.asDiagonal() * o.transpose();
    const Eigen::Matrix3d vy = o * dy.asDiagonal() * o.transpose();
    Mat6 v = Mat6::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            v(2 * a, 2 * b) = vx(a, b);
            v(2 * a + 1, 2 * b + 1) = vy(a, b);
        }
    return CovarianceMatrix(v);
}

// Scalar reference expressions for the symmetric network (mu=2/3, nu=1/2).
// Every generic criterion evaluated on aoki_covariance must reproduce these.
struct AokiClosedForms {
    double ds_plus;    // V(Xi+Xj) + V(Yi-Yj)
    double ds_minus;   // V(Xi-Xj) + V(Yi+Yj)
    double v_ij;       // pairwise three-mode inequality at optimal gain
    double v_ijk;      // single-condition three-mode inequality
    double steer_one;  // product of inferred variances, two modes steering one
    double steer_pair; // product of inferred variances, one mode steering two
};

inline AokiClosedForms aoki_closed_forms(double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("aoki closed forms: r must be finite and >= 0");
    const double ch = std::cosh(r), sh = std::sinh(r);
    const double steer = 9.0 / (5.0 + 4.0 * std::cosh(2 * r));
    return {4 * ch + (8.0 / 3.0) * sh,
            4 * ch - (8.0 / 3.0) * sh,
            (2.0 + 10.0 * std::exp(2 * r)) / (std::exp(r) + 2.0 * std::exp(3 * r)),
            4.0 * (ch - (2.0 * std::sqrt(2.0) / 3.0) * sh),
            steer,
            4.0 * steer};
}

// --------------------------------------------------------- asymmetric model

struct AsymmetricParams {
    double kappa1 = 1.0;  // pair-creation rate, modes 1 and 3
    double kappa2 = 0.6;  // exchange rate, modes 2 and 3
    double t = 0.0;       // interaction time
};

struct AsymmetricCoefficients {
    double alpha, beta, gamma, delta, epsilon, eta;
};

// sinh(x)/x, continuous at 0.
inline double sinhc(double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; }

// (cosh(x) - 1)/x^2 via cosh(x) - 1 = 2 sinh^2(x/2): no cancellation for
// small x, full double precision everywhere.
inline double coshm1_over_x2(double x) {
    if (x == 0.0) return 0.5;
    const double s = std::sinh(0.5 * x);
    return 2.0 * s * s / (x * x);
}

// Coefficients of the solved mode operators, with zeta = sqrt(k1^2 - k2^2):
//   alpha = (k1^2 cosh zt - k2^2)/zeta^2   beta    = k1 k2 (cosh zt - 1)/zeta^2
//   gamma = k1 sinh(zt)/zeta               delta   = (k1^2 - k2^2 cosh zt)/zeta^2
//   eta   = cosh zt                        epsilon = k2 sinh(zt)/zeta
// Rewritten through sinhc and coshm1_over_x2 so the nearly-degenerate limit
// kappa2 -> kappa1 (zeta -> 0) keeps full precision instead of hitting 0/0.
inline AsymmetricCoefficients asymmetric_coefficients(const AsymmetricParams& p) {
    if (!(p.kappa1 > 0.0) || !(p.kappa2 >= 0.0) || !(p.t >= 0.0) ||
        !std::isfinite(p.kappa1 + p.kappa2 + p.t))
        throw std::invalid_argument(
            "asymmetric model: needs kappa1 > 0, kappa2 >= 0, t >= 0, all finite");
    if (p.kappa2 >= p.kappa1)
        throw UnsupportedRegimeError(
            "asymmetric model: unsupported regime kappa2 >= kappa1 (the hyperbolic solutions "
            "require kappa1 > kappa2; the oscillatory case is out of scope)");
    const double zeta = std::sqrt((p.kappa1 - p.kappa2) * (p.kappa1 + p.kappa2));
    const double zt = zeta * p.t;
    const double k1t = p.kappa1 * p.t, k2t = p.kappa2 * p.t;
    const double cm = coshm1_over_x2(zt);
    const double sc = sinhc(zt);
    return {1.0 + k1t * k1t * cm, k1t * k2t * cm,       k1t * sc,
            1.0 - k2t * k2t * cm, k2t * sc,             std::cosh(zt)};
}

inline CovarianceMatrix asymmetric_covariance(const AsymmetricParams& p) {
    const auto c = asymmetric_coefficients(p);
    // Second moments over vacuum inputs.
    const double x1 = c.alpha * c.alpha + c.beta * c.beta + c.gamma * c.gamma;
    const double x2 = c.beta * c.beta + c.delta * c.delta + c.epsilon * c.epsilon;
    const double x3 = c.gamma * c.gamma + c.epsilon * c.epsilon + c.eta * c.eta;
    const double x12 = c.alpha * c.beta - c.beta * c.delta + c.gamma * c.epsilon;
    const double x13 = c.alpha * c.gamma + c.beta * c.epsilon + c.gamma * c.eta;
    const double x23 = c.beta * c.gamma - c.delta * c.epsilon + c.epsilon * c.eta;
    // Y variances match the X variances; cross moments flip sign when the two
    // modes are linked through pair creation (1-3 directly, 1-2 through the
    // induced coupling) and keep it for the exchange-coupled pair (2-3).
    Mat6 v = Mat6::Zero();
    v(0, 0) = v(1, 1) = x1;
    v(2, 2) = v(3, 3) = x2;
    v(4, 4) = v(5, 5) = x3;
    v(0, 2) = v(2, 0) = x12;
    v(0, 4) = v(4, 0) = x13;
    v(2, 4) = v(4, 2) = x23;
    v(1, 3) = v(3, 1) = -x12;
    v(1, 5) = v(5, 1) = -x13;
    v(3, 5) = v(5, 3) = x23;
    return CovarianceMatrix(v);
}

// ------------------------------------------------------------------ common

using ModelParams = std::variant<OpaParams, AokiParams, AsymmetricParams>;

inline CovarianceMatrix model_covariance(const ModelParams& m) {
    return std::visit(
        [](const auto& p) -> CovarianceMatrix {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, OpaParams>) return opa_covariance(p);
            else if constexpr (std::is_same_v<T, AokiParams>) return aoki_covariance(p);
            else return asymmetric_covariance(p);
        },
        m);
}

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
};

// Default sweep grids. They bracket every feature of interest: the opa and
// aoki windows close well inside, and the asymmetric grid covers zeta*t in
// [0,2] at the reference rates kappa1 = 1, kappa2 = 0.6 (zeta = 0.8).
inline GridSpec default_opa_grid() { return {0.0, 2.0, 0.01}; }          // swept field: kt
inline GridSpec default_aoki_grid() { return {0.0, 3.0, 0.01}; }         // swept field: r
inline GridSpec default_asymmetric_grid() { return {0.0, 2.5, 0.0125}; } // swept field: t

}  // namespace trigauss
