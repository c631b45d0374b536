#pragma once

// Independent validator for the closed-form models. The drift matrices are
// written down directly from the Heisenberg equations of motion, exponentiated
// numerically, and applied to the input covariance; agreement with the
// analytic covariance is then a genuine two-route check, not a tautology.

#include "models.hpp"

namespace trigauss {

// dQ/dt = M Q for the interleaved quadrature vector. Quadratic Hamiltonians
// give M*Omega + Omega*M^T = 0, so exp(Mt) is symplectic.
struct DriftMatrix {
    Mat6 entries;
};

// Pair creation between every mode pair at equal rate: dXa/dt = rate*(Xb+Xc)
// and dYa/dt = -rate*(Yb+Yc). X and Y blocks decouple with opposite signs.
inline DriftMatrix opa_drift(double rate) {
    Mat6 m = Mat6::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a != b) {
                m(2 * a, 2 * b) = rate;
                m(2 * a + 1, 2 * b + 1) = -rate;
            }
    return {m};
}

// Pair creation on modes 1,3 (rate kappa1) plus exchange on modes 2,3 (rate
// kappa2). Note the sign asymmetry: pair creation couples X to X and Y to -Y,
// exchange rotates within each quadrature.
inline DriftMatrix asymmetric_drift(double kappa1, double kappa2) {
    Mat6 m = Mat6::Zero();
    m(0, 4) = kappa1;   // dX1/dt =  kappa1 X3
    m(4, 0) = kappa1;   // dX3/dt =  kappa1 X1 - kappa2 X2
    m(4, 2) = -kappa2;
    m(2, 4) = kappa2;   // dX2/dt =  kappa2 X3
    m(1, 5) = -kappa1;  // dY1/dt = -kappa1 Y3
    m(5, 1) = -kappa1;  // dY3/dt = -kappa1 Y1 - kappa2 Y2
    m(5, 3) = -kappa2;
    m(3, 5) = kappa2;   // dY2/dt =  kappa2 Y3
    return {m};
}

// Matrix exponential by scaling-and-squaring with a Taylor core summed to
// convergence at full double precision. The generous term budget and the
// small scaling threshold keep the result accurate to ~1e-13 relative even
// for the largest arguments on the default grids, comfortably below the
// 1e-10 equivalence gate used by verify_model.
inline Mat6 expm(const Mat6& m) {
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    if (norm > 0.25) s = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    const Mat6 t = m / std::exp2(s);  // exact: division by a power of two
    Mat6 sum = Mat6::Identity();
    Mat6 term = Mat6::Identity();
    for (int k = 1; k <= 60; ++k) {
        term = (term * t) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() <= 1e-18 * sum.cwiseAbs().maxCoeff()) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

struct SymplecticPropagator {
    Mat6 entries;
};

inline SymplecticPropagator build_propagator(const OpaParams& p) {
    if (!(p.kt >= 0.0) || !std::isfinite(p.kt))
        throw std::invalid_argument("opa propagator: kt must be finite and >= 0");
    return {expm(opa_drift(1.0).entries * p.kt)};
}

inline SymplecticPropagator build_propagator(const AsymmetricParams& p) {
    if (!(p.t >= 0.0) || !std::isfinite(p.kappa1 + p.kappa2 + p.t))
        throw std::invalid_argument("asymmetric propagator: parameters must be finite, t >= 0");
    return {expm(asymmetric_drift(p.kappa1, p.kappa2).entries * p.t)};
}

// Passive 6x6 embedding of the beamsplitter network: the same orthogonal
// mixing applied to the X and the Y block. Orthogonal and symplectic.
inline SymplecticPropagator aoki_passive_propagator(double mu, double nu) {
    const Eigen::Matrix3d o = beamsplitter_network(mu, nu);
    Mat6 s = Mat6::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            s(2 * a, 2 * b) = o(a, b);
            s(2 * a + 1, 2 * b + 1) = o(a, b);
        }
    return {s};
}

// Squeezers first (X1 and Y2, Y3 stretched by e^{r/2}, partners shrunk), then
// the passive network. Acting on vacuum this reproduces the squeezed-input
// covariance pushed through the beamsplitters.
inline SymplecticPropagator build_propagator(const AokiParams& p) {
    if (!(p.r >= 0.0) || !std::isfinite(p.r))
        throw std::invalid_argument("aoki propagator: r must be finite and >= 0");
    Mat6 z = Mat6::Zero();
    const double up = std::exp(0.5 * p.r), dn = std::exp(-0.5 * p.r);
    z(0, 0) = up; z(1, 1) = dn;  // mode 1 squeezed in Y
    z(2, 2) = dn; z(3, 3) = up;  // modes 2, 3 squeezed in X
    z(4, 4) = dn; z(5, 5) = up;
    return {aoki_passive_propagator(p.mu, p.nu).entries * z};
}

inline SymplecticPropagator build_propagator(const ModelParams& m) {
    return std::visit([](const auto& p) { return build_propagator(p); }, m);
}

// S * cov0 * S^T, symmetrized. Any asymmetry beyond roundoff means S or cov0
// was broken, so it is treated as an internal error rather than smoothed over.
inline CovarianceMatrix propagate(const SymplecticPropagator& s, const CovarianceMatrix& cov0) {
    const Mat6 a = s.entries * cov0.entries() * s.entries.transpose();
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::logic_error("propagate: output lost symmetry beyond roundoff");
    return CovarianceMatrix((a + a.transpose()) / 2.0);
}

inline CovarianceMatrix oracle_covariance(const ModelParams& m) {
    return propagate(build_propagator(m), CovarianceMatrix(Mat6::Identity()));
}

struct VerifyReport {
    double max_abs_diff = 0.0;  // entrywise max |analytic - oracle|
    bool pure = false;          // both routes: symplectic eigenvalues 1 within 1e-9
    bool physical = false;      // both routes: V + i*Omega >= 0 within tolerance
};

inline VerifyReport verify_model(const ModelParams& m) {
    const CovarianceMatrix analytic = model_covariance(m);
    const CovarianceMatrix oracle = oracle_covariance(m);
    VerifyReport r;
    r.max_abs_diff = (analytic.entries() - oracle.entries()).cwiseAbs().maxCoeff();
    r.pure = is_pure(analytic) && is_pure(oracle);
    r.physical = physicality_margin(analytic.entries()) >= -kPhysicalityTol &&
                 physicality_margin(oracle.entries()) >= -kPhysicalityTol;
    return r;
}

}  // namespace trigauss
