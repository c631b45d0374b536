#pragma once

// Quadrature algebra for three-mode Gaussian states.
//
// Conventions, fixed across the whole library:
//   X = a + a^dag, Y = -i(a - a^dag), so [X, Y] = 2i and the vacuum
//   covariance is the identity. The six quadratures are interleaved as
//   (X1, Y1, X2, Y2, X3, Y3); every matrix and serialized row uses this
//   ordering. States are zero-mean, so the covariance matrix is the whole
//   description.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace trigauss {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

enum class Quad { X, Y };

struct QuadIndex {
    int mode;  // 1..3
    Quad quadrature;
};

inline int flat_index(const QuadIndex& q) {
    if (q.mode < 1 || q.mode > 3) throw std::invalid_argument("mode must be 1, 2 or 3");
    return 2 * (q.mode - 1) + (q.quadrature == Quad::Y ? 1 : 0);
}

// Symplectic form: blkdiag of [[0,1],[-1,0]] per mode. Omega^2 = -I, and the
// normalization above makes V + i*Omega >= 0 the physicality condition with
// the vacuum exactly on the boundary.
inline const Mat6& symplectic_form() {
    static const Mat6 omega = [] {
        Mat6 w = Mat6::Zero();
        for (int m = 0; m < 3; ++m) {
            w(2 * m, 2 * m + 1) = 1.0;
            w(2 * m + 1, 2 * m) = -1.0;
        }
        return w;
    }();
    return omega;
}

inline constexpr double kPhysicalityTol = 1e-9;

// Smallest eigenvalue of the Hermitian matrix V + i*Omega. Non-negative (within
// tolerance) exactly when V is a valid quantum covariance matrix.
inline double physicality_margin(const Mat6& v) {
    using CMat6 = Eigen::Matrix<std::complex<double>, 6, 6>;
    CMat6 h = v.cast<std::complex<double>>() +
              std::complex<double>(0.0, 1.0) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<CMat6> es(h);
    return es.eigenvalues().minCoeff();
}

class CovarianceMatrix {
  public:
    static constexpr double kSymmetryTol = 1e-12;

    // Accepts a matrix symmetric to within roundoff and stores the exactly
    // symmetrized version. Rejects non-positive diagonals and matrices that
    // violate the uncertainty principle.
    explicit CovarianceMatrix(const Mat6& entries)
        : m_((entries + entries.transpose()) / 2.0) {
        if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol)
            throw std::invalid_argument("covariance matrix must be symmetric");
        for (int i = 0; i < 6; ++i)
            if (!(m_(i, i) > 0.0))
                throw std::invalid_argument("covariance diagonal entries must be positive");
        if (physicality_margin(m_) < -kPhysicalityTol)
            throw std::invalid_argument("matrix is not a physical covariance: V + i*Omega has a negative eigenvalue");
    }

    const Mat6& entries() const { return m_; }
    double operator()(int row, int col) const { return m_(row, col); }
    double operator()(const QuadIndex& a, const QuadIndex& b) const {
        return m_(flat_index(a), flat_index(b));
    }

  private:
    Mat6 m_;
};

// One linear form over the six quadratures, e.g. X1 - X2 or Y1 + Y2 + g*Y3.
struct LinearCombination {
    Vec6 coefficients = Vec6::Zero();
};

inline LinearCombination quad(int mode, Quad q, double coeff = 1.0) {
    LinearCombination c;
    c.coefficients[flat_index({mode, q})] = coeff;
    return c;
}

inline LinearCombination qx(int mode, double coeff = 1.0) { return quad(mode, Quad::X, coeff); }
inline LinearCombination qy(int mode, double coeff = 1.0) { return quad(mode, Quad::Y, coeff); }

inline LinearCombination operator+(LinearCombination a, const LinearCombination& b) {
    a.coefficients += b.coefficients;
    return a;
}

inline LinearCombination operator-(LinearCombination a, const LinearCombination& b) {
    a.coefficients -= b.coefficients;
    return a;
}

inline LinearCombination operator*(double s, LinearCombination c) {
    c.coefficients *= s;
    return c;
}

inline double variance_of(const CovarianceMatrix& cov, const LinearCombination& c) {
    if (c.coefficients.isZero(0.0))
        throw std::invalid_argument("variance of the all-zero combination is undefined");
    return c.coefficients.dot(cov.entries() * c.coefficients);
}

inline double covariance_of(const CovarianceMatrix& cov, const LinearCombination& a,
                            const LinearCombination& b) {
    return a.coefficients.dot(cov.entries() * b.coefficients);
}

// Moduli of the eigenvalues of i*Omega*V, one per mode, sorted descending.
// Physical covariances have all three >= 1; all equal to 1 iff the state is
// pure. Eigenvalues of the real matrix Omega*V come in +-(i nu) pairs, so the
// six moduli are averaged pairwise.
inline std::array<double, 3> symplectic_eigenvalues(const Mat6& v) {
    if ((v - v.transpose()).cwiseAbs().maxCoeff() > CovarianceMatrix::kSymmetryTol)
        throw std::invalid_argument("symplectic spectrum requires a symmetric matrix");
    Eigen::EigenSolver<Mat6> es(symplectic_form() * v);
    std::array<double, 6> mods;
    for (int i = 0; i < 6; ++i) mods[i] = std::abs(es.eigenvalues()[i]);
    std::sort(mods.begin(), mods.end(), std::greater<>());
    return {0.5 * (mods[0] + mods[1]), 0.5 * (mods[2] + mods[3]), 0.5 * (mods[4] + mods[5])};
}

inline std::array<double, 3> symplectic_eigenvalues(const CovarianceMatrix& cov) {
    return symplectic_eigenvalues(cov.entries());
}

inline bool is_pure(const CovarianceMatrix& cov, double tol = 1e-9) {
    for (double nu : symplectic_eigenvalues(cov))
        if (std::abs(nu - 1.0) > tol) return false;
    return true;
}

}  // namespace trigauss
