#pragma once

// Reference computations that share no code with the library: Eigen for
// dense linear algebra, Boost quadrature for integrals over gamma densities,
// and literal transcriptions of the textbook formulas.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "polsar/linalg.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;

inline Mat to_eigen(const polsar::HermitianMatrix& a) {
    Mat m(a.dim(), a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m(r, c) = a(r, c);
    return m;
}

inline Mat to_eigen(const polsar::SquareMatrix& a) {
    Mat m(a.dim(), a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m(r, c) = a(r, c);
    return m;
}

/// log|A| as the sum of log eigenvalues.
inline double log_det(const Mat& a) {
    Eigen::SelfAdjointEigenSolver<Mat> es(a);
    return es.eigenvalues().array().log().sum();
}

inline double log_det(const polsar::HermitianMatrix& a) { return log_det(to_eigen(a)); }

/// Random Hermitian positive definite matrix with eigenvalues in [lo, hi].
inline polsar::HermitianMatrix random_hpd(int m, std::mt19937_64& rng, double lo = 0.2, double hi = 5.0) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(lo, hi);
    Mat g(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) g(r, c) = {n(rng), n(rng)};
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Eigen::VectorXd d(m);
    for (int i = 0; i < m; ++i) d(i) = u(rng);
    Mat a = q * d.asDiagonal() * q.adjoint();
    polsar::HermitianMatrix h(m);
    for (int r = 0; r < m; ++r) {
        h.set(r, r, a(r, r).real());
        for (int c = r + 1; c < m; ++c) h.set(r, c, a(r, c));
    }
    return h;
}

/// Wishart log density written out with Eigen (inverse and determinant).
inline double wishart_log_density(const polsar::HermitianMatrix& z, const polsar::HermitianMatrix& sigma,
                                  double looks) {
    const int m = z.dim();
    const Mat zz = to_eigen(z);
    const Mat s = to_eigen(sigma);
    double lgm = m * (m - 1) / 2.0 * std::log(M_PI);
    for (int i = 0; i < m; ++i) lgm += std::lgamma(looks - i);
    const double tr = (s.inverse() * zz).trace().real();
    return m * looks * std::log(looks) + (looks - m) * log_det(zz) - looks * log_det(s) - lgm - looks * tr;
}

/// Gamma density of one intensity channel with mean s2 and shape L.
inline double gamma_log_pdf(double z, double s2, double looks) {
    return looks * std::log(looks / s2) + (looks - 1) * std::log(z) - looks * z / s2 - std::lgamma(looks);
}

template <class F>
double integrate_positive(F f) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(f, 1e-12);
}

/// Symmetrized KL, 1/2 int (f1 - f2) log(f1 / f2).
inline double kl_by_quadrature(double s1, double s2, double looks) {
    return 0.5 * integrate_positive([&](double z) {
        const double a = gamma_log_pdf(z, s1, looks);
        const double b = gamma_log_pdf(z, s2, looks);
        return (std::exp(a) - std::exp(b)) * (a - b);
    });
}

inline double bhattacharyya_by_quadrature(double s1, double s2, double looks) {
    return -std::log(integrate_positive([&](double z) {
        return std::exp(0.5 * (gamma_log_pdf(z, s1, looks) + gamma_log_pdf(z, s2, looks)));
    }));
}

inline double hellinger_by_quadrature(double s1, double s2, double looks) {
    return 1.0 - integrate_positive([&](double z) {
        return std::exp(0.5 * (gamma_log_pdf(z, s1, looks) + gamma_log_pdf(z, s2, looks)));
    });
}

/// Symmetrized Renyi distance, (beta - 1)^-1 log[(int f1^b f2^(1-b) + int f2^b f1^(1-b)) / 2].
inline double renyi_by_quadrature(double s1, double s2, double looks, double beta) {
    auto mixed = [&](double sa, double sb) {
        return integrate_positive([&](double z) {
            return std::exp(beta * gamma_log_pdf(z, sa, looks) + (1 - beta) * gamma_log_pdf(z, sb, looks));
        });
    };
    return std::log(0.5 * (mixed(s1, s2) + mixed(s2, s1))) / (beta - 1.0);
}

inline double shannon_entropy_by_quadrature(double s2, double looks) {
    return -integrate_positive([&](double z) {
        const double l = gamma_log_pdf(z, s2, looks);
        return std::exp(l) * l;
    });
}

inline double renyi_entropy_by_quadrature(double s2, double looks, double beta) {
    return std::log(integrate_positive([&](double z) { return std::exp(beta * gamma_log_pdf(z, s2, looks)); })) /
           (1.0 - beta);
}

/// vec(S^-1)* (S (x) S) vec(S^-1), with vec and kron built by hand.
inline double kron_quadratic(const polsar::HermitianMatrix& sigma) {
    const Mat s = to_eigen(sigma);
    const Mat si = s.inverse();
    const int m = sigma.dim();
    Mat k(m * m, m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d) k(a * m + c, b * m + d) = s(a, b) * s(c, d);
    Eigen::VectorXcd v(m * m);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < m; ++r) v(c * m + r) = si(r, c);
    return (v.adjoint() * k * v)(0, 0).real();
}

/// Bresenham by exact rounding of the ideal line, halves rounded toward p1.
inline std::vector<std::pair<int, int>> rounded_line(int r0, int c0, int r1, int c1) {
    std::vector<std::pair<int, int>> out;
    const int dr = r1 - r0;
    const int dc = c1 - c0;
    const bool col_major = std::abs(dc) >= std::abs(dr);
    const int major = col_major ? std::abs(dc) : std::abs(dr);
    const int minor = col_major ? std::abs(dr) : std::abs(dc);
    const int sr = dr > 0 ? 1 : (dr < 0 ? -1 : 0);
    const int sc = dc > 0 ? 1 : (dc < 0 ? -1 : 0);
    for (int i = 0; i <= major; ++i) {
        // offset = round(i * minor / major) with exact halves going up
        const int off = major == 0 ? 0 : static_cast<int>((2LL * i * minor + major) / (2LL * major));
        if (col_major) {
            out.emplace_back(r0 + sr * off, c0 + sc * i);
        } else {
            out.emplace_back(r0 + sr * i, c0 + sc * off);
        }
    }
    return out;
}

}  // namespace oracle
