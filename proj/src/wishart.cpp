#include "polsar/wishart.hpp"

#include <boost/math/special_functions/polygamma.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "polsar/error.hpp"

namespace polsar {

void validate(const WishartParams& p) {
    const int m = p.dim();
    if (m < 1) throw DimensionMismatch("Wishart parameters without a covariance matrix");
    if (!std::isfinite(p.looks) || !(p.looks > m - 1)) {
        throw DomainError("number of looks " + std::to_string(p.looks) +
                          " must exceed m - 1 = " + std::to_string(m - 1));
    }
}

double log_multivariate_gamma(int m, double looks) {
    if (m < 1 || !(looks > m - 1)) {
        throw DomainError("log_multivariate_gamma needs L > m - 1");
    }
    double s = 0.5 * m * (m - 1) * std::log(std::numbers::pi);
    for (int i = 0; i < m; ++i) s += std::lgamma(looks - i);
    return s;
}

double multivariate_polygamma(int order, int m, double x) {
    if (order < 0 || m < 1 || !(x - (m - 1) > 0.0)) {
        throw DomainError("multivariate_polygamma needs x > m - 1 and order >= 0");
    }
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += boost::math::polygamma(order, x - i);
    return s;
}

double log_density(const HermitianMatrix& z, const WishartParams& p) {
    validate(p);
    const int m = p.dim();
    if (z.dim() != m) throw DimensionMismatch("observation and covariance dimensions differ");
    const double L = p.looks;
    const auto fs = cholesky(p.sigma);
    const double log_det_z = log_det(z);
    return m * L * std::log(L) + (L - m) * log_det_z - L * log_det(fs) -
           log_multivariate_gamma(m, L) - L * trace_product(inverse(fs), z);
}

HermitianMatrix sample(const WishartParams& p, RandomSource& rng) {
    validate(p);
    const int m = p.dim();
    const double L = p.looks;
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

    // Lower-triangular Bartlett factor for the unscaled complex Wishart with
    // identity covariance: |a_ii|^2 ~ Gamma(L - i, 1), a_ij ~ CN(0, 1).
    SquareMatrix a(m);
    for (int i = 0; i < m; ++i) {
        std::gamma_distribution<double> chi2(L - i, 1.0);
        a(i, i) = std::sqrt(chi2(rng));
        for (int j = 0; j < i; ++j) a(i, j) = Complex(normal(rng), normal(rng));
    }
    const auto c = cholesky(p.sigma);
    const SquareMatrix ca = c.matrix() * a;
    HermitianMatrix z = congruence(ca, HermitianMatrix::identity(m));
    z /= L;
    return z;
}

HermitianMatrix mle_covariance(std::span<const HermitianMatrix> zs) {
    if (zs.empty()) throw EmptySample("mean of an empty sample");
    HermitianMatrix s = zs.front();
    for (std::size_t k = 1; k < zs.size(); ++k) s += zs[k];
    s /= static_cast<double>(zs.size());
    return s;
}

double gamma_log_density(double z, const GammaChannelParams& g) {
    if (!(g.mean_power > 0.0) || !(g.looks > 0.0)) {
        throw DomainError("gamma channel parameters must be positive");
    }
    if (!(z > 0.0)) throw DomainError("gamma density evaluated at a non-positive intensity");
    const double L = g.looks;
    return L * std::log(L) + (L - 1.0) * std::log(z) - L * std::log(g.mean_power) -
           std::lgamma(L) - L * z / g.mean_power;
}

}  // namespace polsar
