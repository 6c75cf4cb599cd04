#pragma once

#include <span>

#include "polsar/linalg.hpp"
#include "polsar/random.hpp"

namespace polsar {

/// Parameters of the scaled complex Wishart law W(Sigma, L), whose mean is Sigma.
struct WishartParams {
    HermitianMatrix sigma;
    double looks = 0.0;

    int dim() const { return sigma.dim(); }
};

/// Throws DomainError unless L > m - 1 (and finite).
void validate(const WishartParams& p);

/// Marginal law of one intensity channel: Gamma with mean `mean_power` and shape L.
struct GammaChannelParams {
    double mean_power = 0.0;
    double looks = 0.0;
};

/// log Gamma_m(L) = m(m-1)/2 log(pi) + sum_{i<m} log Gamma(L - i). Requires L > m - 1.
double log_multivariate_gamma(int m, double looks);

/// sum_{i<m} psi^(order)(x - i). Requires x - (m - 1) > 0.
double multivariate_polygamma(int order, int m, double x);

/// Log density of the scaled complex Wishart law at z:
///   mL log L + (L - m) log|z| - L log|Sigma| - log Gamma_m(L) - L tr(Sigma^{-1} z)
double log_density(const HermitianMatrix& z, const WishartParams& p);

/// One draw from W(Sigma, L) by the Bartlett construction. Non-integer L is
/// supported (gamma-distributed diagonal).
HermitianMatrix sample(const WishartParams& p, RandomSource& rng);

/// Arithmetic mean of the sample, the ML estimate of Sigma for known L.
HermitianMatrix mle_covariance(std::span<const HermitianMatrix> zs);

double gamma_log_density(double z, const GammaChannelParams& g);

}  // namespace polsar
