#pragma once

// Closed-form stochastic distances and entropies between scaled complex
// Wishart laws sharing the number of looks, and the two-sample test
// statistics built on them.

#include <string>

#include "polsar/wishart.hpp"

namespace polsar {

inline constexpr double kDefaultBeta = 0.8;

enum class DistanceTag { KullbackLeibler, Renyi, Bhattacharyya, Hellinger };

struct DistanceKind {
    DistanceTag tag = DistanceTag::KullbackLeibler;
    double beta = kDefaultBeta;  // only read for Renyi

    static DistanceKind kullback_leibler() { return {DistanceTag::KullbackLeibler}; }
    static DistanceKind renyi(double beta = kDefaultBeta) { return {DistanceTag::Renyi, beta}; }
    static DistanceKind bhattacharyya() { return {DistanceTag::Bhattacharyya}; }
    static DistanceKind hellinger() { return {DistanceTag::Hellinger}; }

    /// Scale v_D of the test statistic: 1, 1/beta, 4, 4.
    double statistic_scale() const;
    std::string name() const;
};

enum class EntropyTag { Shannon, Renyi };

struct EntropyKind {
    EntropyTag tag = EntropyTag::Shannon;
    double beta = kDefaultBeta;

    static EntropyKind shannon() { return {EntropyTag::Shannon}; }
    static EntropyKind renyi(double beta = kDefaultBeta) { return {EntropyTag::Renyi, beta}; }

    std::string name() const;
};

/// Degrees of freedom of the asymptotic chi-square law of the distance
/// statistics: the number of real parameters of an m x m Hermitian matrix.
inline int degrees_of_freedom(int m) { return m * m; }

/// Stochastic distance between W(Sigma1, L) and W(Sigma2, L).
/// Throws LooksMismatch, DimensionMismatch, DomainError (beta outside (0, 1)),
/// NotPositiveDefinite.
///
/// Hellinger is evaluated as 1 - exp(-d_BA). That is the exact relation
/// between the integral definitions of the two distances; the commonly
/// printed determinant form of d_H does not vanish at Sigma1 = Sigma2.
double distance(const DistanceKind& kind, const WishartParams& p1, const WishartParams& p2);

/// 2 n1 n2 v_D / (n1 + n2) * d_D for ML estimates from samples of sizes n1, n2.
double distance_statistic(const DistanceKind& kind, const WishartParams& est1, int n1,
                          const WishartParams& est2, int n2);

/// Entropy, entropy variance and the two-sample entropy statistic for a fixed
/// (kind, m, L). The looks-dependent constants are computed once, so each
/// evaluation costs one factorization per covariance.
class EntropyModel {
public:
    EntropyModel(const EntropyKind& kind, int m, double looks);

    double entropy(const HermitianMatrix& sigma) const;
    double variance(const HermitianMatrix& sigma) const;
    double statistic(const HermitianMatrix& est1, int n1, const HermitianMatrix& est2, int n2) const;

    const EntropyKind& kind() const { return kind_; }

private:
    struct Side {
        double entropy;
        double variance;
    };
    Side side(const HermitianMatrix& sigma) const;

    EntropyKind kind_;
    int m_;
    double looks_;
    double offset_ = 0.0;
    double variance_offset_ = 0.0;
};

double shannon_entropy(const WishartParams& p);

/// Requires q = L + (1 - beta)(m - L) > m - 1.
double renyi_entropy(const WishartParams& p, double beta);

double entropy(const EntropyKind& kind, const WishartParams& p);

/// Asymptotic variance of the entropy estimator (per observation).
double entropy_variance(const EntropyKind& kind, const WishartParams& p);

/// Variance-weighted two-sample entropy statistic, asymptotically chi-square
/// with one degree of freedom under equal entropies:
///   n1 (H1 - v)^2 / s1 + n2 (H2 - v)^2 / s2,  v = (n1 H1/s1 + n2 H2/s2) / (n1/s1 + n2/s2)
/// Each variance is evaluated at its own sample's estimate.
double entropy_statistic(const EntropyKind& kind, const WishartParams& est1, int n1,
                         const WishartParams& est2, int n2);

}  // namespace polsar
