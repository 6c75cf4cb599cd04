#include "polsar/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "polsar/error.hpp"

namespace polsar {

namespace {

void check_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw DomainError(fmt::format("order beta = {} outside (0, 1)", beta));
    }
}

void check_pair(const WishartParams& p1, const WishartParams& p2) {
    if (p1.dim() != p2.dim()) throw DimensionMismatch("distance between different dimensions");
    if (p1.looks != p2.looks) {
        throw LooksMismatch(fmt::format("looks differ: {} vs {}", p1.looks, p2.looks));
    }
    if (!(p1.looks > 0.0) || !std::isfinite(p1.looks)) {
        throw DomainError("number of looks must be positive");
    }
}

void check_sizes(int n1, int n2) {
    if (n1 < 1 || n2 < 1) throw DomainError("sample sizes must be at least 1");
}

// Re sum_ij A_ij B_ij; equals vec(A)* (B (x) B) vec(A) when A = B^{-1}.
double hadamard_sum(const HermitianMatrix& a, const HermitianMatrix& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s += (a(i, j) * b(i, j)).real();
    return s;
}

double log_sum_exp(double a, double b) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log(1.0 + std::exp(lo - hi));
}

double bhattacharyya(double looks, double ld1, double ld2, const HermitianMatrix& inv1,
                     const HermitianMatrix& inv2) {
    return looks * (0.5 * (ld1 + ld2) + log_det((inv1 + inv2) * 0.5));
}

}  // namespace

double DistanceKind::statistic_scale() const {
    switch (tag) {
        case DistanceTag::KullbackLeibler: return 1.0;
        case DistanceTag::Renyi: return 1.0 / beta;
        case DistanceTag::Bhattacharyya:
        case DistanceTag::Hellinger: return 4.0;
    }
    return 1.0;
}

std::string DistanceKind::name() const {
    switch (tag) {
        case DistanceTag::KullbackLeibler: return "KL";
        case DistanceTag::Renyi: return fmt::format("RD-{}", beta);
        case DistanceTag::Bhattacharyya: return "BA";
        case DistanceTag::Hellinger: return "H";
    }
    return "?";
}

std::string EntropyKind::name() const {
    return tag == EntropyTag::Shannon ? std::string("S") : fmt::format("RE-{}", beta);
}

double distance(const DistanceKind& kind, const WishartParams& p1, const WishartParams& p2) {
    check_pair(p1, p2);
    const double L = p1.looks;
    const int m = p1.dim();

    const auto f1 = cholesky(p1.sigma);
    const auto f2 = cholesky(p2.sigma);
    const HermitianMatrix inv1 = inverse(f1);
    const HermitianMatrix inv2 = inverse(f2);

    switch (kind.tag) {
        case DistanceTag::KullbackLeibler: {
            const double t = trace_product(inv1, p2.sigma) + trace_product(inv2, p1.sigma);
            return L * (0.5 * t - m);
        }
        case DistanceTag::Bhattacharyya:
            return bhattacharyya(L, log_det(f1), log_det(f2), inv1, inv2);
        case DistanceTag::Hellinger:
            return -std::expm1(-bhattacharyya(L, log_det(f1), log_det(f2), inv1, inv2));
        case DistanceTag::Renyi: {
            const double b = kind.beta;
            check_beta(b);
            const double ld1 = log_det(f1);
            const double ld2 = log_det(f2);
            // Log of each bracketed determinant ratio raised to L.
            const double a12 = -L * (log_det(inv1 * b + inv2 * (1.0 - b)) +
                                     (b * ld1 + (1.0 - b) * ld2));
            const double a21 = -L * (log_det(inv2 * b + inv1 * (1.0 - b)) +
                                     (b * ld2 + (1.0 - b) * ld1));
            return (std::log(2.0) - log_sum_exp(a12, a21)) / (1.0 - b);
        }
    }
    return 0.0;
}

double distance_statistic(const DistanceKind& kind, const WishartParams& est1, int n1,
                          const WishartParams& est2, int n2) {
    check_sizes(n1, n2);
    const double n = static_cast<double>(n1) + n2;
    return 2.0 * n1 * static_cast<double>(n2) * kind.statistic_scale() / n *
           distance(kind, est1, est2);
}

EntropyModel::EntropyModel(const EntropyKind& kind, int m, double looks)
    : kind_(kind), m_(m), looks_(looks) {
    validate(WishartParams{HermitianMatrix(m), looks});
    const double L = looks;
    offset_ = 0.5 * m * (m - 1) * std::log(std::numbers::pi) - m * m * std::log(L);
    const double trigamma = multivariate_polygamma(1, m, L);
    const double info = trigamma - m / L;
    if (!(info > 0.0)) throw DomainError("degenerate looks information");

    double lead = 0.0;
    if (kind.tag == EntropyTag::Shannon) {
        offset_ += m * L + (m - L) * multivariate_polygamma(0, m, L);
        for (int k = 0; k < m; ++k) offset_ += std::lgamma(L - k);
        lead = (m - L) * trigamma + m - m * m / L;
    } else {
        const double b = kind.beta;
        check_beta(b);
        const double q = L + (1.0 - b) * (m - L);
        if (!(q > m - 1)) throw DomainError(fmt::format("Renyi entropy needs q = {} > m - 1", q));
        double g = 0.0;
        for (int i = 0; i < m; ++i) g += std::lgamma(q - i) - b * std::lgamma(L - i);
        offset_ += g / (1.0 - b) - m * q * std::log(b) / (1.0 - b);
        lead = b / (1.0 - b) *
                   (multivariate_polygamma(0, m, q) - multivariate_polygamma(0, m, L)) -
               m * b * std::log(b) / (1.0 - b) - m * m / L;
    }
    variance_offset_ = lead * lead / info;
}

EntropyModel::Side EntropyModel::side(const HermitianMatrix& sigma) const {
    if (sigma.dim() != m_) throw DimensionMismatch("entropy model dimension differs");
    const auto f = cholesky(sigma);
    const double quad = hadamard_sum(inverse(f), sigma);
    return {offset_ + m_ * log_det(f), variance_offset_ + m_ * m_ / looks_ * quad};
}

double EntropyModel::entropy(const HermitianMatrix& sigma) const { return side(sigma).entropy; }

double EntropyModel::variance(const HermitianMatrix& sigma) const { return side(sigma).variance; }

double EntropyModel::statistic(const HermitianMatrix& est1, int n1, const HermitianMatrix& est2,
                               int n2) const {
    check_sizes(n1, n2);
    const Side a = side(est1);
    const Side b = side(est2);
    // Closed form of the pooled-mean expression; exactly zero when the entropies agree.
    const double d = a.entropy - b.entropy;
    return d * d / (a.variance / n1 + b.variance / n2);
}

double shannon_entropy(const WishartParams& p) {
    return EntropyModel(EntropyKind::shannon(), p.dim(), p.looks).entropy(p.sigma);
}

double renyi_entropy(const WishartParams& p, double beta) {
    check_beta(beta);
    return EntropyModel(EntropyKind::renyi(beta), p.dim(), p.looks).entropy(p.sigma);
}

double entropy(const EntropyKind& kind, const WishartParams& p) {
    return EntropyModel(kind, p.dim(), p.looks).entropy(p.sigma);
}

double entropy_variance(const EntropyKind& kind, const WishartParams& p) {
    return EntropyModel(kind, p.dim(), p.looks).variance(p.sigma);
}

double entropy_statistic(const EntropyKind& kind, const WishartParams& est1, int n1,
                         const WishartParams& est2, int n2) {
    check_sizes(n1, n2);
    if (est1.dim() != est2.dim()) throw DimensionMismatch("entropy statistic dimensions differ");
    if (est1.looks != est2.looks) {
        throw LooksMismatch(fmt::format("looks differ: {} vs {}", est1.looks, est2.looks));
    }
    return EntropyModel(kind, est1.dim(), est1.looks).statistic(est1.sigma, n1, est2.sigma, n2);
}

}  // namespace polsar
