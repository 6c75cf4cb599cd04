#include "polsar/detect.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <chrono>
#include <cmath>
#include <exception>
#include <optional>

#include <fmt/format.h>

#include "polsar/error.hpp"
#include "polsar/wishart.hpp"

namespace polsar {

// ------------------------------------------------------------------- specs

DetectorSpec DetectorSpec::parse(std::string_view label, double default_beta) {
    std::string s(label);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });

    auto with_beta = [&](std::string_view prefix, Objective obj) -> std::optional<DetectorSpec> {
        if (s == prefix) return DetectorSpec{obj, default_beta};
        const std::string dashed = std::string(prefix) + "-";
        if (s.rfind(dashed, 0) != 0) return std::nullopt;
        const std::string_view num = std::string_view(s).substr(dashed.size());
        double beta = 0.0;
        const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), beta);
        if (ec != std::errc() || ptr != num.data() + num.size()) {
            throw ParseError(fmt::format("bad order in detector label '{}'", label));
        }
        if (!(beta > 0.0 && beta < 1.0)) {
            throw DomainError(fmt::format("detector '{}': beta outside (0, 1)", label));
        }
        return DetectorSpec{obj, beta};
    };

    if (s == "ML") return {Objective::MaximumLikelihood};
    if (s == "KL") return {Objective::KullbackLeibler};
    if (s == "BA") return {Objective::Bhattacharyya};
    if (s == "H") return {Objective::Hellinger};
    if (s == "S") return {Objective::ShannonEntropy};
    if (auto d = with_beta("RD", Objective::RenyiDistance)) return *d;
    if (auto d = with_beta("RE", Objective::RenyiEntropy)) return *d;
    for (auto [prefix, ch] : {std::pair{"HH", Channel::HH}, std::pair{"HV", Channel::HV},
                              std::pair{"VV", Channel::VV}}) {
        if (s == std::string(prefix) + "-ML") {
            DetectorSpec d{Objective::GammaLikelihood};
            d.channel = ch;
            return d;
        }
    }
    throw ParseError(fmt::format("unknown detector '{}'", label));
}

std::string DetectorSpec::name() const {
    switch (objective) {
        case Objective::MaximumLikelihood: return "ML";
        case Objective::KullbackLeibler: return "KL";
        case Objective::RenyiDistance: return fmt::format("RD-{}", beta);
        case Objective::Bhattacharyya: return "BA";
        case Objective::Hellinger: return "H";
        case Objective::ShannonEntropy: return "S";
        case Objective::RenyiEntropy: return fmt::format("RE-{}", beta);
        case Objective::GammaLikelihood: {
            static constexpr const char* names[] = {"HH-ML", "HV-ML", "VV-ML"};
            return channel ? names[static_cast<int>(*channel)] : "?-ML";
        }
    }
    return "?";
}

int DetectorSpec::resolved_min_side(int m) const {
    const int floor_side = is_gamma() ? 2 : m + 1;
    if (min_side == 0) return floor_side;
    if (min_side < floor_side) {
        throw DomainError(fmt::format("min_side {} below {} for detector {}", min_side,
                                      floor_side, name()));
    }
    return min_side;
}

std::vector<DetectorSpec> all_polarimetric_detectors(double beta) {
    return {
        {Objective::MaximumLikelihood},
        {Objective::KullbackLeibler},
        {Objective::Bhattacharyya},
        {Objective::Hellinger},
        {Objective::RenyiDistance, beta},
        {Objective::ShannonEntropy},
        {Objective::RenyiEntropy, beta},
    };
}

// ------------------------------------------------------------- split sums

namespace {

/// Prefix sums (pixels before j) and suffix sums (pixels from j on), so both
/// split means cost O(m^2) per candidate.
class SplitSums {
public:
    explicit SplitSums(const Strip& strip) : n_(strip.size()), looks_(strip.looks) {
        const int m = strip.dim();
        prefix_.assign(n_ + 1, HermitianMatrix(m));
        suffix_.assign(n_ + 1, HermitianMatrix(m));
        for (int k = 0; k < n_; ++k) prefix_[k + 1] = prefix_[k] + strip.pixels[k];
        for (int k = n_ - 1; k >= 0; --k) suffix_[k] = suffix_[k + 1] + strip.pixels[k];
    }

    int size() const { return n_; }
    double looks() const { return looks_; }
    const HermitianMatrix& sum_a(int j) const { return prefix_[j]; }
    const HermitianMatrix& sum_b(int j) const { return suffix_[j]; }
    HermitianMatrix mean_a(int j) const { return prefix_[j] / static_cast<double>(j); }
    HermitianMatrix mean_b(int j) const { return suffix_[j] / static_cast<double>(n_ - j); }

private:
    int n_;
    double looks_;
    std::vector<HermitianMatrix> prefix_;
    std::vector<HermitianMatrix> suffix_;
};

void validate_strip(const Strip& strip) {
    if (strip.pixels.empty()) throw StripTooShort("empty strip");
    const int m = strip.dim();
    for (const auto& z : strip.pixels) {
        if (z.dim() != m) throw DimensionMismatch("strip pixels differ in dimension");
    }
    if (!strip.coords.empty() && strip.coords.size() != strip.pixels.size()) {
        throw DimensionMismatch("strip coordinates do not match pixel count");
    }
    if (!(strip.looks > 0.0) || !std::isfinite(strip.looks)) {
        throw DomainError("strip looks must be positive");
    }
}

// Terms of l(j) that do not depend on the split: N (mL log L - log Gamma_m(L))
// + (L - m) sum_k log|Z_k|.
double wishart_data_term(const Strip& strip) {
    const int m = strip.dim();
    const double L = strip.looks;
    double s = 0.0;
    for (const auto& z : strip.pixels) s += log_det(z);
    return strip.size() * (m * L * std::log(L) - log_multivariate_gamma(m, L)) + (L - m) * s;
}

// -L [ n log|S/n| + tr((S/n)^{-1} S) ] for one side with sum S over n pixels.
double wishart_side_term(const HermitianMatrix& sum, int n, double L) {
    const HermitianMatrix mean = sum / static_cast<double>(n);
    const auto f = cholesky(mean);
    return -L * (n * log_det(f) + trace_product(inverse(f), sum));
}

class GammaSums {
public:
    GammaSums(const Strip& strip, Channel channel) : n_(strip.size()), looks_(strip.looks) {
        const int c = static_cast<int>(channel);
        if (c >= strip.dim()) throw WrongDim("channel not present in strip pixels");
        prefix_.assign(n_ + 1, 0.0);
        suffix_.assign(n_ + 1, 0.0);
        double log_sum = 0.0;
        for (int k = 0; k < n_; ++k) {
            const double x = strip.pixels[k](c, c).real();
            if (!(x > 0.0)) throw DomainError("non-positive channel intensity");
            prefix_[k + 1] = prefix_[k] + x;
            log_sum += std::log(x);
        }
        for (int k = n_ - 1; k >= 0; --k) {
            suffix_[k] = suffix_[k + 1] + strip.pixels[k](c, c).real();
        }
        const double L = looks_;
        constant_ = n_ * (L * std::log(L) - std::lgamma(L)) + (L - 1.0) * log_sum;
    }

    double loglik(int j) const {
        const double L = looks_;
        auto side = [L](double sum, int n) {
            const double mean = sum / n;
            return -L * (n * std::log(mean) + sum / mean);
        };
        return constant_ + side(prefix_[j], j) + side(suffix_[j], n_ - j);
    }

private:
    int n_;
    double looks_;
    double constant_ = 0.0;
    std::vector<double> prefix_;
    std::vector<double> suffix_;
};

struct Evaluator {
    const DetectorSpec& spec;
    const SplitSums* sums = nullptr;
    const GammaSums* gamma = nullptr;
    const EntropyModel* entropy = nullptr;
    double data_term = 0.0;

    double operator()(int j) const {
        if (gamma) return gamma->loglik(j);
        const int n = sums->size();
        const double L = sums->looks();
        switch (spec.objective) {
            case Objective::MaximumLikelihood:
                return data_term + wishart_side_term(sums->sum_a(j), j, L) +
                       wishart_side_term(sums->sum_b(j), n - j, L);
            case Objective::KullbackLeibler:
            case Objective::RenyiDistance:
            case Objective::Bhattacharyya:
            case Objective::Hellinger:
                return distance_statistic(distance_kind(), {sums->mean_a(j), L}, j,
                                          {sums->mean_b(j), L}, n - j);
            case Objective::ShannonEntropy:
            case Objective::RenyiEntropy:
                return entropy->statistic(sums->mean_a(j), j, sums->mean_b(j), n - j);
            case Objective::GammaLikelihood: break;
        }
        throw DomainError("gamma objective without channel data");
    }

    DistanceKind distance_kind() const {
        switch (spec.objective) {
            case Objective::RenyiDistance: return DistanceKind::renyi(spec.beta);
            case Objective::Bhattacharyya: return DistanceKind::bhattacharyya();
            case Objective::Hellinger: return DistanceKind::hellinger();
            default: return DistanceKind::kullback_leibler();
        }
    }

    EntropyKind entropy_kind() const {
        return spec.objective == Objective::RenyiEntropy ? EntropyKind::renyi(spec.beta)
                                                         : EntropyKind::shannon();
    }
};

DetectionResult run_search(const Strip& strip, const DetectorSpec& spec, Execution execution) {
    const auto start = std::chrono::steady_clock::now();
    validate_strip(strip);
    const int n = strip.size();
    const int min_side = spec.resolved_min_side(strip.dim());
    if (n < 2 * min_side) {
        throw StripTooShort(fmt::format("strip of {} pixels is shorter than 2 x {}", n, min_side));
    }

    std::optional<SplitSums> sums;
    std::optional<GammaSums> gamma;
    std::optional<EntropyModel> entropy;
    Evaluator eval{spec};
    if (spec.is_gamma()) {
        if (!spec.channel) throw DomainError("gamma detector needs a channel");
        gamma.emplace(strip, *spec.channel);
        eval.gamma = &*gamma;
    } else {
        sums.emplace(strip);
        eval.sums = &*sums;
        if (spec.objective == Objective::MaximumLikelihood) eval.data_term = wishart_data_term(strip);
        if (spec.is_entropy()) {
            entropy.emplace(eval.entropy_kind(), strip.dim(), strip.looks);
            eval.entropy = &*entropy;
        }
    }

    const int first = min_side;
    const int last = n - min_side;
    const int count = last - first + 1;
    std::vector<double> values(count, 0.0);
    std::vector<char> ok(count, 0);
    std::vector<std::exception_ptr> failures(count);

    auto evaluate = [&](int t) {
        try {
            values[t] = eval(first + t);
            ok[t] = std::isfinite(values[t]) ? 1 : 0;
        } catch (const NotPositiveDefinite&) {
            ok[t] = 0;
        } catch (...) {
            failures[t] = std::current_exception();
        }
    };

    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (int t = 0; t < count; ++t) evaluate(t);
    } else {
        for (int t = 0; t < count; ++t) evaluate(t);
    }

    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    DetectionResult r;
    r.first_candidate = first;
    r.last_candidate = last;
    r.objective_values.reserve(count);
    bool found = false;
    for (int t = 0; t < count; ++t) {
        if (!ok[t]) {
            r.skipped.push_back(first + t);
            continue;
        }
        r.objective_values.push_back({first + t, values[t]});
        if (!found || values[t] > r.peak_value) {
            r.peak_value = values[t];
            r.j_hat = first + t;
            found = true;
        }
    }
    if (!found) {
        throw AllCandidatesDegenerate(
            fmt::format("all {} candidate splits have singular means", count));
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

double loglik_split(const Strip& strip, int j) {
    validate_strip(strip);
    const int n = strip.size();
    if (j < 1 || j >= n) throw OutOfBounds(fmt::format("split index {} outside [1, {})", j, n));
    HermitianMatrix sum_a(strip.dim());
    HermitianMatrix sum_b(strip.dim());
    for (int k = 0; k < j; ++k) sum_a += strip.pixels[k];
    for (int k = n - 1; k >= j; --k) sum_b += strip.pixels[k];
    const double L = strip.looks;
    return wishart_data_term(strip) + wishart_side_term(sum_a, j, L) +
           wishart_side_term(sum_b, n - j, L);
}

double gamma_loglik_split(const Strip& strip, Channel channel, int j) {
    validate_strip(strip);
    if (j < 1 || j >= strip.size()) throw OutOfBounds("split index outside the strip");
    return GammaSums(strip, channel).loglik(j);
}

DetectionResult detect(const Strip& strip, const DetectorSpec& spec, Execution execution) {
    return run_search(strip, spec, execution);
}

DetectionResult detect_gamma(const Strip& strip, Channel channel, int min_side,
                             Execution execution) {
    DetectorSpec spec{Objective::GammaLikelihood};
    spec.channel = channel;
    spec.min_side = min_side;
    return run_search(strip, spec, execution);
}

}  // namespace polsar
