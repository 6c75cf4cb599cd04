#include "polsar/simulate.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>

#include <fmt/format.h>
#include <omp.h>

#include "polsar/error.hpp"
#include "polsar/wishart.hpp"

namespace polsar {

HermitianMatrix sigma_urban() {
    return HermitianMatrix::from_rows({
        {962892.0, {19171.0, -3579.0}, {-154638.0, 191388.0}},
        {{19171.0, 3579.0}, 56707.0, {-5798.0, 16812.0}},
        {{-154638.0, -191388.0}, {-5798.0, -16812.0}, 472251.0},
    });
}

HermitianMatrix sigma_forest() {
    return HermitianMatrix::from_rows({
        {360932.0, {11050.0, 3759.0}, {63896.0, 1581.0}},
        {{11050.0, -3759.0}, 98960.0, {6593.0, 6868.0}},
        {{63896.0, -1581.0}, {6593.0, -6868.0}, 208843.0},
    });
}

void validate(const PhantomSpec& spec) {
    if (spec.sigma_left.dim() != spec.sigma_right.dim() || spec.sigma_left.dim() < 1) {
        throw DimensionMismatch("phantom halves differ in dimension");
    }
    if (spec.true_edge < 1 || spec.true_edge >= spec.n) {
        throw DomainError(fmt::format("true edge {} outside [1, {})", spec.true_edge, spec.n));
    }
    validate(WishartParams{spec.sigma_left, spec.looks_left});
    validate(WishartParams{spec.sigma_right, spec.looks_right});
    cholesky(spec.sigma_left);
    cholesky(spec.sigma_right);
}

Strip make_phantom(const PhantomSpec& spec, RandomSource& rng) {
    validate(spec);
    const WishartParams left{spec.sigma_left, spec.looks_left};
    const WishartParams right{spec.sigma_right, spec.looks_right};
    Strip s;
    s.looks = spec.detector_looks();
    s.pixels.reserve(spec.n);
    for (int k = 0; k < spec.n; ++k) s.pixels.push_back(sample(k < spec.true_edge ? left : right, rng));
    return s;
}

PhantomSpec baseline_phantom() {
    return PhantomSpec{sigma_urban(), sigma_forest(), 4.0, 4.0, 400, 200};
}

PhantomSpec case_transform(const HermitianMatrix& base, double k, double v) {
    if (!(k >= 0.0) || !(v >= 0.0)) throw DomainError("case (k, v) needs k, v >= 0");
    PhantomSpec p{base * (1.0 + k), base, 4.0, 4.0 * (1.0 + v), 100, 50};
    p.assumed_looks = 4.0;
    return p;
}

PhantomSpec span_case(const HermitianMatrix& base, double delta) {
    if (!(delta >= 0.0)) throw DomainError("SPAN case needs delta >= 0");
    HermitianMatrix right = base;
    for (int i = 0; i < base.dim(); ++i) right.set(i, i, base(i, i) * (1.0 + delta));
    cholesky(right);
    return PhantomSpec{base, right, 4.0, 4.0, 200, 100};
}

PhantomSpec cov_case(const HermitianMatrix& base, double delta) {
    if (!(delta >= -1.0)) throw DomainError("covariance case needs delta >= -1");
    HermitianMatrix right = base;
    for (int i = 0; i < base.dim(); ++i)
        for (int j = i + 1; j < base.dim(); ++j) {
            const Complex w = base(i, j);
            right.set(i, j, w + (1.0 + delta) * (w.real() + w.imag()));
        }
    cholesky(right);
    return PhantomSpec{base, right, 4.0, 4.0, 200, 100};
}

const std::vector<CaseLabel>& contrast_case_grid() {
    static const std::vector<CaseLabel> grid = {
        {1, 0.0, 3.0}, {2, 0.0, 7.0}, {3, 0.0, 1.0}, {4, 0.1, 1.0}, {5, 0.1, 0.0},
        {6, 1.0, 3.0}, {7, 2.0, 7.0}, {8, 1.0, 0.0}, {9, 2.0, 0.0},
    };
    return grid;
}

std::vector<Strip> downsample_pyramid(const Strip& strip, int levels) {
    if (levels < 1) throw BadLength("pyramid needs at least one level");
    const int n = strip.size();
    if (n % (1 << (levels - 1)) != 0) {
        throw BadLength(fmt::format("strip length {} not divisible by 2^{}", n, levels - 1));
    }
    std::vector<Strip> out{strip};
    for (int l = 1; l < levels; ++l) {
        const Strip& prev = out.back();
        Strip next;
        next.looks = prev.looks * 2.0;
        next.pixels.reserve(prev.size() / 2);
        for (int k = 0; k + 1 < prev.size(); k += 2) {
            next.pixels.push_back((prev.pixels[k] + prev.pixels[k + 1]) / 2.0);
        }
        out.push_back(std::move(next));
    }
    return out;
}

PolSarImage make_disk_image(int size, PointD center, double radius, const HermitianMatrix& inside,
                            const HermitianMatrix& outside, double looks, RandomSource& rng) {
    if (inside.dim() != outside.dim()) throw DimensionMismatch("disk phantom dimensions differ");
    PolSarImage img(size, size, inside.dim(), looks);
    const WishartParams in{inside, looks};
    const WishartParams out{outside, looks};
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
            const double dr = r - center.row;
            const double dc = c - center.col;
            img.at(r, c) = sample(dr * dr + dc * dc <= radius * radius ? in : out, rng);
        }
    return img;
}

std::vector<PixelCoord> circular_fan(PointD center, double radius, int rays) {
    std::vector<PixelCoord> pts;
    for (int i = 0; i < rays; ++i) {
        const double t = 2.0 * std::numbers::pi * i / rays;
        pts.push_back({static_cast<int>(std::lround(center.row - radius * std::sin(t))),
                       static_cast<int>(std::lround(center.col + radius * std::cos(t)))});
    }
    return pts;
}

const DetectorReport& ExperimentReport::find(const std::string& detector, int level) const {
    for (const auto& r : rows)
        if (r.detector == detector && r.level == level) return r;
    throw DomainError(fmt::format("no report row for detector {} at level {}", detector, level));
}

DetectorReport summarize(std::string detector, int level, int true_edge, std::vector<int> estimates,
                         const std::vector<double>& times) {
    DetectorReport d;
    d.detector = std::move(detector);
    d.level = level;
    d.true_edge = true_edge;
    const double r = static_cast<double>(estimates.size());
    if (estimates.empty()) throw EmptySample("no replications to summarize");

    double sum = 0.0;
    double sq_err = 0.0;
    std::array<int, kMaxErrorK> within{};
    int hits = 0;
    for (int e : estimates) {
        sum += e;
        const int err = std::abs(e - true_edge);
        sq_err += static_cast<double>(err) * err;
        if (err == 0) ++hits;
        for (int k = 1; k <= kMaxErrorK; ++k)
            if (err < k) ++within[k - 1];
    }
    d.mean = sum / r;
    d.bias = d.mean - true_edge;
    double ss = 0.0;
    for (int e : estimates) ss += (e - d.mean) * (e - d.mean);
    d.sd = estimates.size() > 1 ? std::sqrt(ss / (r - 1.0)) : 0.0;
    d.cv = d.sd / d.mean;
    d.mse = sq_err / r;
    d.hit_rate = hits / r;
    for (int k = 0; k < kMaxErrorK; ++k) d.f[k] = within[k] / r;

    if (times.empty()) {
        d.mean_time = std::numeric_limits<double>::quiet_NaN();
    } else {
        double t = 0.0;
        for (double x : times) t += x;
        d.mean_time = t / static_cast<double>(times.size());
    }
    d.estimates = std::move(estimates);
    return d;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("POLSAR_EDGE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
}

ExperimentReport run_campaign(const CampaignConfig& config, Execution execution) {
    validate(config.phantom);
    if (config.reps < 1) throw DomainError("campaign needs at least one replication");
    if (config.detectors.empty()) throw DomainError("campaign has no detectors");
    if (config.levels < 1) throw BadLength("pyramid needs at least one level");
    const int scale = 1 << (config.levels - 1);
    if (config.phantom.true_edge % scale != 0 || config.phantom.n % scale != 0) {
        throw BadLength("true edge and strip length must be divisible by 2^(levels - 1)");
    }

    const int reps = config.reps;
    const int dets = static_cast<int>(config.detectors.size());
    const int levels = config.levels;
    const auto slot = [&](int level, int det, int r) {
        return (static_cast<std::size_t>(level) * dets + det) * reps + r;
    };
    std::vector<int> estimates(static_cast<std::size_t>(levels) * dets * reps, 0);
    std::vector<double> times(estimates.size(), 0.0);
    std::vector<std::exception_ptr> failures(reps);

    auto replicate = [&](int r) {
        try {
            RandomSource rng(config.seed, static_cast<std::uint64_t>(r));
            const auto pyramid = downsample_pyramid(make_phantom(config.phantom, rng), levels);
            for (int l = 0; l < levels; ++l)
                for (int d = 0; d < dets; ++d) {
                    const auto res = detect(pyramid[l], config.detectors[d], Execution::Serial);
                    estimates[slot(l, d, r)] = res.j_hat;
                    times[slot(l, d, r)] = res.wall_time;
                }
        } catch (...) {
            failures[r] = std::current_exception();
        }
    };

    if (execution == Execution::Parallel) {
        const int threads = resolve_threads(config.threads);
#pragma omp parallel for num_threads(threads) schedule(dynamic)
        for (int r = 0; r < reps; ++r) replicate(r);
    } else {
        for (int r = 0; r < reps; ++r) replicate(r);
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    ExperimentReport report;
    report.reps = reps;
    report.seed = config.seed;
    for (int l = 0; l < levels; ++l)
        for (int d = 0; d < dets; ++d) {
            const auto begin = estimates.begin() + static_cast<std::ptrdiff_t>(slot(l, d, 0));
            std::vector<double> t;
            if (config.record_timing) {
                const auto tb = times.begin() + static_cast<std::ptrdiff_t>(slot(l, d, 0));
                t.assign(tb, tb + reps);
            }
            report.rows.push_back(summarize(config.detectors[d].name(), l,
                                            config.phantom.true_edge >> l,
                                            std::vector<int>(begin, begin + reps), t));
        }
    return report;
}

}  // namespace polsar
