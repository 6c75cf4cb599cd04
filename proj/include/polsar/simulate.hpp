#pragma once

// Phantom generation and Monte Carlo campaigns measuring detector precision
// (f(k), bias, sd, CV, MSE) and per-call detection time.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polsar/detect.hpp"
#include "polsar/geometry.hpp"
#include "polsar/image.hpp"
#include "polsar/random.hpp"

namespace polsar {

/// Covariance observed over urban imagery (HH, HV, VV).
HermitianMatrix sigma_urban();
/// Covariance observed over forest imagery (HH, HV, VV).
HermitianMatrix sigma_forest();

struct PhantomSpec {
    HermitianMatrix sigma_left;
    HermitianMatrix sigma_right;
    double looks_left = 4.0;
    double looks_right = 4.0;
    int n = 400;
    int true_edge = 200;  // pixels 1..true_edge follow the left law
    /// Number of looks the detectors assume; 0 means looks_left.
    double assumed_looks = 0.0;

    double detector_looks() const { return assumed_looks > 0.0 ? assumed_looks : looks_left; }
};

void validate(const PhantomSpec& spec);

Strip make_phantom(const PhantomSpec& spec, RandomSource& rng);

/// Urban | forest halves, L = 4, N = 400, edge at 200.
PhantomSpec baseline_phantom();

/// Halves W((1 + k) base, 4) | W(base, (1 + v) 4); N = 100, edge at 50.
/// Detectors assume L = 4.
PhantomSpec case_transform(const HermitianMatrix& base, double k, double v);

/// Case A (SPAN): right covariance has its diagonal scaled by 1 + delta.
/// N = 200, edge at 100, L = 4. Throws NotPositiveDefinite.
PhantomSpec span_case(const HermitianMatrix& base, double delta);

/// Case B (channel covariance): each off-diagonal entry w becomes
/// w + (1 + delta)(Re w + Im w). N = 200, edge at 100, L = 4.
/// Throws NotPositiveDefinite when the shift destroys definiteness.
PhantomSpec cov_case(const HermitianMatrix& base, double delta);

struct CaseLabel {
    int label;
    double k;
    double v;
};

/// The nine contrast cases, easiest last.
const std::vector<CaseLabel>& contrast_case_grid();

/// Level 0 is the input; each further level averages contiguous pixel pairs
/// and doubles the looks. Throws BadLength unless N is divisible by
/// 2^(levels - 1).
std::vector<Strip> downsample_pyramid(const Strip& strip, int levels);

/// Square image with a disk of `inside` covariance on an `outside` background.
PolSarImage make_disk_image(int size, PointD center, double radius, const HermitianMatrix& inside,
                            const HermitianMatrix& outside, double looks, RandomSource& rng);

/// Control points evenly spaced on a circle, counter-clockwise on screen.
std::vector<PixelCoord> circular_fan(PointD center, double radius, int rays);

inline constexpr int kMaxErrorK = 10;

struct CampaignConfig {
    std::vector<DetectorSpec> detectors;
    PhantomSpec phantom;
    int reps = 200;
    std::uint64_t seed = 1;
    int levels = 1;        // resolution pyramid depth
    int threads = 0;       // 0: POLSAR_EDGE_THREADS, then the OpenMP default
    bool record_timing = true;
};

struct DetectorReport {
    std::string detector;
    int level = 0;
    int true_edge = 0;
    std::array<double, kMaxErrorK> f{};  // f[k - 1] = fraction with |j_hat - j*| < k
    double hit_rate = 0.0;
    double mean = 0.0;
    double bias = 0.0;
    double sd = 0.0;
    double cv = 0.0;
    double mse = 0.0;
    double mean_time = 0.0;  // seconds per detect() call; NaN when not recorded
    std::vector<int> estimates;

    double f_at(int k) const { return f[k - 1]; }
};

struct ExperimentReport {
    std::vector<DetectorReport> rows;  // detector-major within each level
    int reps = 0;
    std::uint64_t seed = 0;

    const DetectorReport& find(const std::string& detector, int level = 0) const;
};

/// Summary statistics of one detector's estimates against the true edge.
DetectorReport summarize(std::string detector, int level, int true_edge, std::vector<int> estimates,
                         const std::vector<double>& times);

/// Replication r draws its phantom from RandomSource(seed, r) and runs every
/// detector on it. Parallel execution spreads replications over OpenMP
/// threads; the report is identical to the serial one except wall times.
ExperimentReport run_campaign(const CampaignConfig& config, Execution execution = Execution::Parallel);

/// Thread count: `requested` if positive, else POLSAR_EDGE_THREADS if set and
/// positive, else the OpenMP default.
int resolve_threads(int requested);

}  // namespace polsar
