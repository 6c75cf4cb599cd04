#pragma once

// Transition-point detectors over a one-pixel-wide strip.
//
// A strip Z_1..Z_N is split after index j: pixels 1..j form side A and
// j+1..N side B. Every detector evaluates an objective at each admissible j
// from the split means and returns the maximizing index.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polsar/linalg.hpp"
#include "polsar/measures.hpp"

namespace polsar {

struct PixelCoord {
    int row = 0;
    int col = 0;

    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

struct Strip {
    std::vector<HermitianMatrix> pixels;
    std::vector<PixelCoord> coords;  // empty, or one per pixel
    double looks = 0.0;

    int size() const { return static_cast<int>(pixels.size()); }
    int dim() const { return pixels.empty() ? 0 : pixels.front().dim(); }
};

enum class Objective {
    MaximumLikelihood,
    KullbackLeibler,
    RenyiDistance,
    Bhattacharyya,
    Hellinger,
    ShannonEntropy,
    RenyiEntropy,
    GammaLikelihood,  // single intensity channel
};

/// Intensity channel index into the (HH, HV, VV) diagonal.
enum class Channel { HH = 0, HV = 1, VV = 2 };

struct DetectorSpec {
    Objective objective = Objective::MaximumLikelihood;
    double beta = kDefaultBeta;
    /// Minimum number of pixels on each side; 0 selects the default
    /// (m + 1 for matrix objectives, 2 for the gamma objective).
    int min_side = 0;
    std::optional<Channel> channel;  // required for GammaLikelihood

    /// Labels: ML, KL, RD[-beta], BA, H, S, RE[-beta], HH-ML, HV-ML, VV-ML.
    static DetectorSpec parse(std::string_view label, double default_beta = kDefaultBeta);

    std::string name() const;
    bool is_gamma() const { return objective == Objective::GammaLikelihood; }
    bool is_entropy() const {
        return objective == Objective::ShannonEntropy || objective == Objective::RenyiEntropy;
    }
    int resolved_min_side(int m) const;
};

/// The seven full-polarimetric detectors with the given beta.
std::vector<DetectorSpec> all_polarimetric_detectors(double beta = kDefaultBeta);

struct CurvePoint {
    int j = 0;
    double value = 0.0;
};

struct DetectionResult {
    int j_hat = 0;
    double peak_value = 0.0;
    std::vector<CurvePoint> objective_values;  // admissible candidates in order
    std::vector<int> skipped;                  // candidates whose split means were singular
    int first_candidate = 0;
    int last_candidate = 0;
    double wall_time = 0.0;  // seconds spent in detect()
};

enum class Execution { Serial, Parallel };

/// Full split log-likelihood l(j) under the Wishart model with plug-in split
/// means; 1 <= j < N. Throws NotPositiveDefinite for a singular split mean.
double loglik_split(const Strip& strip, int j);

/// Gamma split log-likelihood on one intensity channel.
double gamma_loglik_split(const Strip& strip, Channel channel, int j);

/// Argmax of the chosen objective over j in [min_side, N - min_side]; ties
/// resolve to the smallest index. Parallel execution evaluates candidates
/// concurrently and returns a result identical to the serial one (apart from
/// wall_time). Throws StripTooShort, AllCandidatesDegenerate, DomainError.
DetectionResult detect(const Strip& strip, const DetectorSpec& spec,
                       Execution execution = Execution::Serial);

DetectionResult detect_gamma(const Strip& strip, Channel channel, int min_side = 0,
                             Execution execution = Execution::Serial);

}  // namespace polsar
