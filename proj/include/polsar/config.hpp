#pragma once

// Plain-text inputs: key = value documents for campaigns and ray fans, and
// the small JSON strip format used for fixtures.
//
// Key-value syntax: one `key = value` per line, `#` starts a comment, blank
// lines are ignored, keys may repeat (e.g. `point`).

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polsar/detect.hpp"
#include "polsar/geometry.hpp"
#include "polsar/simulate.hpp"

namespace polsar {

class KeyValueDocument {
public:
    static KeyValueDocument parse(std::istream& in);
    static KeyValueDocument load(const std::filesystem::path& path);

    bool has(const std::string& key) const;
    /// Last value bound to `key`.
    std::optional<std::string> get(const std::string& key) const;
    std::vector<std::string> get_all(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

struct CampaignFile {
    std::string scenario = "baseline";
    CampaignConfig campaign;
    std::optional<std::string> out;
};

/// Keys:
///   scenario   baseline | case | span | cov | custom         (default baseline)
///   detectors  comma/space separated labels                  (default all seven)
///   beta       default order for RD / RE labels              (default 0.8)
///   reps, seed, levels, threads
///   case_k, case_v                                           (scenario = case)
///   delta                                                    (scenario = span | cov)
///   sigma_left, sigma_right   A | B | m*m packed reals       (custom; case/span/cov base = sigma_right, default B)
///   looks, looks_left, looks_right, n, edge                  (custom)
///   out        output directory
CampaignFile campaign_from_document(const KeyValueDocument& doc);

/// `A` (urban), `B` (forest), or m*m packed reals: m diagonal entries then the
/// (re, im) pairs of the strict upper triangle, row-major.
HermitianMatrix parse_covariance(const std::string& text);

std::vector<DetectorSpec> parse_detector_list(const std::string& text, double beta);

struct FanSpec {
    PointD centroid;
    std::vector<PixelCoord> control_points;
    std::optional<DetectorSpec> detector;
    int samples_per_span = 16;
};

/// Keys: `centroid = row col`, repeated `point = row col` in angular order,
/// or `circle = radius rays` around the centroid; optional `detector`,
/// `beta`, `samples_per_span`.
FanSpec fan_from_document(const KeyValueDocument& doc);

/// {"L": looks, "pixels": [[m*m packed reals], ...]} with the PSARC1 pixel packing.
Strip read_strip_json(std::istream& in);
void write_strip_json(std::ostream& out, const Strip& strip);

/// JSON strip, or a PSARC1 image with a single row or column.
Strip load_strip(const std::filesystem::path& path);

}  // namespace polsar
