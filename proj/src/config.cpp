#include "polsar/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "polsar/error.hpp"

namespace polsar {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ParseError(fmt::format("{}: '{}' is not a number", what, s));
    return v;
}

long long to_int(const std::string& s, const std::string& what) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(fmt::format("{}: '{}' is not an integer", what, s));
    }
    return v;
}

std::vector<double> numbers(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& t : split_tokens(text)) out.push_back(to_double(t, what));
    return out;
}

int int_in_range(long long v, long long lo, long long hi, const std::string& what) {
    if (v < lo || v > hi) throw DomainError(fmt::format("{} = {} outside [{}, {}]", what, v, lo, hi));
    return static_cast<int>(v);
}

HermitianMatrix unpack(std::span<const double> packed) {
    int m = 0;
    while ((m + 1) * (m + 1) <= static_cast<int>(packed.size())) ++m;
    if (m < 1 || m > kMaxDim || m * m != static_cast<int>(packed.size())) {
        throw WrongDim(fmt::format("{} packed values do not form an m x m covariance", packed.size()));
    }
    HermitianMatrix z(m);
    std::size_t p = 0;
    for (int i = 0; i < m; ++i) z.set(i, i, packed[p++]);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j, p += 2) z.set(i, j, Complex(packed[p], packed[p + 1]));
    return z;
}

std::vector<double> pack(const HermitianMatrix& z) {
    const int m = z.dim();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) out.push_back(z(i, i).real());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            out.push_back(z(i, j).real());
            out.push_back(z(i, j).imag());
        }
    return out;
}

}  // namespace

KeyValueDocument KeyValueDocument::parse(std::istream& in) {
    KeyValueDocument doc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError(fmt::format("line {}: expected key = value", lineno));
        std::string key = trim(std::string_view(t).substr(0, eq));
        if (key.empty()) throw ParseError(fmt::format("line {}: empty key", lineno));
        doc.entries_.emplace_back(std::move(key), trim(std::string_view(t).substr(eq + 1)));
    }
    return doc;
}

KeyValueDocument KeyValueDocument::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return parse(in);
}

bool KeyValueDocument::has(const std::string& key) const { return get(key).has_value(); }

std::optional<std::string> KeyValueDocument::get(const std::string& key) const {
    std::optional<std::string> v;
    for (const auto& [k, val] : entries_)
        if (k == key) v = val;
    return v;
}

std::vector<std::string> KeyValueDocument::get_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, val] : entries_)
        if (k == key) out.push_back(val);
    return out;
}

double KeyValueDocument::get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    return v ? to_double(*v, key) : fallback;
}

long long KeyValueDocument::get_int(const std::string& key, long long fallback) const {
    const auto v = get(key);
    return v ? to_int(*v, key) : fallback;
}

HermitianMatrix parse_covariance(const std::string& text) {
    const std::string t = trim(text);
    if (t == "A" || t == "a") return sigma_urban();
    if (t == "B" || t == "b") return sigma_forest();
    const auto v = numbers(t, "covariance");
    auto z = unpack(v);
    cholesky(z);
    return z;
}

std::vector<DetectorSpec> parse_detector_list(const std::string& text, double beta) {
    std::vector<DetectorSpec> out;
    for (const auto& t : split_tokens(text)) out.push_back(DetectorSpec::parse(t, beta));
    if (out.empty()) throw ParseError("empty detector list");
    return out;
}

CampaignFile campaign_from_document(const KeyValueDocument& doc) {
    static const std::vector<std::string> known = {
        "scenario", "detectors", "beta", "reps", "seed", "levels", "threads", "case_k", "case_v",
        "delta", "sigma_left", "sigma_right", "looks", "looks_left", "looks_right", "n", "edge", "out"};
    for (const auto& [k, v] : doc.entries()) {
        if (std::find(known.begin(), known.end(), k) == known.end()) {
            throw ParseError(fmt::format("unknown campaign key '{}'", k));
        }
    }

    CampaignFile f;
    f.scenario = doc.get("scenario").value_or("baseline");
    const double beta = doc.get_double("beta", kDefaultBeta);
    f.campaign.detectors = doc.has("detectors") ? parse_detector_list(*doc.get("detectors"), beta)
                                                : all_polarimetric_detectors(beta);
    f.campaign.reps = int_in_range(doc.get_int("reps", 200), 1, 100000000, "reps");
    const long long seed = doc.get_int("seed", 1);
    if (seed < 0) throw DomainError("seed must be non-negative");
    f.campaign.seed = static_cast<std::uint64_t>(seed);
    f.campaign.levels = int_in_range(doc.get_int("levels", 1), 1, 16, "levels");
    f.campaign.threads = int_in_range(doc.get_int("threads", 0), 0, 4096, "threads");
    f.out = doc.get("out");

    const HermitianMatrix base = parse_covariance(doc.get("sigma_right").value_or("B"));
    if (f.scenario == "baseline") {
        f.campaign.phantom = baseline_phantom();
    } else if (f.scenario == "case") {
        f.campaign.phantom = case_transform(base, doc.get_double("case_k", 0.0), doc.get_double("case_v", 0.0));
    } else if (f.scenario == "span") {
        f.campaign.phantom = span_case(base, doc.get_double("delta", 0.2));
    } else if (f.scenario == "cov") {
        f.campaign.phantom = cov_case(base, doc.get_double("delta", 0.2));
    } else if (f.scenario == "custom") {
        PhantomSpec p;
        p.sigma_left = parse_covariance(doc.get("sigma_left").value_or("A"));
        p.sigma_right = base;
        const double looks = doc.get_double("looks", 4.0);
        p.looks_left = doc.get_double("looks_left", looks);
        p.looks_right = doc.get_double("looks_right", looks);
        p.assumed_looks = looks;
        p.n = int_in_range(doc.get_int("n", 400), 2, 100000000, "n");
        p.true_edge = int_in_range(doc.get_int("edge", p.n / 2), 1, p.n - 1, "edge");
        f.campaign.phantom = p;
    } else {
        throw ParseError(fmt::format("unknown scenario '{}'", f.scenario));
    }
    validate(f.campaign.phantom);
    return f;
}

FanSpec fan_from_document(const KeyValueDocument& doc) {
    FanSpec fan;
    const auto c = doc.get("centroid");
    if (!c) throw ParseError("fan spec needs a centroid");
    const auto cv = numbers(*c, "centroid");
    if (cv.size() != 2) throw ParseError("centroid needs row and column");
    fan.centroid = {cv[0], cv[1]};

    for (const auto& p : doc.get_all("point")) {
        const auto v = numbers(p, "point");
        if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
            throw ParseError(fmt::format("point '{}' needs integer row and column", p));
        }
        fan.control_points.push_back({static_cast<int>(v[0]), static_cast<int>(v[1])});
    }
    if (const auto circle = doc.get("circle")) {
        const auto v = numbers(*circle, "circle");
        if (v.size() != 2 || !(v[0] > 0.0) || v[1] < 1 || v[1] != std::floor(v[1])) {
            throw ParseError("circle needs a positive radius and a ray count");
        }
        const auto pts = circular_fan(fan.centroid, v[0], static_cast<int>(v[1]));
        fan.control_points.insert(fan.control_points.end(), pts.begin(), pts.end());
    }
    if (const auto d = doc.get("detector")) {
        fan.detector = DetectorSpec::parse(*d, doc.get_double("beta", kDefaultBeta));
    }
    fan.samples_per_span = int_in_range(doc.get_int("samples_per_span", 16), 1, 100000, "samples_per_span");
    return fan;
}

Strip read_strip_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("strip JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("L") || !j.contains("pixels") || !j["L"].is_number() ||
        !j["pixels"].is_array()) {
        throw ParseError("strip JSON needs numeric \"L\" and array \"pixels\"");
    }
    Strip s;
    s.looks = j["L"].get<double>();
    for (const auto& px : j["pixels"]) {
        if (!px.is_array()) throw ParseError("each strip pixel must be an array of numbers");
        std::vector<double> v;
        for (const auto& x : px) {
            if (!x.is_number()) throw ParseError("each strip pixel must be an array of numbers");
            v.push_back(x.get<double>());
        }
        s.pixels.push_back(unpack(v));
        if (s.pixels.back().dim() != s.pixels.front().dim()) throw WrongDim("strip pixels differ in dimension");
    }
    if (s.pixels.empty()) throw EmptySample("strip JSON has no pixels");
    if (!(s.looks > s.dim() - 1) || !std::isfinite(s.looks)) {
        throw DomainError(fmt::format("strip looks {} must exceed m - 1", s.looks));
    }
    return s;
}

void write_strip_json(std::ostream& out, const Strip& strip) {
    nlohmann::json j;
    j["L"] = strip.looks;
    j["pixels"] = nlohmann::json::array();
    for (const auto& z : strip.pixels) j["pixels"].push_back(pack(z));
    out << j.dump() << '\n';
}

Strip load_strip(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    char head[6] = {};
    in.read(head, 6);
    in.clear();
    in.seekg(0);
    if (std::string_view(head, 6) == "PSARC1") {
        const auto img = read_image(in);
        if (img.width != 1 && img.height != 1) {
            throw WrongDim(fmt::format("a strip image must be 1 pixel wide, got {}x{}", img.width, img.height));
        }
        Strip s;
        s.looks = img.looks;
        s.pixels = img.pixels;
        return s;
    }
    return read_strip_json(in);
}

}  // namespace polsar
