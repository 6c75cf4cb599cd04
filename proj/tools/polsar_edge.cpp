// polsar_edge: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical degeneracy.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "polsar/config.hpp"
#include "polsar/error.hpp"
#include "polsar/geometry.hpp"
#include "polsar/image.hpp"
#include "polsar/report.hpp"
#include "polsar/simulate.hpp"

namespace fs = std::filesystem;
using namespace polsar;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

struct CommonOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
    std::vector<std::string> detectors;
    std::optional<double> beta;
    std::string out;
    int threads = 0;
};

void add_campaign_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config, "Campaign key = value file");
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--reps", o.reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
    cmd->add_option("--detector", o.detectors, "Detector label (repeatable): ML KL RD-b BA H S RE-b HH-ML HV-ML VV-ML");
    cmd->add_option("--beta", o.beta, "Order for RD / RE labels without an explicit one");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--threads", o.threads, "Worker threads (0: POLSAR_EDGE_THREADS, then auto)")
        ->check(CLI::NonNegativeNumber);
}

CampaignFile load_campaign(const CommonOptions& o) {
    CampaignFile f = o.config.empty() ? campaign_from_document(KeyValueDocument{})
                                      : campaign_from_document(KeyValueDocument::load(o.config));
    const double beta = o.beta.value_or(kDefaultBeta);
    if (!o.detectors.empty()) {
        f.campaign.detectors.clear();
        for (const auto& d : o.detectors) {
            auto more = parse_detector_list(d, beta);
            f.campaign.detectors.insert(f.campaign.detectors.end(), more.begin(), more.end());
        }
    } else if (o.beta && !o.config.empty() && KeyValueDocument::load(o.config).has("detectors")) {
        f.campaign.detectors = parse_detector_list(*KeyValueDocument::load(o.config).get("detectors"), beta);
    } else if (o.beta) {
        f.campaign.detectors = all_polarimetric_detectors(beta);
    }
    if (o.seed) f.campaign.seed = *o.seed;
    if (o.reps) f.campaign.reps = *o.reps;
    if (o.threads > 0) f.campaign.threads = o.threads;
    if (!o.out.empty()) f.out = o.out;
    return f;
}

int run_simulate(const CommonOptions& o, bool timing) {
    CampaignFile f = load_campaign(o);
    f.campaign.record_timing = timing;
    const auto report = run_campaign(f.campaign);
    const fs::path dir = f.out.value_or(".");
    fs::create_directories(dir);
    auto fk = open_out(dir / "fk.csv");
    write_fk_csv(fk, report);
    auto summary = open_out(dir / "summary.csv");
    write_summary_csv(summary, report);
    fmt::print(std::cerr, "simulate: {} detectors x {} levels, R = {}, seed = {} -> {}\n",
               f.campaign.detectors.size(), f.campaign.levels, report.reps, report.seed, dir.string());
    return 0;
}

int run_bench(const CommonOptions& o) {
    CampaignFile f = load_campaign(o);
    f.campaign.record_timing = true;
    if (!o.reps && (o.config.empty() || !KeyValueDocument::load(o.config).has("reps"))) f.campaign.reps = 50;
    const HermitianMatrix base = sigma_forest();
    std::vector<TimingRow> rows;
    for (const auto& c : contrast_case_grid()) {
        CampaignConfig cfg = f.campaign;
        cfg.phantom = case_transform(base, c.k, c.v);
        cfg.levels = 1;
        const auto report = run_campaign(cfg);
        for (const auto& r : report.rows) rows.push_back({c.label, c.k, c.v, r.detector, r.mean_time, 0});
    }
    rank_timings(rows);
    const fs::path dir = f.out.value_or(".");
    fs::create_directories(dir);
    auto out = open_out(dir / "timing.csv");
    write_timing_csv(out, rows);
    return 0;
}

void draw_point(RgbImage& img, double row, double col, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const long rr = std::lround(row);
    const long cc = std::lround(col);
    if (rr < 0 || cc < 0 || rr >= img.height || cc >= img.width) return;
    auto* p = img.pixel(static_cast<int>(rr), static_cast<int>(cc));
    p[0] = r;
    p[1] = g;
    p[2] = b;
}

int run_detect(const std::string& image_path, const std::string& fan_path, const CommonOptions& o,
               const std::string& ppm) {
    const auto image = read_image(fs::path(image_path));
    const auto fan = fan_from_document(KeyValueDocument::load(fan_path));
    DetectorSpec det = DetectorSpec::parse("BA");
    if (fan.detector) det = *fan.detector;
    if (o.detectors.size() > 1) throw UsageError("detect takes a single --detector");
    if (!o.detectors.empty()) det = DetectorSpec::parse(o.detectors.front(), o.beta.value_or(kDefaultBeta));

    const auto res = detect_contour(image, fan.centroid, fan.control_points, det, fan.samples_per_span,
                                    Execution::Parallel);
    std::string text = fmt::format("# detector {}\n# ray j_hat row col\n", det.name());
    for (std::size_t i = 0; i < res.results.size(); ++i) {
        const auto& p = res.contour.transition_points[i];
        text += fmt::format("transition {} {} {} {}\n", i, res.results[i].j_hat, p.row, p.col);
    }
    for (const auto& p : res.contour.spline_samples) text += fmt::format("contour {} {}\n", p.row, p.col);
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
    } else {
        auto out = open_out(o.out);
        out << text;
    }

    if (!ppm.empty()) {
        auto rgb = render_pauli(image);
        for (const auto& p : res.contour.spline_samples) draw_point(rgb, p.row, p.col, 255, 255, 0);
        for (const auto& p : res.contour.transition_points) draw_point(rgb, p.row, p.col, 255, 0, 0);
        if (fs::path(ppm).has_parent_path()) fs::create_directories(fs::path(ppm).parent_path());
        write_ppm(ppm, rgb);
    }
    return 0;
}

int run_curve(const std::string& strip_path, const CommonOptions& o) {
    const Strip strip = load_strip(strip_path);
    if (o.detectors.size() > 1) throw UsageError("curve takes a single --detector");
    const auto det = DetectorSpec::parse(o.detectors.empty() ? "ML" : o.detectors.front(),
                                         o.beta.value_or(kDefaultBeta));
    const auto res = detect(strip, det);
    if (o.out.empty() || o.out == "-") {
        write_curve_csv(std::cout, res);
    } else {
        auto out = open_out(o.out);
        write_curve_csv(out, res);
    }
    fmt::print(std::cerr, "curve: {} j_hat = {}\n", det.name(), res.j_hat);
    return 0;
}

int run_phantom(const std::string& kind, std::uint64_t seed, const std::string& out, int size) {
    RandomSource rng(seed, 0);
    if (kind == "disk") {
        const double c = (size - 1) / 2.0;
        const auto img = make_disk_image(size, {c, c}, size / 4.0, sigma_urban(), sigma_forest(), 4.0, rng);
        write_image(fs::path(out), img);
    } else if (kind == "baseline") {
        const auto strip = make_phantom(baseline_phantom(), rng);
        if (fs::path(out).extension() == ".json") {
            auto f = open_out(out);
            write_strip_json(f, strip);
        } else {
            PolSarImage img(strip.size(), 1, strip.dim(), strip.looks);
            img.pixels = strip.pixels;
            write_image(fs::path(out), img);
        }
    } else {
        throw UsageError("phantom kind must be disk or baseline");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PolSAR edge detection under the scaled complex Wishart model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "polsar_edge 1.0");

    CommonOptions sim_opts;
    bool timing = false;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo campaign; writes fk.csv and summary.csv");
    add_campaign_options(sim, sim_opts);
    sim->add_flag("--timing", timing, "Record mean detection wall time (makes time_s nondeterministic)");

    CommonOptions bench_opts;
    auto* bench = app.add_subcommand("bench", "Detection timing over the contrast case grid; writes timing.csv");
    add_campaign_options(bench, bench_opts);

    CommonOptions det_opts;
    std::string image_path, fan_path, ppm;
    auto* det = app.add_subcommand("detect", "Ray-fan edge detection and contour fit on a PSARC1 image");
    det->add_option("--image", image_path, "PSARC1 image")->required()->check(CLI::ExistingFile);
    det->add_option("--fan", fan_path, "Fan spec (key = value)")->required()->check(CLI::ExistingFile);
    det->add_option("--detector", det_opts.detectors, "Detector label (default: fan spec, then BA)");
    det->add_option("--beta", det_opts.beta, "Order for RD / RE");
    det->add_option("--out", det_opts.out, "Text output (default stdout)");
    det->add_option("--ppm", ppm, "Annotated Pauli raster (P6)");

    CommonOptions curve_opts;
    std::string strip_path;
    auto* curve = app.add_subcommand("curve", "Objective curve of one strip as CSV");
    curve->add_option("--strip", strip_path, "JSON strip or one-pixel-wide PSARC1 image")
        ->required()
        ->check(CLI::ExistingFile);
    curve->add_option("--detector", curve_opts.detectors, "Detector label (default ML)");
    curve->add_option("--beta", curve_opts.beta, "Order for RD / RE");
    curve->add_option("--out", curve_opts.out, "CSV output (default stdout)");

    std::string phantom_kind = "disk", phantom_out;
    std::uint64_t phantom_seed = 1;
    int phantom_size = 150;
    auto* ph = app.add_subcommand("phantom", "Write a synthetic phantom");
    ph->add_option("--kind", phantom_kind, "disk (PSARC1 image) or baseline (strip)");
    ph->add_option("--seed", phantom_seed, "Seed");
    ph->add_option("--size", phantom_size, "Disk image side")->check(CLI::Range(8, 100000));
    ph->add_option("--out", phantom_out, "Output path (.json for a JSON strip)")->required();

    std::string render_in, render_out;
    auto* render = app.add_subcommand("render", "Pauli RGB composite of a PSARC1 image");
    render->add_option("--image", render_in, "PSARC1 image")->required()->check(CLI::ExistingFile);
    render->add_option("--out", render_out, "PPM output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*sim) return run_simulate(sim_opts, timing);
        if (*bench) return run_bench(bench_opts);
        if (*det) return run_detect(image_path, fan_path, det_opts, ppm);
        if (*curve) return run_curve(strip_path, curve_opts);
        if (*ph) return run_phantom(phantom_kind, phantom_seed, phantom_out, phantom_size);
        if (*render) {
            write_ppm(render_out, render_pauli(read_image(fs::path(render_in))));
            return 0;
        }
    } catch (const UsageError& e) {
        fmt::print(std::cerr, "polsar_edge: {}\n", e.what());
        return kExitUsage;
    } catch (const polsar::Error& e) {
        fmt::print(std::cerr, "polsar_edge: {} error: {}\n", to_string(e.kind()), e.what());
        return e.is_numerical() ? kExitNumerical : kExitData;
    } catch (const std::exception& e) {
        fmt::print(std::cerr, "polsar_edge: {}\n", e.what());
        return kExitData;
    }
    return kExitUsage;
}
