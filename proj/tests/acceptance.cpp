// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 4 7        run the listed criteria
//
// Exit status is non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <fmt/format.h>

#include "oracles.hpp"
#include "polsar/detect.hpp"
#include "polsar/geometry.hpp"
#include "polsar/measures.hpp"
#include "polsar/simulate.hpp"

using namespace polsar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

const std::vector<DistanceKind> kDistances = {DistanceKind::kullback_leibler(), DistanceKind::renyi(0.8),
                                              DistanceKind::bhattacharyya(), DistanceKind::hellinger()};

bool is_entropy(const std::string& name) { return name == "S" || name.rfind("RE-", 0) == 0; }
bool is_distance(const std::string& name) {
    return name == "KL" || name == "BA" || name == "H" || name.rfind("RD-", 0) == 0;
}

double binomial_se(double p, int reps) { return std::sqrt(std::max(p * (1.0 - p), 0.0) / reps); }

// Margin test for "a exceeds b by more than two binomial standard errors".
// The standard error is evaluated at the pooled proportion.
bool exceeds(double a, double b, int reps) { return a - b > 2.0 * binomial_se(0.5 * (a + b), reps); }

// 1. Divergence axioms on random HPD pairs.
Outcome criterion_1() {
    Outcome o;
    const auto start = Clock::now();
    std::mt19937_64 rng(1);
    const int ms[] = {1, 2, 3};
    const double looks[] = {1.0, 3.2, 4.0, 8.0};
    double worst_sym = 0.0, worst_neg = 0.0, worst_zero = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const int m = ms[t % 3];
        const double L = looks[(t / 3) % 4];
        const WishartParams p1{oracle::random_hpd(m, rng, 0.05, 20.0), L};
        const WishartParams p2{oracle::random_hpd(m, rng, 0.05, 20.0), L};
        for (const auto& k : kDistances) {
            const double d12 = distance(k, p1, p2);
            worst_sym = std::max(worst_sym, std::abs(d12 - distance(k, p2, p1)));
            worst_neg = std::min(worst_neg, d12);
            worst_zero = std::max({worst_zero, std::abs(distance(k, p1, p1)), std::abs(distance(k, p2, p2))});
        }
    }
    const double elapsed = seconds_since(start);
    o.check(worst_sym <= 1e-12, fmt::format("symmetry gap {:.3g}", worst_sym));
    o.check(worst_neg >= -1e-12, fmt::format("negative distance {:.3g}", worst_neg));
    o.check(worst_zero <= 1e-10, fmt::format("self distance {:.3g}", worst_zero));
    o.check(elapsed < 10.0, fmt::format("runtime {:.2f} s", elapsed));
    if (o.pass) {
        o.detail = fmt::format("max |d12-d21| {:.2g}, min d {:.2g}, max d(S,S) {:.2g}, {:.2f} s", worst_sym,
                               worst_neg, worst_zero, elapsed);
    }
    return o;
}

struct ScalarTriple {
    double s1, s2, L;
};

std::vector<ScalarTriple> scalar_grid() {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> s(0.1, 10.0), l(1.0, 16.0);
    std::vector<ScalarTriple> out;
    for (int t = 0; t < 50; ++t) out.push_back({s(rng), s(rng), l(rng)});
    return out;
}

WishartParams scalar(double s2, double L) { return {HermitianMatrix::diagonal({s2}), L}; }

// 2. Closed forms against numerical integration for m = 1.
Outcome criterion_2() {
    Outcome o;
    const auto start = Clock::now();
    double worst = 0.0;
    for (const auto& t : scalar_grid()) {
        const auto p1 = scalar(t.s1, t.L), p2 = scalar(t.s2, t.L);
        worst = std::max(worst, std::abs(distance(DistanceKind::kullback_leibler(), p1, p2) -
                                         oracle::kl_by_quadrature(t.s1, t.s2, t.L)));
        worst = std::max(worst, std::abs(distance(DistanceKind::renyi(0.8), p1, p2) -
                                         oracle::renyi_by_quadrature(t.s1, t.s2, t.L, 0.8)));
        worst = std::max(worst, std::abs(distance(DistanceKind::bhattacharyya(), p1, p2) -
                                         oracle::bhattacharyya_by_quadrature(t.s1, t.s2, t.L)));
        worst = std::max(worst, std::abs(distance(DistanceKind::hellinger(), p1, p2) -
                                         oracle::hellinger_by_quadrature(t.s1, t.s2, t.L)));
    }
    const double kl = distance(DistanceKind::kullback_leibler(), scalar(2.0, 4.0), scalar(1.0, 4.0));
    const double ba = distance(DistanceKind::bhattacharyya(), scalar(2.0, 1.0), scalar(1.0, 1.0));
    const double elapsed = seconds_since(start);
    o.check(worst <= 1e-6, fmt::format("closed form vs quadrature {:.3g}", worst));
    o.check(std::abs(kl - 1.0) <= 1e-12, fmt::format("d_KL anchor {}", kl));
    o.check(std::abs(ba - 0.05889) <= 5e-6, fmt::format("d_BA anchor {}", ba));
    o.check(elapsed < 30.0, fmt::format("runtime {:.2f} s", elapsed));
    if (o.pass) {
        o.detail = fmt::format("max |closed - quadrature| {:.2g}; d_KL {:.12g}; d_BA {:.7g}; {:.2f} s", worst, kl,
                               ba, elapsed);
    }
    return o;
}

// 3. Renyi-1/2 and Hellinger against Bhattacharyya.
Outcome criterion_3() {
    Outcome o;
    double worst_rd = 0.0, worst_h = 0.0, worst_hq = 0.0;
    for (const auto& t : scalar_grid()) {
        const auto p1 = scalar(t.s1, t.L), p2 = scalar(t.s2, t.L);
        const double ba = distance(DistanceKind::bhattacharyya(), p1, p2);
        worst_rd = std::max(worst_rd, std::abs(distance(DistanceKind::renyi(0.5), p1, p2) - 2.0 * ba));
        worst_h = std::max(worst_h, std::abs(distance(DistanceKind::hellinger(), p1, p2) - (1.0 - std::exp(-ba))));
        worst_hq = std::max(worst_hq, std::abs(distance(DistanceKind::hellinger(), p1, p2) -
                                               oracle::hellinger_by_quadrature(t.s1, t.s2, t.L)));
    }
    o.check(worst_rd <= 1e-10, fmt::format("RD-0.5 vs 2 BA {:.3g}", worst_rd));
    o.check(worst_h <= 1e-10, fmt::format("H vs 1-exp(-BA) {:.3g}", worst_h));
    o.check(worst_hq <= 1e-6, fmt::format("H vs quadrature {:.3g}", worst_hq));
    if (o.pass) {
        o.detail = fmt::format("|RD-0.5 - 2BA| {:.2g}, |H - (1-e^-BA)| {:.2g}, |H - quadrature| {:.2g}", worst_rd,
                               worst_h, worst_hq);
    }
    return o;
}

// 4. Null calibration of the test statistics.
Outcome criterion_4() {
    Outcome o;
    const auto start = Clock::now();
    const WishartParams law{sigma_forest(), 4.0};
    const int reps = 2000, n = 100;
    std::vector<double> dist_sum(kDistances.size(), 0.0);
    double ent_sum = 0.0, rent_sum = 0.0;
    for (int r = 0; r < reps; ++r) {
        RandomSource rng(4, static_cast<std::uint64_t>(r));
        std::vector<HermitianMatrix> a, b;
        for (int k = 0; k < n; ++k) a.push_back(sample(law, rng));
        for (int k = 0; k < n; ++k) b.push_back(sample(law, rng));
        const WishartParams e1{mle_covariance(a), 4.0}, e2{mle_covariance(b), 4.0};
        for (std::size_t d = 0; d < kDistances.size(); ++d) dist_sum[d] += distance_statistic(kDistances[d], e1, n, e2, n);
        ent_sum += entropy_statistic(EntropyKind::shannon(), e1, n, e2, n);
        rent_sum += entropy_statistic(EntropyKind::renyi(0.8), e1, n, e2, n);
    }
    const double elapsed = seconds_since(start);
    const double df = degrees_of_freedom(3);
    std::string means;
    for (std::size_t d = 0; d < kDistances.size(); ++d) {
        const double mean = dist_sum[d] / reps;
        means += fmt::format("{} {:.3f}, ", kDistances[d].name(), mean);
        o.check(mean >= 0.85 * df && mean <= 1.15 * df, fmt::format("{} mean {:.3f}", kDistances[d].name(), mean));
    }
    const double s_mean = ent_sum / reps, re_mean = rent_sum / reps;
    means += fmt::format("S {:.3f}, RE-0.8 {:.3f}", s_mean, re_mean);
    o.check(s_mean >= 0.7 && s_mean <= 1.3, fmt::format("S mean {:.3f}", s_mean));
    o.check(re_mean >= 0.7 && re_mean <= 1.3, fmt::format("RE-0.8 mean {:.3f}", re_mean));
    o.check(elapsed < 120.0, fmt::format("runtime {:.1f} s", elapsed));
    if (o.pass) o.detail = fmt::format("means: {}; {:.1f} s", means, elapsed);
    return o;
}

// 5. Baseline precision curves.
Outcome criterion_5() {
    Outcome o;
    CampaignConfig cfg;
    cfg.detectors = all_polarimetric_detectors();
    cfg.phantom = baseline_phantom();
    cfg.reps = 200;
    cfg.seed = 5;
    cfg.record_timing = false;
    const auto report = run_campaign(cfg);
    const int R = cfg.reps;

    std::string f10;
    for (const auto& d : report.rows) {
        f10 += fmt::format("{} {:.3f} ", d.detector, d.f_at(10));
        o.check(d.f_at(10) >= 0.9, fmt::format("{} f(10) = {:.3f}", d.detector, d.f_at(10)));
    }
    for (int k = 1; k <= kMaxErrorK; ++k) {
        for (const auto& e : report.rows) {
            if (!is_entropy(e.detector)) continue;
            for (const auto& d : report.rows) {
                if (is_entropy(d.detector)) continue;
                if (k <= 3) {
                    o.check(exceeds(e.f_at(k), d.f_at(k), R),
                            fmt::format("k={}: {} {:.3f} not above {} {:.3f}", k, e.detector, e.f_at(k), d.detector,
                                        d.f_at(k)));
                } else if (is_distance(d.detector)) {
                    o.check(exceeds(d.f_at(k), e.f_at(k), R),
                            fmt::format("k={}: {} {:.3f} not above {} {:.3f}", k, d.detector, d.f_at(k), e.detector,
                                        e.f_at(k)));
                }
            }
        }
    }
    if (o.pass) o.detail = "f(10): " + f10;
    return o;
}

// 6. Contrast-case ordering of the mean estimates.
Outcome criterion_6() {
    Outcome o;
    std::string summary;
    for (const auto& c : contrast_case_grid()) {
        CampaignConfig cfg;
        cfg.detectors = all_polarimetric_detectors();
        cfg.phantom = case_transform(sigma_forest(), c.k, c.v);
        cfg.reps = 200;
        cfg.seed = 6;
        cfg.record_timing = false;
        const auto report = run_campaign(cfg);
        auto err = [&](const DetectorReport& d) { return std::abs(d.mean - 50.0); };
        double best = 1e300, best_other = 1e300, worst_entropy = 0.0;
        for (const auto& d : report.rows) {
            best = std::min(best, err(d));
            if (is_entropy(d.detector)) {
                worst_entropy = std::max(worst_entropy, err(d));
            } else {
                best_other = std::min(best_other, err(d));
            }
        }
        const std::string label = fmt::format("({},{})", c.k, c.v);
        const bool entropy_case = c.k <= 0.1 && c.v >= 1.0;
        const bool ml_case = c.v == 0.0 && c.k >= 1.0;
        if (entropy_case) {
            o.check(worst_entropy < best_other,
                    fmt::format("{}: entropy |mean-50| {:.3f} vs best other {:.3f}", label, worst_entropy, best_other));
            summary += fmt::format("{} entropy {:.3f} < {:.3f}; ", label, worst_entropy, best_other);
        }
        if (ml_case) {
            const double ml = err(report.find("ML"));
            o.check(ml <= best + 0.3, fmt::format("{}: ML |mean-50| {:.3f} vs best {:.3f}", label, ml, best));
            summary += fmt::format("{} ML {:.3f} <= {:.3f}+0.3; ", label, ml, best);
        }
    }
    if (o.pass) o.detail = summary;
    return o;
}

// 7. Ordering of mean detection times.
Outcome criterion_7() {
    Outcome o;
    const std::vector<std::string> chain = {"ML", "RD-0.8", "RE-0.8", "S", "H", "BA", "KL"};
    int chain_ok = 0;
    for (const auto& c : contrast_case_grid()) {
        CampaignConfig cfg;
        cfg.detectors = all_polarimetric_detectors();
        cfg.phantom = case_transform(sigma_forest(), c.k, c.v);
        cfg.reps = 200;
        cfg.seed = 7;
        cfg.record_timing = true;
        const auto report = run_campaign(cfg, Execution::Serial);
        std::map<std::string, double> t;
        for (const auto& d : report.rows) t[d.detector] = d.mean_time;
        const std::string label = fmt::format("({},{})", c.k, c.v);
        const auto [lo, hi] = std::minmax_element(t.begin(), t.end(),
                                                  [](const auto& a, const auto& b) { return a.second < b.second; });
        o.check(hi->first == "ML", fmt::format("{}: slowest is {} ({:.3g} s) not ML ({:.3g} s)", label, hi->first,
                                               hi->second, t["ML"]));
        o.check(lo->first == "KL", fmt::format("{}: fastest is {} ({:.3g} s) not KL ({:.3g} s)", label, lo->first,
                                               lo->second, t["KL"]));
        bool ok = true;
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            const double a = t[chain[i]], b = t[chain[i + 1]];
            if (a < 0.95 * b) {
                ok = false;
                o.check(false, fmt::format("{}: t_{} {:.3g} < 0.95 t_{} {:.3g}", label, chain[i], a, chain[i + 1], b));
            }
        }
        chain_ok += ok;
    }
    if (o.pass) o.detail = fmt::format("chain holds in {}/9 cases", chain_ok);
    return o;
}

// 8. Polarimetric vs single-channel detectors under SPAN and covariance changes.
Outcome criterion_8() {
    Outcome o;
    std::string summary;
    for (const char* which : {"span", "cov"}) {
        CampaignConfig cfg;
        cfg.detectors = all_polarimetric_detectors();
        for (const char* g : {"HH-ML", "HV-ML", "VV-ML"}) cfg.detectors.push_back(DetectorSpec::parse(g));
        cfg.phantom = std::string(which) == "span" ? span_case(sigma_forest(), 0.2) : cov_case(sigma_forest(), 0.2);
        cfg.reps = 200;
        cfg.seed = 8;
        cfg.record_timing = false;
        const auto report = run_campaign(cfg);
        double min_pol = 1.0, max_gamma = 0.0;
        for (const auto& p : report.rows) {
            if (p.detector.find("-ML") != std::string::npos) {
                max_gamma = std::max(max_gamma, p.f_at(10));
                continue;
            }
            min_pol = std::min(min_pol, p.f_at(10));
            for (const auto& g : report.rows) {
                if (g.detector.find("-ML") == std::string::npos) continue;
                for (int k = 1; k <= kMaxErrorK; ++k) {
                    o.check(p.f_at(k) >= g.f_at(k), fmt::format("{} k={}: {} {:.3f} < {} {:.3f}", which, k,
                                                                p.detector, p.f_at(k), g.detector, g.f_at(k)));
                }
                o.check(exceeds(p.f_at(10), g.f_at(10), cfg.reps),
                        fmt::format("{} k=10: {} {:.3f} within 2 SE of {} {:.3f}", which, p.detector, p.f_at(10),
                                    g.detector, g.f_at(10)));
            }
        }
        summary += fmt::format("{}: min polarimetric f(10) {:.3f}, max gamma f(10) {:.3f}; ", which, min_pol, max_gamma);
    }
    if (o.pass) o.detail = summary;
    return o;
}

// 9. Resolution pyramid.
Outcome criterion_9() {
    Outcome o;
    CampaignConfig cfg;
    cfg.detectors = all_polarimetric_detectors();
    cfg.phantom = span_case(sigma_forest(), 0.2);
    cfg.reps = 500;
    cfg.seed = 9;
    cfg.levels = 3;
    cfg.record_timing = false;
    const auto report = run_campaign(cfg);
    std::string summary;
    for (const auto& spec : cfg.detectors) {
        const std::string name = spec.name();
        const auto& l0 = report.find(name, 0);
        const auto& l1 = report.find(name, 1);
        const auto& l2 = report.find(name, 2);
        o.check(l0.mse > l1.mse && l1.mse > l2.mse,
                fmt::format("{} MSE {:.3f} {:.3f} {:.3f}", name, l0.mse, l1.mse, l2.mse));
        for (const auto* l : {&l0, &l1, &l2}) {
            o.check(std::abs(l->bias) <= 0.2, fmt::format("{} level {} bias {:.3f}", name, l->level, l->bias));
        }
        const double cv_lo = std::min({l0.cv, l1.cv, l2.cv});
        const double cv_hi = std::max({l0.cv, l1.cv, l2.cv});
        o.check(cv_hi / cv_lo - 1.0 < 0.3, fmt::format("{} CV {:.4f} {:.4f} {:.4f}", name, l0.cv, l1.cv, l2.cv));
        summary += fmt::format("{} MSE {:.2f}>{:.2f}>{:.2f}; ", name, l0.mse, l1.mse, l2.mse);
    }
    if (o.pass) o.detail = summary;
    return o;
}

double disk_iou(const std::vector<PointD>& ring, PointD c, double radius, int size) {
    const int sub = 4;
    long long inter = 0, uni = 0;
    for (int r = 0; r < size; ++r)
        for (int col = 0; col < size; ++col)
            for (int a = 0; a < sub; ++a)
                for (int b = 0; b < sub; ++b) {
                    const PointD p{r - 0.5 + (a + 0.5) / sub, col - 0.5 + (b + 0.5) / sub};
                    const bool in_disk = std::hypot(p.row - c.row, p.col - c.col) <= radius;
                    const bool in_contour = inside_polygon(ring, p);
                    inter += in_disk && in_contour;
                    uni += in_disk || in_contour;
                }
    return static_cast<double>(inter) / static_cast<double>(uni);
}

// 10. Geometry.
Outcome criterion_10() {
    Outcome o;
    long long segments = 0, mismatches = 0;
    for (int r0 = 0; r0 <= 32; ++r0)
        for (int c0 = 0; c0 <= 32; ++c0)
            for (int c1 = c0; c1 <= 32; ++c1)
                for (int r1 = r0; r1 <= 32 && r1 - r0 <= c1 - c0; ++r1) {
                    ++segments;
                    const auto got = bresenham({r0, c0}, {r1, c1});
                    const auto want = oracle::rounded_line(r0, c0, r1, c1);
                    bool same = got.size() == want.size();
                    for (std::size_t i = 0; same && i < got.size(); ++i) {
                        same = got[i].row == want[i].first && got[i].col == want[i].second;
                    }
                    mismatches += !same;
                }
    o.check(mismatches == 0, fmt::format("Bresenham mismatches {}/{}", mismatches, segments));

    const PointD center{60.0, 60.0};
    const double radius = 40.0;
    std::vector<PointD> circle;
    for (int i = 0; i < 12; ++i) {
        const double t = 2 * std::numbers::pi * i / 12;
        circle.push_back({center.row - radius * std::sin(t), center.col + radius * std::cos(t)});
    }
    double dev = 0.0;
    for (const auto& p : fit_contour(circle).spline_samples) {
        dev = std::max(dev, std::abs(std::hypot(p.row - center.row, p.col - center.col) - radius));
    }
    o.check(dev < 0.5, fmt::format("spline radial deviation {:.3f}", dev));

    const int size = 150;
    const PointD disk_c{74.5, 74.5};
    const double disk_r = 40.0;
    RandomSource rng(10, 0);
    const auto img = make_disk_image(size, disk_c, disk_r, sigma_urban(), sigma_forest(), 4.0, rng);
    const auto fan = circular_fan(disk_c, 70.0, 16);
    const auto det = detect_contour(img, disk_c, fan, DetectorSpec::parse("BA"), 16, Execution::Parallel);
    const double iou = disk_iou(det.contour.spline_samples, disk_c, disk_r, size);
    o.check(iou >= 0.9, fmt::format("disk IoU {:.3f}", iou));
    if (o.pass) {
        o.detail = fmt::format("{} first-octant segments match; spline deviation {:.3f} px; disk IoU {:.3f}", segments,
                               dev, iou);
    }
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 11. Byte-identical simulate output across thread counts.
Outcome criterion_11() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "polsar_acceptance_11";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "baseline.cfg");
        cfg << "scenario = baseline\nreps = 200\nseed = 11\nlevels = 2\n";
    }
    const std::string bin = POLSAR_EDGE_BIN;
    auto run = [&](const std::string& out, int threads) {
        const std::string cmd = fmt::format("{} simulate --config {} --out {} --threads {} 2>/dev/null", bin,
                                            (dir / "baseline.cfg").string(), (dir / out).string(), threads);
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) && WEXITSTATUS(status) == 0;
    };
    o.check(run("t1", 1), "simulate --threads 1 failed");
    o.check(run("t4", 4), "simulate --threads 4 failed");
    o.check(run("t1b", 1), "second simulate --threads 1 failed");
    for (const char* f : {"fk.csv", "summary.csv"}) {
        const auto a = slurp(dir / "t1" / f);
        o.check(!a.empty(), fmt::format("{} empty", f));
        o.check(a == slurp(dir / "t4" / f), fmt::format("{} differs between 1 and 4 threads", f));
        o.check(a == slurp(dir / "t1b" / f), fmt::format("{} differs between runs", f));
    }
    if (o.pass) o.detail = "fk.csv and summary.csv identical for 1 and 4 threads and across runs";
    fs::remove_all(dir);
    return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria = {
    {"divergence axioms", criterion_1},      {"quadrature oracle (m=1)", criterion_2},
    {"algebraic bridges", criterion_3},      {"chi-square calibration", criterion_4},
    {"baseline detection", criterion_5},     {"contrast-case pattern", criterion_6},
    {"timing order", criterion_7},           {"Cases A/B dominance", criterion_8},
    {"resolution study", criterion_9},       {"geometry", criterion_10},
    {"determinism", criterion_11},
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failed = 0;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = Clock::now();
        Outcome o;
        try {
            o = kCriteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        fmt::print("{} AC{:<2} {}: {} [{:.1f} s]\n", o.pass ? "PASS" : "FAIL", id, kCriteria[i].first, o.detail,
                   seconds_since(start));
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
