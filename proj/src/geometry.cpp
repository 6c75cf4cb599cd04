#include "polsar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>

#include <fmt/format.h>

#include "polsar/error.hpp"

namespace polsar {

std::vector<PixelCoord> bresenham(PixelCoord p0, PixelCoord p1) {
    const int d_row = p1.row - p0.row;
    const int d_col = p1.col - p0.col;
    const bool col_major = std::abs(d_col) >= std::abs(d_row);
    const long long major = col_major ? std::abs(d_col) : std::abs(d_row);
    const long long minor = col_major ? std::abs(d_row) : std::abs(d_col);
    const int step_row = d_row > 0 ? 1 : (d_row < 0 ? -1 : 0);
    const int step_col = d_col > 0 ? 1 : (d_col < 0 ? -1 : 0);

    std::vector<PixelCoord> out;
    out.reserve(static_cast<std::size_t>(major) + 1);
    out.push_back(p0);

    // acc = 2 i minor + major - 2 major offset; the minor offset advances when
    // the midpoint criterion acc >= 2 major holds (ties step toward p1).
    long long acc = major;
    int offset = 0;
    for (long long i = 1; i <= major; ++i) {
        acc += 2 * minor;
        if (acc >= 2 * major) {
            ++offset;
            acc -= 2 * major;
        }
        const int along = static_cast<int>(i);
        if (col_major) {
            out.push_back({p0.row + step_row * offset, p0.col + step_col * along});
        } else {
            out.push_back({p0.row + step_row * along, p0.col + step_col * offset});
        }
    }
    return out;
}

namespace {

double heading(PointD from, PixelCoord to) {
    // Rows grow downward; flip them so positive angles turn counter-clockwise on screen.
    return std::atan2(-(to.row - from.row), to.col - from.col);
}

}  // namespace

std::vector<double> RayFan::angles() const {
    const int s = size();
    std::vector<double> eps(s);
    for (int i = 0; i < s; ++i) {
        double d = heading(centroid, control_points[(i + 1) % s]) - heading(centroid, control_points[i]);
        while (d <= -std::numbers::pi) d += 2 * std::numbers::pi;
        while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
        eps[i] = d;
    }
    return eps;
}

bool RayFan::closes_region() const {
    const auto eps = angles();
    if (eps.empty()) return false;
    const bool ccw = eps.front() > 0;
    double sum = 0.0;
    for (double e : eps) {
        if ((e > 0) != ccw || e == 0.0) return false;
        sum += e;
    }
    return std::abs(std::abs(sum) - 2 * std::numbers::pi) < 1e-9;
}

FanStrips cast_fan(PointD centroid, const std::vector<PixelCoord>& control_points,
                   const PolSarImage& image) {
    if (control_points.size() < 4) {
        throw DegenerateGeometry(
            fmt::format("a ray fan needs at least 4 control points, got {}", control_points.size()));
    }
    const PixelCoord c{static_cast<int>(std::lround(centroid.row)),
                       static_cast<int>(std::lround(centroid.col))};
    if (!image.contains(c.row, c.col)) {
        throw OutOfBounds(fmt::format("centroid ({}, {}) outside the image", centroid.row, centroid.col));
    }
    FanStrips out;
    out.fan.centroid = centroid;
    out.fan.control_points = control_points;
    for (const auto& p : control_points) {
        if (!image.contains(p.row, p.col)) {
            throw OutOfBounds(fmt::format("control point ({}, {}) outside the image", p.row, p.col));
        }
        auto ray = bresenham(c, p);
        Strip strip;
        strip.looks = image.looks;
        strip.pixels.reserve(ray.size());
        for (const auto& q : ray) strip.pixels.push_back(image.at(q.row, q.col));
        strip.coords = ray;
        out.strips.push_back(std::move(strip));
        out.fan.rays.push_back(std::move(ray));
    }
    return out;
}

PointD transition_point(const Strip& strip, int j_hat) {
    if (strip.coords.size() != strip.pixels.size()) {
        throw DimensionMismatch("strip has no pixel coordinates");
    }
    if (j_hat < 1 || j_hat >= strip.size()) throw OutOfBounds("transition index outside the strip");
    const auto& a = strip.coords[j_hat - 1];
    const auto& b = strip.coords[j_hat];
    return {0.5 * (a.row + b.row), 0.5 * (a.col + b.col)};
}

double quartic_bspline(double x) {
    if (x < 0.0 || x >= 5.0) return 0.0;
    // Cox-de Boor on integer knots, degree 0..4, for the five unit pieces
    // overlapping x.
    double b[5];
    for (int i = 0; i < 5; ++i) b[i] = (x >= i && x < i + 1) ? 1.0 : 0.0;
    for (int p = 1; p <= 4; ++p) {
        for (int i = 0; i + p < 5; ++i) {
            const double y = x - i;
            b[i] = (y * b[i] + (p + 1 - y) * b[i + 1]) / p;
        }
    }
    return b[0];
}

namespace {

// Dense Gaussian elimination with partial pivoting; solves in place for two
// right-hand sides. Returns false on a (numerically) singular system.
bool solve(std::vector<std::vector<double>> a, std::vector<double>& x, std::vector<double>& y) {
    const int n = static_cast<int>(a.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-12) return false;
        std::swap(a[piv], a[c]);
        std::swap(x[piv], x[c]);
        std::swap(y[piv], y[c]);
        for (int r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            if (f == 0.0) continue;
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            x[r] -= f * x[c];
            y[r] -= f * y[c];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        for (int k = r + 1; k < n; ++k) {
            x[r] -= a[r][k] * x[k];
            y[r] -= a[r][k] * y[k];
        }
        x[r] /= a[r][r];
        y[r] /= a[r][r];
    }
    return true;
}

double distance(PointD a, PointD b) { return std::hypot(a.row - b.row, a.col - b.col); }

void check_geometry(const std::vector<PointD>& pts) {
    const int s = static_cast<int>(pts.size());
    if (s < 5) {
        throw DegenerateGeometry(fmt::format("closed quartic interpolation needs 5 points, got {}", s));
    }
    double scale = 0.0;
    for (int i = 0; i < s; ++i) {
        const double d = distance(pts[i], pts[(i + 1) % s]);
        if (!(d > 1e-9)) throw DegenerateGeometry(fmt::format("repeated point at index {}", i));
        scale = std::max(scale, distance(pts[i], pts[0]));
    }
    // Collinearity: largest distance from the line through p0 and the point farthest from it.
    int far = 0;
    for (int i = 1; i < s; ++i)
        if (distance(pts[i], pts[0]) > distance(pts[far], pts[0])) far = i;
    const double dr = pts[far].row - pts[0].row;
    const double dc = pts[far].col - pts[0].col;
    double spread = 0.0;
    for (const auto& p : pts) {
        spread = std::max(spread, std::abs(dr * (p.col - pts[0].col) - dc * (p.row - pts[0].row)) / scale);
    }
    if (spread < 1e-9 * scale) throw DegenerateGeometry("transition points are collinear");
}

}  // namespace

Contour fit_contour(const std::vector<PointD>& transition_points, int samples_per_span) {
    check_geometry(transition_points);
    const int s = static_cast<int>(transition_points.size());
    samples_per_span = std::max(samples_per_span, 1);

    // Point k is matched at parameter k + 2.5, the centre of basis function k.
    std::vector<std::vector<double>> a(s, std::vector<double>(s, 0.0));
    for (int k = 0; k < s; ++k)
        for (int o = -2; o <= 2; ++o) a[k][((k + o) % s + s) % s] += quartic_bspline(2.5 - o);

    std::vector<double> rows(s);
    std::vector<double> cols(s);
    for (int k = 0; k < s; ++k) {
        rows[k] = transition_points[k].row;
        cols[k] = transition_points[k].col;
    }
    if (!solve(a, rows, cols)) throw DegenerateGeometry("singular spline collocation system");

    Contour c;
    c.transition_points = transition_points;
    c.control_points.resize(s);
    for (int k = 0; k < s; ++k) c.control_points[k] = {rows[k], cols[k]};

    auto eval = [&](double t) {
        PointD p;
        const int base = static_cast<int>(std::floor(t));
        for (int j = base - 4; j <= base; ++j) {
            const double w = quartic_bspline(t - j);
            const auto& cp = c.control_points[((j % s) + s) % s];
            p.row += w * cp.row;
            p.col += w * cp.col;
        }
        return p;
    };

    for (int k = 0; k < s; ++k) {
        const double chord = distance(transition_points[k], transition_points[(k + 1) % s]);
        const int n = std::max(samples_per_span, static_cast<int>(std::ceil(2.0 * chord)));
        for (int i = 0; i < n; ++i) c.spline_samples.push_back(eval(k + 2.5 + static_cast<double>(i) / n));
    }
    c.spline_samples.push_back(c.spline_samples.front());
    return c;
}

FanDetection detect_contour(const PolSarImage& image, PointD centroid,
                            const std::vector<PixelCoord>& control_points, const DetectorSpec& detector,
                            int samples_per_span, Execution execution) {
    FanDetection out;
    out.fan = cast_fan(centroid, control_points, image);
    const int n = static_cast<int>(out.fan.strips.size());
    out.results.resize(n);
    std::vector<std::exception_ptr> failures(n);
#pragma omp parallel for schedule(dynamic) if (execution == Execution::Parallel)
    for (int i = 0; i < n; ++i) {
        try {
            out.results[i] = detect(out.fan.strips[i], detector, Execution::Serial);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    std::vector<PointD> points;
    for (int i = 0; i < n; ++i) points.push_back(transition_point(out.fan.strips[i], out.results[i].j_hat));
    out.contour = fit_contour(points, samples_per_span);
    return out;
}

bool inside_polygon(const std::vector<PointD>& ring, PointD p) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const auto& a = ring[i];
        const auto& b = ring[j];
        if ((a.row > p.row) != (b.row > p.row)) {
            const double x = (b.col - a.col) * (p.row - a.row) / (b.row - a.row) + a.col;
            if (p.col < x) inside = !inside;
        }
    }
    return inside;
}

}  // namespace polsar
