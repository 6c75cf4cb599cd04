#pragma once

#include <vector>

#include "polsar/detect.hpp"
#include "polsar/image.hpp"

namespace polsar {

struct PointD {
    double row = 0.0;
    double col = 0.0;
};

/// Midpoint line rasterization from p0 to p1 inclusive: an 8-connected chain
/// with exactly one pixel per step along the major axis. When the exact line
/// passes halfway between two minor-axis pixels, the step toward p1 is taken.
std::vector<PixelCoord> bresenham(PixelCoord p0, PixelCoord p1);

struct RayFan {
    PointD centroid;
    std::vector<PixelCoord> control_points;
    std::vector<std::vector<PixelCoord>> rays;  // centroid pixel -> control point

    int size() const { return static_cast<int>(control_points.size()); }

    /// Counter-clockwise angle from ray i to ray i+1 (cyclic), in radians.
    std::vector<double> angles() const;

    /// True when every consecutive angle is positive and they sum to a full turn.
    bool closes_region() const;
};

struct FanStrips {
    RayFan fan;
    std::vector<Strip> strips;  // strips[i] follows fan.rays[i]
};

/// Rasterizes one ray per control point from the (rounded) centroid and
/// extracts the image pixels along it. Requires at least 4 control points
/// and all points inside the image (OutOfBounds otherwise).
FanStrips cast_fan(PointD centroid, const std::vector<PixelCoord>& control_points,
                   const PolSarImage& image);

/// Boundary position between strip pixels j-1 and j (0-based), i.e. the
/// transition after the first j pixels.
PointD transition_point(const Strip& strip, int j_hat);

struct Contour {
    std::vector<PointD> transition_points;
    std::vector<PointD> control_points;  // B-spline coefficients
    std::vector<PointD> spline_samples;  // closed: front() == back()
};

/// Closed periodic quartic B-spline interpolating the points in order, on
/// uniform knots. Each span is sampled at least `samples_per_span` times and
/// densely enough that consecutive samples are under a pixel apart.
/// Throws DegenerateGeometry for fewer than 5 points, repeated consecutive
/// points, collinear input or a singular collocation system.
Contour fit_contour(const std::vector<PointD>& transition_points, int samples_per_span = 16);

/// Cardinal quartic B-spline, supported on [0, 5).
double quartic_bspline(double x);

struct FanDetection {
    FanStrips fan;
    std::vector<DetectionResult> results;  // one per ray
    Contour contour;
};

/// Full pipeline: cast the fan, detect the transition on every ray, fit the
/// closed contour through the transition points. Parallel execution spreads
/// rays over threads; the result matches the serial one.
FanDetection detect_contour(const PolSarImage& image, PointD centroid,
                            const std::vector<PixelCoord>& control_points, const DetectorSpec& detector,
                            int samples_per_span = 16, Execution execution = Execution::Serial);

/// Even-odd point-in-polygon test (polygon given as a closed or open ring).
bool inside_polygon(const std::vector<PointD>& ring, PointD p);

}  // namespace polsar
