#pragma once

// PolSAR covariance images, the PSARC1 container and Pauli RGB rendering.
//
// PSARC1 layout: one ASCII header line
//     PSARC1 <width> <height> <m> <L>\n
// followed by width*height pixels in row-major order. Each pixel is m*m
// little-endian IEEE-754 doubles: the m diagonal entries, then the (re, im)
// pairs of the strict upper triangle in row-major order.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "polsar/linalg.hpp"

namespace polsar {

struct PolSarImage {
    int width = 0;
    int height = 0;
    int dim = 0;
    double looks = 0.0;
    std::vector<HermitianMatrix> pixels;  // row-major

    PolSarImage() = default;
    PolSarImage(int width, int height, int dim, double looks);

    bool contains(int row, int col) const {
        return row >= 0 && col >= 0 && row < height && col < width;
    }
    HermitianMatrix& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
    const HermitianMatrix& at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
};

void write_image(std::ostream& out, const PolSarImage& image);
void write_image(const std::filesystem::path& path, const PolSarImage& image);

/// Throws BadMagic, TruncatedFile, HeaderMismatch.
PolSarImage read_image(std::istream& in);
PolSarImage read_image(const std::filesystem::path& path);

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // interleaved RGB, row-major

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::uint8_t* pixel(int row, int col) {
        return &data[(static_cast<std::size_t>(row) * width + col) * 3];
    }
    const std::uint8_t* pixel(int row, int col) const {
        return &data[(static_cast<std::size_t>(row) * width + col) * 3];
    }
};

/// Pauli composite of a lexicographic (HH, HV, VV) covariance image:
/// R = C11 + C33 + 2 Re C13, G = C22, B = C11 + C33 - 2 Re C13. Each channel is
/// clipped at its own 99th percentile and mapped to 8 bits through a square
/// root (power to amplitude). Throws WrongDim unless m = 3.
RgbImage render_pauli(const PolSarImage& image);

/// Binary PPM (P6).
void write_ppm(const std::filesystem::path& path, const RgbImage& image);

}  // namespace polsar
