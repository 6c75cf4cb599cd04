#include "polsar/image.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "polsar/error.hpp"

namespace polsar {

PolSarImage::PolSarImage(int w, int h, int m, double l)
    : width(w), height(h), dim(m), looks(l),
      pixels(static_cast<std::size_t>(w) * h, HermitianMatrix(m)) {}

namespace {

constexpr const char* kMagic = "PSARC1";

void put_double(std::ostream& out, double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_double(const unsigned char* bytes) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

}  // namespace

void write_image(std::ostream& out, const PolSarImage& image) {
    const int m = image.dim;
    if (image.pixels.size() != static_cast<std::size_t>(image.width) * image.height) {
        throw HeaderMismatch("pixel count does not match image size");
    }
    out << fmt::format("{} {} {} {} {}\n", kMagic, image.width, image.height, m, image.looks);
    for (const auto& z : image.pixels) {
        if (z.dim() != m) throw HeaderMismatch("pixel dimension differs from image dimension");
        for (int i = 0; i < m; ++i) put_double(out, z(i, i).real());
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                put_double(out, z(i, j).real());
                put_double(out, z(i, j).imag());
            }
    }
    if (!out) throw TruncatedFile("write failed");
}

void write_image(const std::filesystem::path& path, const PolSarImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TruncatedFile("cannot open " + path.string() + " for writing");
    write_image(out, image);
}

PolSarImage read_image(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw TruncatedFile("missing PSARC1 header");
    std::istringstream hs(header);
    hs.imbue(std::locale::classic());
    std::string magic;
    hs >> magic;
    if (magic != kMagic) throw BadMagic("not a PSARC1 file (magic '" + magic + "')");
    long long width = 0, height = 0;
    int m = 0;
    double looks = 0.0;
    if (!(hs >> width >> height >> m >> looks)) throw HeaderMismatch("malformed PSARC1 header");
    std::string extra;
    if (hs >> extra) throw HeaderMismatch("trailing fields in PSARC1 header");
    if (width < 1 || height < 1 || m < 1 || m > kMaxDim) {
        throw HeaderMismatch(fmt::format("bad PSARC1 geometry {}x{} m={}", width, height, m));
    }
    if (!(looks > m - 1) || !std::isfinite(looks)) {
        throw HeaderMismatch(fmt::format("looks {} must exceed m - 1", looks));
    }

    PolSarImage image(static_cast<int>(width), static_cast<int>(height), m, looks);
    const std::size_t per_pixel = static_cast<std::size_t>(m) * m * 8;
    std::vector<unsigned char> buf(per_pixel);
    for (auto& z : image.pixels) {
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(per_pixel));
        if (static_cast<std::size_t>(in.gcount()) != per_pixel) {
            throw TruncatedFile("PSARC1 pixel data ends early");
        }
        const unsigned char* p = buf.data();
        for (int i = 0; i < m; ++i, p += 8) z.set(i, i, get_double(p));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j, p += 16) {
                z.set(i, j, Complex(get_double(p), get_double(p + 8)));
            }
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw HeaderMismatch("PSARC1 file longer than its header declares");
    }
    return image;
}

PolSarImage read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TruncatedFile("cannot open " + path.string());
    return read_image(in);
}

RgbImage render_pauli(const PolSarImage& image) {
    if (image.dim != 3) throw WrongDim("Pauli rendering needs (HH, HV, VV) covariances");
    const std::size_t n = image.pixels.size();
    std::vector<double> chan[3];
    for (auto& c : chan) c.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& z = image.pixels[k];
        const double co = z(0, 0).real() + z(2, 2).real();
        const double cross = 2.0 * z(0, 2).real();
        chan[0][k] = std::max(co + cross, 0.0);
        chan[1][k] = std::max(z(1, 1).real(), 0.0);
        chan[2][k] = std::max(co - cross, 0.0);
    }
    RgbImage out(image.width, image.height);
    for (int c = 0; c < 3; ++c) {
        std::vector<double> sorted = chan[c];
        const std::size_t q = static_cast<std::size_t>(0.99 * static_cast<double>(n - 1));
        std::nth_element(sorted.begin(), sorted.begin() + q, sorted.end());
        const double clip = sorted[q];
        for (std::size_t k = 0; k < n; ++k) {
            const double v = clip > 0.0 ? std::min(chan[c][k], clip) / clip : 0.0;
            out.data[k * 3 + c] = static_cast<std::uint8_t>(std::lround(255.0 * std::sqrt(v)));
        }
    }
    return out;
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TruncatedFile("cannot open " + path.string() + " for writing");
    out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.data.data()),
              static_cast<std::streamsize>(image.data.size()));
}

}  // namespace polsar
