#include "superpca/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "superpca/rng.hpp"

namespace superpca {

namespace {

// one output spectrum: Gaussian spectral-similarity weights over the truncated
// window, renormalized to sum 1
void filter_pixel(const HsiCube& in, int row, int col, int radius, double inv_two_sigma_sq,
                  HsiCube& out) {
    const int L = in.bands;
    const std::size_t plane = in.plane();
    const std::size_t center = static_cast<std::size_t>(row) * in.cols + col;

    double weight_sum = 0.0;
    std::vector<double> acc(L, 0.0);
    for (int dr = -radius; dr <= radius; ++dr) {
        const int r = row + dr;
        if (r < 0 || r >= in.rows) continue;
        for (int dc = -radius; dc <= radius; ++dc) {
            const int c = col + dc;
            if (c < 0 || c >= in.cols) continue;
            const std::size_t p = static_cast<std::size_t>(r) * in.cols + c;
            double dist_sq = 0.0;
            for (int b = 0; b < L; ++b) {
                const double d = in.data[plane * b + center] - in.data[plane * b + p];
                dist_sq += d * d;
            }
            const double w = std::exp(-dist_sq * inv_two_sigma_sq);
            weight_sum += w;
            for (int b = 0; b < L; ++b) acc[b] += w * in.data[plane * b + p];
        }
    }
    for (int b = 0; b < L; ++b) out.data[plane * b + center] = acc[b] / weight_sum;
}

void check_filter_args(int radius, double sigma_f) {
    if (radius < 0) throw std::invalid_argument("weighted_mean_filter: radius must be >= 0");
    if (!(sigma_f > 0.0)) throw std::invalid_argument("weighted_mean_filter: sigma_f must be positive");
}

}  // namespace

HsiCube weighted_mean_filter(const HsiCube& cube, int radius, double sigma_f) {
    check_filter_args(radius, sigma_f);
    HsiCube out(cube.rows, cube.cols, cube.bands);
    const double inv = std::isinf(sigma_f) ? 0.0 : 1.0 / (2.0 * sigma_f * sigma_f);
    const std::ptrdiff_t pixels = static_cast<std::ptrdiff_t>(cube.pixel_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < pixels; ++p)
        filter_pixel(cube, static_cast<int>(p / cube.cols), static_cast<int>(p % cube.cols),
                     radius, inv, out);
    return out;
}

HsiCube weighted_mean_filter_serial(const HsiCube& cube, int radius, double sigma_f) {
    check_filter_args(radius, sigma_f);
    HsiCube out(cube.rows, cube.cols, cube.bands);
    const double inv = std::isinf(sigma_f) ? 0.0 : 1.0 / (2.0 * sigma_f * sigma_f);
    for (int r = 0; r < cube.rows; ++r)
        for (int c = 0; c < cube.cols; ++c) filter_pixel(cube, r, c, radius, inv, out);
    return out;
}

double auto_filter_sigma(const HsiCube& cube, int radius) {
    if (radius < 0) throw std::invalid_argument("auto_filter_sigma: radius must be >= 0");
    const std::size_t pixels = cube.pixel_count();
    // 1% of window centers, but never fewer than 64 (or the whole image)
    const std::size_t samples = std::max(pixels / 100, std::min<std::size_t>(pixels, 64));
    const std::size_t stride = std::max<std::size_t>(1, pixels / samples);
    const std::size_t plane = cube.plane();

    std::vector<double> distances;
    for (std::size_t p = 0; p < pixels; p += stride) {
        const int row = static_cast<int>(p / cube.cols);
        const int col = static_cast<int>(p % cube.cols);
        for (int dr = -radius; dr <= radius; ++dr) {
            const int r = row + dr;
            if (r < 0 || r >= cube.rows) continue;
            for (int dc = -radius; dc <= radius; ++dc) {
                const int c = col + dc;
                if (c < 0 || c >= cube.cols) continue;
                if (dr == 0 && dc == 0) continue;
                const std::size_t q = static_cast<std::size_t>(r) * cube.cols + c;
                double dist_sq = 0.0;
                for (int b = 0; b < cube.bands; ++b) {
                    const double d = cube.data[plane * b + p] - cube.data[plane * b + q];
                    dist_sq += d * d;
                }
                distances.push_back(std::sqrt(dist_sq));
            }
        }
    }
    if (distances.empty()) return 1e-12;
    std::nth_element(distances.begin(), distances.begin() + distances.size() / 2,
                     distances.end());
    const double median = distances[distances.size() / 2];
    return std::max(median, 1e-12);
}

HsiCube add_awgn(const HsiCube& cube, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("add_awgn: sigma must be >= 0");
    HsiCube out = cube;
    if (sigma == 0.0) return out;
    Rng rng(seed);
    for (double& v : out.data) v += sigma * rng.next_gaussian();
    return out;
}

}  // namespace superpca
