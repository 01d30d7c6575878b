#include "superpca/cube.hpp"

#include <cmath>
#include <stdexcept>

#include "superpca/linalg.hpp"

namespace superpca {

HsiCube::HsiCube(int rows_, int cols_, int bands_, double fill)
    : rows(rows_), cols(cols_), bands(bands_) {
    if (rows_ < 1 || cols_ < 1 || bands_ < 1)
        throw std::invalid_argument("HsiCube: dimensions must be positive");
    data.assign(value_count(), fill);
}

bool HsiCube::valid() const {
    if (rows < 1 || cols < 1 || bands < 1) return false;
    if (data.size() != value_count()) return false;
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

PixelMatrix::PixelMatrix(int bands_, std::size_t pixels_, double fill)
    : bands(bands_), pixels(pixels_), data(static_cast<std::size_t>(bands_) * pixels_, fill) {}

PixelMatrix reshape_cube(const HsiCube& cube) {
    PixelMatrix m(cube.bands, cube.pixel_count());
    const std::size_t plane = cube.plane();
    for (std::size_t p = 0; p < m.pixels; ++p) {
        double* col = m.col(p);
        for (int b = 0; b < cube.bands; ++b) col[b] = cube.data[plane * b + p];
    }
    return m;
}

HsiCube cube_from_matrix(const PixelMatrix& m, int rows, int cols) {
    if (static_cast<std::size_t>(rows) * cols != m.pixels)
        throw std::invalid_argument("cube_from_matrix: rows*cols != pixel count");
    HsiCube cube(rows, cols, m.bands);
    const std::size_t plane = cube.plane();
    for (std::size_t p = 0; p < m.pixels; ++p) {
        const double* col = m.col(p);
        for (int b = 0; b < m.bands; ++b) cube.data[plane * b + p] = col[b];
    }
    return cube;
}

GuideImage first_pc_image(const HsiCube& cube) {
    const PixelMatrix m = reshape_cube(cube);
    const ProjectionBasis basis = fit_pca(m, 1);
    const PixelMatrix scores = project(basis, m);

    GuideImage g;
    g.rows = cube.rows;
    g.cols = cube.cols;
    g.values.assign(scores.data.begin(), scores.data.end());

    double lo = g.values[0], hi = g.values[0];
    for (double v : g.values) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    if (hi > lo) {
        const double span = hi - lo;
        for (double& v : g.values) v = (v - lo) / span;
    } else {
        for (double& v : g.values) v = 0.0;
    }
    return g;
}

}  // namespace superpca
