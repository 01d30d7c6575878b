#pragma once

#include <cstddef>
#include <vector>

namespace superpca {

// Hyperspectral cube in band-sequential storage: each band is a contiguous
// rows*cols plane, data[band*rows*cols + row*cols + col]. Pixels are addressed
// by the row-major flat index p = row*cols + col; every module in this library
// relies on that one ordering convention.
struct HsiCube {
    int rows = 0;
    int cols = 0;
    int bands = 0;
    std::vector<double> data;

    HsiCube() = default;
    HsiCube(int rows_, int cols_, int bands_, double fill = 0.0);

    std::size_t pixel_count() const { return static_cast<std::size_t>(rows) * cols; }
    std::size_t value_count() const { return pixel_count() * bands; }

    double& at(int band, int row, int col) {
        return data[plane() * band + static_cast<std::size_t>(row) * cols + col];
    }
    double at(int band, int row, int col) const {
        return data[plane() * band + static_cast<std::size_t>(row) * cols + col];
    }

    std::size_t plane() const { return static_cast<std::size_t>(rows) * cols; }

    // true when dimensions are positive, the buffer has the declared size and
    // every value is finite
    bool valid() const;
};

// bands x pixels matrix, one column per pixel. Columns are contiguous
// (data[p*bands + b]) so a pixel spectrum can be handed around as a span.
// Column p corresponds to cube pixel with flat index p.
struct PixelMatrix {
    int bands = 0;
    std::size_t pixels = 0;
    std::vector<double> data;

    PixelMatrix() = default;
    PixelMatrix(int bands_, std::size_t pixels_, double fill = 0.0);

    double* col(std::size_t p) { return data.data() + p * bands; }
    const double* col(std::size_t p) const { return data.data() + p * bands; }

    double& at(int band, std::size_t p) { return data[p * bands + band]; }
    double at(int band, std::size_t p) const { return data[p * bands + band]; }
};

// Single-channel image normalized to [0,1]; the segmentation input.
struct GuideImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;  // row-major

    double at(int row, int col) const {
        return values[static_cast<std::size_t>(row) * cols + col];
    }
};

// Cube -> matrix reshape. Exact inverse of cube_from_matrix.
PixelMatrix reshape_cube(const HsiCube& cube);

// Matrix -> cube reshape; bands becomes the channel count.
HsiCube cube_from_matrix(const PixelMatrix& m, int rows, int cols);

// Projects every pixel onto the first global principal component and min-max
// normalizes the result to [0,1] (all zeros when the projection is constant).
// The eigenvector sign is fixed so its largest-magnitude entry is positive.
GuideImage first_pc_image(const HsiCube& cube);

}  // namespace superpca
