#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "superpca/cube.hpp"
#include "superpca/linalg.hpp"
#include "superpca/segmentation.hpp"

namespace superpca {

// How region features are produced from the fitted basis.
//   Centered: y = W^T (x - region mean). Textbook PCA scores; region means are
//             removed, so features only carry within-region contrast.
//   Raw:      y = W^T x. The published mapping; the projected region mean
//             stays in the features, which is what makes regionwise reduction
//             effective for classification.
enum class ProjectionMode { Centered, Raw };

// Dimensionality-reduced cube, same band-sequential layout as HsiCube.
// Channel j of one region is that region's own j-th principal component;
// channels are NOT comparable across regions (a property of the method, not a
// bug). When a region has fewer samples than `channels`, its trailing channels
// are zero-filled.
struct ReducedCube {
    int rows = 0;
    int cols = 0;
    int channels = 0;
    std::vector<double> data;
    std::string method;  // superpca | global | square | cluster
    int region_count = 0;
    ProjectionMode mode = ProjectionMode::Centered;

    double& at(int channel, int row, int col) {
        return data[static_cast<std::size_t>(channel) * rows * cols +
                    static_cast<std::size_t>(row) * cols + col];
    }
    double at(int channel, int row, int col) const {
        return data[static_cast<std::size_t>(channel) * rows * cols +
                    static_cast<std::size_t>(row) * cols + col];
    }
};

// Fits an independent PCA per region (d_k = min(d, n_k, L) kept channels) and
// reassembles the reduced cube. Region fits run in parallel; the output does
// not depend on thread count.
ReducedCube superpca_reduce(const HsiCube& cube, const RegionMap& map, int dim,
                            ProjectionMode mode = ProjectionMode::Centered,
                            std::string_view method_tag = "superpca");
ReducedCube superpca_reduce_serial(const HsiCube& cube, const RegionMap& map, int dim,
                                   ProjectionMode mode = ProjectionMode::Centered,
                                   std::string_view method_tag = "superpca");

// One basis fitted on all pixels. Bit-identical to superpca_reduce with the
// trivial one-region map.
ReducedCube global_pca_reduce(const HsiCube& cube, int dim,
                              ProjectionMode mode = ProjectionMode::Centered);

struct RegionRatio {
    int region = 0;
    double ratio = 0.0;
};

// lambda_1/lambda_2 per region, the diagnostic behind regionwise reduction:
// homogeneous regions concentrate variance in their first component. Regions
// with fewer than two pixels or zero covariance are omitted.
struct RegionRatioReport {
    std::vector<RegionRatio> regions;
    double global_ratio = 0.0;
    double mean_region_ratio = 0.0;
};

RegionRatioReport region_eigen_ratios(const HsiCube& cube, const RegionMap& map);

// View of the reduced data as a plain cube (channels become bands).
HsiCube to_cube(const ReducedCube& r);

}  // namespace superpca
