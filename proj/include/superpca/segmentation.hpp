#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "superpca/cube.hpp"

namespace superpca {

struct GraphEdge {
    int u = 0;  // flat pixel indices, u < v
    int v = 0;
    double weight = 0.0;
};

// 4-connected lattice over the guide image. Edge weights are Gaussian
// intensity similarities globally normalized to sum 1, so the random-walk
// bookkeeping of the entropy rate objective works directly on them.
// vertex_strength[i] is the total incident weight w_i; mu_i = w_i / 2.
struct SegmentationGraph {
    int rows = 0;
    int cols = 0;
    std::vector<GraphEdge> edges;
    std::vector<double> vertex_strength;
    double sigma_used = 0.0;

    std::size_t vertex_count() const { return static_cast<std::size_t>(rows) * cols; }
};

// Exhaustive pixel partition. Labels are compact region ids 0..region_count-1,
// assigned in order of first appearance in the row-major pixel scan. connected
// is true when every region is 4-connected (ERS, squares), false for feature
// clustering.
struct RegionMap {
    int rows = 0;
    int cols = 0;
    int region_count = 0;
    bool connected = false;
    std::vector<int> labels;

    int at(int row, int col) const { return labels[static_cast<std::size_t>(row) * cols + col]; }
};

// Builds the lattice graph. sigma empty = auto (standard deviation of all
// neighbor intensity differences, floored at 1e-6). Throws on 1x1 images and
// non-positive sigma.
SegmentationGraph build_graph(const GuideImage& g, std::optional<double> sigma = {});

struct ErsResult {
    RegionMap map;
    std::vector<std::size_t> selected_edges;  // indices into graph.edges
    double objective = 0.0;                   // H(A) + alpha * B(A) of the selection
    double alpha = 0.0;                       // value actually used
};

// Greedy maximization of the entropy rate objective H(A) + alpha * B(A):
// start from the empty selection, repeatedly add the edge of largest marginal
// gain that merges two distinct components (lazy max-heap + union-find), stop
// at exactly `regions` components. alpha empty = auto, the ratio of the mean
// initial H gain to the mean initial B gain. Ties break on the smallest edge
// index; the result is deterministic.
ErsResult ers_segment_detailed(const SegmentationGraph& g, int regions,
                               std::optional<double> alpha = {});
RegionMap ers_segment(const SegmentationGraph& g, int regions,
                      std::optional<double> alpha = {});

// Evaluates H(A) + alpha * B(A) for an arbitrary edge selection.
double ers_objective(const SegmentationGraph& g, const std::vector<std::size_t>& selected,
                     double alpha);

// Axis-aligned block tiling: rows split into round(sqrt(S*M/N)) bands (clamped
// to [1, min(M, S)]), columns into ceil(S / row_bands) bands (clamped to N).
// The actual region count is the band product, reported in the map.
RegionMap square_partition(int rows, int cols, int regions);

// Lloyd iterations from a k-means++ style seeded start; deterministic for a
// fixed seed. Stops on unchanged assignments or max_iter. Empty clusters are
// reseeded to the point farthest from its assigned centroid. Labels are
// compacted to first-appearance order, connectivity flag false.
RegionMap kmeans_cluster(const PixelMatrix& m, int rows, int cols, int k,
                         std::uint64_t seed, int max_iter = 100);

}  // namespace superpca
