#pragma once

#include <cstdint>
#include <vector>

#include "superpca/cube.hpp"

namespace superpca {

// Per-pixel class labels, 1..G; 0 marks unlabeled pixels.
struct LabelMap {
    int rows = 0;
    int cols = 0;
    std::vector<int> labels;

    LabelMap() = default;
    LabelMap(int rows_, int cols_, int fill = 0)
        : rows(rows_), cols(cols_), labels(static_cast<std::size_t>(rows_) * cols_, fill) {}

    int at(int row, int col) const { return labels[static_cast<std::size_t>(row) * cols + col]; }
};

// Realized train/test split over the labeled pixels (flat indices).
struct SampleSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::vector<int> excluded_classes;  // classes with < 2 labeled pixels
};

// Draws min(per_class, floor(class_size / 2)) training pixels per class,
// deterministically for a fixed seed; the remaining labeled pixels form the
// test set. Classes with fewer than two labeled pixels are excluded and
// reported. Throws for per_class < 1.
SampleSplit split_samples(const LabelMap& gt, int per_class, std::uint64_t seed);

// 1-nearest-neighbor with Euclidean distance; ties go to the smallest training
// index. Feature vectors are matrix columns. Throws on empty training set or
// dimension mismatch.
std::vector<int> nn_classify(const PixelMatrix& train, const std::vector<int>& train_labels,
                             const PixelMatrix& test);
std::vector<int> nn_classify_serial(const PixelMatrix& train, const std::vector<int>& train_labels,
                                    const PixelMatrix& test);

// One-vs-rest linear max-margin classifier (L2-regularized hinge loss).
struct LinearMarginModel {
    std::vector<int> classes;     // distinct labels, ascending
    int dim = 0;
    std::vector<double> weights;  // classes.size() x dim, row per class
    std::vector<double> bias;
};

// Deterministic epoch-wise subgradient descent on the averaged objective
//   min_w  1/(2 c_reg) ||w||^2 + (1/n) sum_i hinge(w; x_i, y_i).
// Each epoch takes one full-batch step, so the result is independent of sample
// order (duplicating the training set leaves the decision function unchanged).
// The seed parameter is reserved for stochastic variants and does not affect
// the result. Throws when fewer than two classes are present.
LinearMarginModel train_linear_margin(const PixelMatrix& feats, const std::vector<int>& labels,
                                      double c_reg, int epochs, std::uint64_t seed);
std::vector<int> classify_linear(const LinearMarginModel& model, const PixelMatrix& feats);

// averaged objective value at the model's current parameters (used by tests)
double linear_margin_objective(const LinearMarginModel& model, const PixelMatrix& feats,
                               const std::vector<int>& labels, double c_reg);

// One vote per classifier in the ensemble plus its voting strength.
struct VoteProfile {
    std::vector<int> labels;
    std::vector<double> weights;

    static VoteProfile equal(std::vector<int> labels);
};

// argmax_i N(i), N(i) = sum_j alpha_j * [l_j == i]; ties go to the smallest
// class id. Weights must sum to 1 within 1e-9 unless check_weight_sum is off.
int majority_vote(const VoteProfile& profile, bool check_weight_sum = true);

}  // namespace superpca
