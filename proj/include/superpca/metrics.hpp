#pragma once

#include <vector>

namespace superpca {

// G x G count table; counts(i, j) = test pixels of true class i predicted as
// class j, with classes numbered 1..G externally.
struct ConfusionMatrix {
    int order = 0;
    std::vector<long long> counts;
    long long total = 0;

    long long& at(int true_class, int pred_class) {
        return counts[static_cast<std::size_t>(true_class - 1) * order + (pred_class - 1)];
    }
    long long at(int true_class, int pred_class) const {
        return counts[static_cast<std::size_t>(true_class - 1) * order + (pred_class - 1)];
    }

    long long row_sum(int true_class) const;
    long long col_sum(int pred_class) const;
};

// Tallies labels in 1..order. order 0 infers max(truth, pred). Throws on
// length mismatch or out-of-range labels.
ConfusionMatrix confusion(const std::vector<int>& truth, const std::vector<int>& pred,
                          int order = 0);

// Overall accuracy: trace / n.
double oa(const ConfusionMatrix& cm);

// Average accuracy: mean per-class recall. Every true class must be non-empty.
double aa(const ConfusionMatrix& cm);

// Cohen's kappa: (p_o - p_e) / (1 - p_e), defined as 0 when p_e == 1.
double kappa(const ConfusionMatrix& cm);

// recall per true class, 1-based class c at index c-1
std::vector<double> per_class_recall(const ConfusionMatrix& cm);

}  // namespace superpca
