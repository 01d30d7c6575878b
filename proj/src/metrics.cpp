#include "superpca/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace superpca {

long long ConfusionMatrix::row_sum(int true_class) const {
    long long sum = 0;
    for (int j = 1; j <= order; ++j) sum += at(true_class, j);
    return sum;
}

long long ConfusionMatrix::col_sum(int pred_class) const {
    long long sum = 0;
    for (int i = 1; i <= order; ++i) sum += at(i, pred_class);
    return sum;
}

ConfusionMatrix confusion(const std::vector<int>& truth, const std::vector<int>& pred, int order) {
    if (truth.size() != pred.size())
        throw std::invalid_argument("confusion: label vectors differ in length");
    if (order == 0) {
        for (int v : truth) order = std::max(order, v);
        for (int v : pred) order = std::max(order, v);
    }
    if (order < 1) throw std::invalid_argument("confusion: no classes");

    ConfusionMatrix cm;
    cm.order = order;
    cm.counts.assign(static_cast<std::size_t>(order) * order, 0);
    cm.total = static_cast<long long>(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 1 || truth[i] > order || pred[i] < 1 || pred[i] > order)
            throw std::invalid_argument("confusion: label outside 1..order");
        ++cm.at(truth[i], pred[i]);
    }
    return cm;
}

double oa(const ConfusionMatrix& cm) {
    if (cm.total < 1) throw std::invalid_argument("oa: empty confusion matrix");
    long long trace = 0;
    for (int i = 1; i <= cm.order; ++i) trace += cm.at(i, i);
    return static_cast<double>(trace) / static_cast<double>(cm.total);
}

double aa(const ConfusionMatrix& cm) {
    if (cm.total < 1) throw std::invalid_argument("aa: empty confusion matrix");
    double sum = 0.0;
    for (int i = 1; i <= cm.order; ++i) {
        const long long row = cm.row_sum(i);
        if (row == 0) throw std::invalid_argument("aa: true class with no samples");
        sum += static_cast<double>(cm.at(i, i)) / static_cast<double>(row);
    }
    return sum / static_cast<double>(cm.order);
}

double kappa(const ConfusionMatrix& cm) {
    if (cm.total < 1) throw std::invalid_argument("kappa: empty confusion matrix");
    const double n = static_cast<double>(cm.total);
    double expected = 0.0;
    for (int i = 1; i <= cm.order; ++i)
        expected += static_cast<double>(cm.row_sum(i)) * static_cast<double>(cm.col_sum(i));
    expected /= n * n;
    if (expected == 1.0) return 0.0;  // degenerate single-class case
    return (oa(cm) - expected) / (1.0 - expected);
}

std::vector<double> per_class_recall(const ConfusionMatrix& cm) {
    std::vector<double> recall(cm.order, 0.0);
    for (int i = 1; i <= cm.order; ++i) {
        const long long row = cm.row_sum(i);
        recall[i - 1] = row == 0 ? 0.0 : static_cast<double>(cm.at(i, i)) / static_cast<double>(row);
    }
    return recall;
}

}  // namespace superpca
