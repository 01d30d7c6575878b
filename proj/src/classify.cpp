#include "superpca/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "superpca/rng.hpp"

namespace superpca {

SampleSplit split_samples(const LabelMap& gt, int per_class, std::uint64_t seed) {
    if (per_class < 1) throw std::invalid_argument("split_samples: per-class count must be >= 1");

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t p = 0; p < gt.labels.size(); ++p)
        if (gt.labels[p] > 0) by_class[gt.labels[p]].push_back(p);

    SampleSplit split;
    Rng rng(seed);
    for (auto& [cls, members] : by_class) {
        if (members.size() < 2) {
            split.excluded_classes.push_back(cls);
            continue;
        }
        // at most half of a class may be training
        const std::size_t take =
            std::min<std::size_t>(static_cast<std::size_t>(per_class), members.size() / 2);
        rng.shuffle(members);
        for (std::size_t i = 0; i < members.size(); ++i)
            (i < take ? split.train : split.test).push_back(members[i]);
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

namespace {

int nearest_label(const PixelMatrix& train, const std::vector<int>& labels, const double* x) {
    const int dim = train.bands;
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t t = 0; t < train.pixels; ++t) {
        const double* y = train.col(t);
        double d = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double diff = x[i] - y[i];
            d += diff * diff;
        }
        if (best_d < 0.0 || d < best_d) {  // strict <: ties keep the smallest index
            best_d = d;
            best = t;
        }
    }
    return labels[best];
}

void check_nn_args(const PixelMatrix& train, const std::vector<int>& train_labels,
                   const PixelMatrix& test) {
    if (train.pixels == 0) throw std::invalid_argument("nn_classify: empty training set");
    if (train_labels.size() != train.pixels)
        throw std::invalid_argument("nn_classify: label count does not match training set");
    if (test.bands != train.bands)
        throw std::invalid_argument("nn_classify: feature lengths disagree");
}

}  // namespace

std::vector<int> nn_classify(const PixelMatrix& train, const std::vector<int>& train_labels,
                             const PixelMatrix& test) {
    check_nn_args(train, train_labels, test);
    std::vector<int> out(test.pixels);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(test.pixels);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p)
        out[p] = nearest_label(train, train_labels, test.col(p));
    return out;
}

std::vector<int> nn_classify_serial(const PixelMatrix& train, const std::vector<int>& train_labels,
                                    const PixelMatrix& test) {
    check_nn_args(train, train_labels, test);
    std::vector<int> out(test.pixels);
    for (std::size_t p = 0; p < test.pixels; ++p)
        out[p] = nearest_label(train, train_labels, test.col(p));
    return out;
}

namespace {

std::vector<int> distinct_classes(const std::vector<int>& labels) {
    std::vector<int> classes(labels);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

}  // namespace

LinearMarginModel train_linear_margin(const PixelMatrix& feats, const std::vector<int>& labels,
                                      double c_reg, int epochs, std::uint64_t /*seed*/) {
    if (!(c_reg > 0.0)) throw std::invalid_argument("train_linear_margin: c_reg must be positive");
    if (epochs < 1) throw std::invalid_argument("train_linear_margin: epochs must be >= 1");
    if (labels.size() != feats.pixels)
        throw std::invalid_argument("train_linear_margin: label count does not match features");

    LinearMarginModel model;
    model.classes = distinct_classes(labels);
    if (model.classes.size() < 2)
        throw std::invalid_argument("train_linear_margin: need at least two classes");
    model.dim = feats.bands;
    model.weights.assign(model.classes.size() * static_cast<std::size_t>(model.dim), 0.0);
    model.bias.assign(model.classes.size(), 0.0);

    const double lambda = 1.0 / c_reg;
    const double inv_n = 1.0 / static_cast<double>(feats.pixels);
    std::vector<double> grad_w(model.dim);

    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        double* w = model.weights.data() + c * model.dim;
        double& b = model.bias[c];
        for (int epoch = 0; epoch < epochs; ++epoch) {
            // full-batch subgradient of (lambda/2)||w||^2 + mean hinge
            std::fill(grad_w.begin(), grad_w.end(), 0.0);
            double grad_b = 0.0;
            for (std::size_t p = 0; p < feats.pixels; ++p) {
                const double y = labels[p] == model.classes[c] ? 1.0 : -1.0;
                const double* x = feats.col(p);
                double score = b;
                for (int i = 0; i < model.dim; ++i) score += w[i] * x[i];
                if (y * score < 1.0) {
                    for (int i = 0; i < model.dim; ++i) grad_w[i] -= y * x[i];
                    grad_b -= y;
                }
            }
            const double step = 1.0 / (lambda * (epoch + 1.0));
            for (int i = 0; i < model.dim; ++i)
                w[i] -= step * (lambda * w[i] + grad_w[i] * inv_n);
            b -= step * grad_b * inv_n;
        }
    }
    return model;
}

std::vector<int> classify_linear(const LinearMarginModel& model, const PixelMatrix& feats) {
    if (feats.bands != model.dim)
        throw std::invalid_argument("classify_linear: feature lengths disagree");
    std::vector<int> out(feats.pixels);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(feats.pixels);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) {
        const double* x = feats.col(p);
        std::size_t best = 0;
        double best_score = 0.0;
        for (std::size_t c = 0; c < model.classes.size(); ++c) {
            const double* w = model.weights.data() + c * model.dim;
            double score = model.bias[c];
            for (int i = 0; i < model.dim; ++i) score += w[i] * x[i];
            if (c == 0 || score > best_score) {  // ties keep the smallest class id
                best_score = score;
                best = c;
            }
        }
        out[p] = model.classes[best];
    }
    return out;
}

double linear_margin_objective(const LinearMarginModel& model, const PixelMatrix& feats,
                               const std::vector<int>& labels, double c_reg) {
    const double lambda = 1.0 / c_reg;
    double total = 0.0;
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        const double* w = model.weights.data() + c * model.dim;
        double reg = 0.0;
        for (int i = 0; i < model.dim; ++i) reg += w[i] * w[i];
        double hinge = 0.0;
        for (std::size_t p = 0; p < feats.pixels; ++p) {
            const double y = labels[p] == model.classes[c] ? 1.0 : -1.0;
            const double* x = feats.col(p);
            double score = model.bias[c];
            for (int i = 0; i < model.dim; ++i) score += w[i] * x[i];
            hinge += std::max(0.0, 1.0 - y * score);
        }
        total += 0.5 * lambda * reg + hinge / static_cast<double>(feats.pixels);
    }
    return total;
}

VoteProfile VoteProfile::equal(std::vector<int> labels) {
    VoteProfile profile;
    profile.weights.assign(labels.size(), 1.0 / static_cast<double>(labels.size()));
    profile.labels = std::move(labels);
    return profile;
}

int majority_vote(const VoteProfile& profile, bool check_weight_sum) {
    if (profile.labels.empty()) throw std::invalid_argument("majority_vote: no votes");
    if (profile.weights.size() != profile.labels.size())
        throw std::invalid_argument("majority_vote: weight count does not match votes");
    if (check_weight_sum) {
        double sum = 0.0;
        for (double w : profile.weights) sum += w;
        if (std::fabs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("majority_vote: weights must sum to 1");
    }

    std::map<int, double> tally;
    for (std::size_t j = 0; j < profile.labels.size(); ++j)
        tally[profile.labels[j]] += profile.weights[j];

    int best = tally.begin()->first;
    double best_count = tally.begin()->second;
    for (const auto& [label, count] : tally)
        if (count > best_count) {  // strict >: ties keep the smallest class id
            best_count = count;
            best = label;
        }
    return best;
}

}  // namespace superpca
