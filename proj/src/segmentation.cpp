#include "superpca/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "superpca/rng.hpp"

namespace superpca {

namespace {

inline double entropy_term(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

// union-find with path halving
struct DisjointSets {
    std::vector<int> parent;
    std::vector<int> size;

    explicit DisjointSets(int n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

// Marginal gain bookkeeping for the greedy selection. The random walk keeps
// its stationary distribution mu_i = w_i / 2 because unselected edge mass sits
// on self-loops, so selecting edge (u,v) only perturbs the entropy
// contributions of u and v.
struct ErsState {
    const SegmentationGraph& g;
    std::vector<double> selected_mass;  // a_i, selected incident weight per vertex
    DisjointSets sets;
    double total_pixels;

    explicit ErsState(const SegmentationGraph& graph)
        : g(graph),
          selected_mass(graph.vertex_count(), 0.0),
          sets(static_cast<int>(graph.vertex_count())),
          total_pixels(static_cast<double>(graph.vertex_count())) {}

    // change of vertex i's entropy contribution when edge weight w is selected
    double vertex_gain(int i, double w) const {
        const double wi = g.vertex_strength[i];
        const double mu = wi / 2.0;
        const double loop_before = 1.0 - selected_mass[i] / wi;
        const double loop_after = loop_before - w / wi;
        return mu * (entropy_term(w / wi) + entropy_term(loop_after) - entropy_term(loop_before));
    }

    double entropy_gain(const GraphEdge& e) const {
        return vertex_gain(e.u, e.weight) + vertex_gain(e.v, e.weight);
    }

    // balancing term: component-size entropy minus component count
    double balance_gain(int root_u, int root_v) const {
        const double p1 = sets.size[root_u] / total_pixels;
        const double p2 = sets.size[root_v] / total_pixels;
        return entropy_term(p1 + p2) - entropy_term(p1) - entropy_term(p2) + 1.0;
    }

    double gain(std::size_t edge_index, double alpha) {
        const GraphEdge& e = g.edges[edge_index];
        const int ru = sets.find(e.u);
        const int rv = sets.find(e.v);
        if (ru == rv) return -1.0;  // cycle edge, never selectable
        return entropy_gain(e) + alpha * balance_gain(ru, rv);
    }

    void select(std::size_t edge_index) {
        const GraphEdge& e = g.edges[edge_index];
        selected_mass[e.u] += e.weight;
        selected_mass[e.v] += e.weight;
        sets.unite(e.u, e.v);
    }
};

RegionMap labels_from_components(DisjointSets& sets, int rows, int cols, bool connected) {
    RegionMap map;
    map.rows = rows;
    map.cols = cols;
    map.connected = connected;
    const std::size_t n = static_cast<std::size_t>(rows) * cols;
    map.labels.assign(n, -1);
    std::vector<int> root_label(n, -1);
    int next = 0;
    for (std::size_t p = 0; p < n; ++p) {
        const int root = sets.find(static_cast<int>(p));
        if (root_label[root] < 0) root_label[root] = next++;
        map.labels[p] = root_label[root];
    }
    map.region_count = next;
    return map;
}

}  // namespace

SegmentationGraph build_graph(const GuideImage& g, std::optional<double> sigma) {
    const std::size_t pixels = static_cast<std::size_t>(g.rows) * g.cols;
    if (pixels < 2) throw std::invalid_argument("build_graph: image must have at least 2 pixels");
    if (sigma && !(*sigma > 0.0))
        throw std::invalid_argument("build_graph: sigma must be positive");

    SegmentationGraph graph;
    graph.rows = g.rows;
    graph.cols = g.cols;
    graph.edges.reserve(static_cast<std::size_t>(g.rows) * (g.cols - 1) +
                        static_cast<std::size_t>(g.rows - 1) * g.cols);

    std::vector<double> diffs;
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            const int p = r * g.cols + c;
            if (c + 1 < g.cols) {
                graph.edges.push_back({p, p + 1, 0.0});
                diffs.push_back(g.at(r, c) - g.at(r, c + 1));
            }
            if (r + 1 < g.rows) {
                graph.edges.push_back({p, p + g.cols, 0.0});
                diffs.push_back(g.at(r, c) - g.at(r + 1, c));
            }
        }
    }

    double sigma_g;
    if (sigma) {
        sigma_g = *sigma;
    } else {
        double mean = 0.0;
        for (double d : diffs) mean += d;
        mean /= static_cast<double>(diffs.size());
        double var = 0.0;
        for (double d : diffs) var += (d - mean) * (d - mean);
        var /= static_cast<double>(diffs.size());
        sigma_g = std::max(std::sqrt(var), 1e-6);
    }
    graph.sigma_used = sigma_g;

    const double inv = 1.0 / (2.0 * sigma_g * sigma_g);
    double total = 0.0;
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        graph.edges[i].weight = std::exp(-diffs[i] * diffs[i] * inv);
        total += graph.edges[i].weight;
    }
    graph.vertex_strength.assign(pixels, 0.0);
    for (GraphEdge& e : graph.edges) {
        e.weight /= total;
        graph.vertex_strength[e.u] += e.weight;
        graph.vertex_strength[e.v] += e.weight;
    }
    return graph;
}

ErsResult ers_segment_detailed(const SegmentationGraph& g, int regions,
                               std::optional<double> alpha) {
    const int pixels = static_cast<int>(g.vertex_count());
    if (regions < 1 || regions > pixels)
        throw std::invalid_argument("ers_segment: region count must be in [1, pixels]");

    ErsState state(g);

    double alpha_used;
    if (alpha) {
        alpha_used = *alpha;
        if (!(alpha_used > 0.0)) throw std::invalid_argument("ers_segment: alpha must be positive");
    } else {
        // balance the two terms: mean initial entropy gain over mean initial
        // balancing gain (all initial balance gains are equal)
        double h_sum = 0.0;
        for (const GraphEdge& e : g.edges) h_sum += state.entropy_gain(e);
        const double h_mean = h_sum / static_cast<double>(g.edges.size());
        const double b_init = state.balance_gain(state.sets.find(g.edges[0].u),
                                                 state.sets.find(g.edges[0].v));
        alpha_used = h_mean / b_init;
        if (!(alpha_used > 0.0)) alpha_used = 1.0;
    }

    // Lazy greedy: stored gains are upper bounds once stale (submodularity),
    // so an entry recomputed at the current merge count and still on top of
    // the heap is the true maximizer.
    struct HeapEntry {
        double gain;
        std::size_t edge;
        int stamp;  // merge count when the gain was computed
    };
    auto worse = [](const HeapEntry& a, const HeapEntry& b) {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.edge > b.edge;  // smaller edge index wins ties
    };
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, decltype(worse)> heap(worse);
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        heap.push({state.gain(i, alpha_used), i, 0});

    ErsResult result;
    result.alpha = alpha_used;
    int components = pixels;
    int merges = 0;
    while (components > regions && !heap.empty()) {
        HeapEntry top = heap.top();
        heap.pop();
        const GraphEdge& e = g.edges[top.edge];
        if (state.sets.find(e.u) == state.sets.find(e.v)) continue;
        if (top.stamp != merges) {
            heap.push({state.gain(top.edge, alpha_used), top.edge, merges});
            continue;
        }
        state.select(top.edge);
        result.selected_edges.push_back(top.edge);
        ++merges;
        --components;
    }
    if (components != regions)
        throw std::runtime_error("ers_segment: could not reach requested region count");

    result.map = labels_from_components(state.sets, g.rows, g.cols, true);
    result.objective = ers_objective(g, result.selected_edges, alpha_used);
    return result;
}

RegionMap ers_segment(const SegmentationGraph& g, int regions, std::optional<double> alpha) {
    return ers_segment_detailed(g, regions, alpha).map;
}

double ers_objective(const SegmentationGraph& g, const std::vector<std::size_t>& selected,
                     double alpha) {
    const std::size_t pixels = g.vertex_count();
    std::vector<double> mass(pixels, 0.0);
    DisjointSets sets(static_cast<int>(pixels));
    double transition_entropy = 0.0;
    for (std::size_t idx : selected) {
        const GraphEdge& e = g.edges[idx];
        mass[e.u] += e.weight;
        mass[e.v] += e.weight;
        sets.unite(e.u, e.v);
        const double mu_u = g.vertex_strength[e.u] / 2.0;
        const double mu_v = g.vertex_strength[e.v] / 2.0;
        transition_entropy += mu_u * entropy_term(e.weight / g.vertex_strength[e.u]);
        transition_entropy += mu_v * entropy_term(e.weight / g.vertex_strength[e.v]);
    }
    double h = transition_entropy;
    for (std::size_t i = 0; i < pixels; ++i) {
        const double wi = g.vertex_strength[i];
        h += (wi / 2.0) * entropy_term(1.0 - mass[i] / wi);
    }

    std::vector<char> seen(pixels, 0);
    double b = 0.0;
    int components = 0;
    for (std::size_t i = 0; i < pixels; ++i) {
        const int root = sets.find(static_cast<int>(i));
        if (seen[root]) continue;
        seen[root] = 1;
        ++components;
        b += entropy_term(sets.size[root] / static_cast<double>(pixels));
    }
    b -= components;
    return h + alpha * b;
}

RegionMap square_partition(int rows, int cols, int regions) {
    const long long pixels = static_cast<long long>(rows) * cols;
    if (regions < 1 || regions > pixels)
        throw std::invalid_argument("square_partition: region count must be in [1, pixels]");

    int row_bands = static_cast<int>(std::llround(
        std::sqrt(static_cast<double>(regions) * rows / static_cast<double>(cols))));
    row_bands = std::clamp(row_bands, 1, std::min(rows, regions));
    int col_bands = (regions + row_bands - 1) / row_bands;
    col_bands = std::clamp(col_bands, 1, cols);

    RegionMap map;
    map.rows = rows;
    map.cols = cols;
    map.connected = true;
    map.region_count = row_bands * col_bands;
    map.labels.resize(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
        const int br = static_cast<int>(static_cast<long long>(r) * row_bands / rows);
        for (int c = 0; c < cols; ++c) {
            const int bc = static_cast<int>(static_cast<long long>(c) * col_bands / cols);
            map.labels[static_cast<std::size_t>(r) * cols + c] = br * col_bands + bc;
        }
    }
    return map;
}

RegionMap kmeans_cluster(const PixelMatrix& m, int rows, int cols, int k, std::uint64_t seed,
                         int max_iter) {
    if (static_cast<std::size_t>(rows) * cols != m.pixels)
        throw std::invalid_argument("kmeans_cluster: rows*cols != pixel count");
    if (k < 1 || static_cast<std::size_t>(k) > m.pixels)
        throw std::invalid_argument("kmeans_cluster: k must be in [1, pixels]");

    const std::size_t n = m.pixels;
    const int dim = m.bands;
    Rng rng(seed);

    auto dist_sq = [&](const double* a, const double* b) {
        double acc = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double d = a[i] - b[i];
            acc += d * d;
        }
        return acc;
    };

    // k-means++ style seeding: first centroid uniform, then proportional to
    // squared distance from the chosen set
    std::vector<double> centroids(static_cast<std::size_t>(k) * dim);
    std::vector<double> best_dist(n, 0.0);
    std::vector<char> is_centroid(n, 0);
    {
        const std::size_t first = rng.next_index(n);
        std::copy_n(m.col(first), dim, centroids.begin());
        is_centroid[first] = 1;
        for (std::size_t p = 0; p < n; ++p) best_dist[p] = dist_sq(m.col(p), centroids.data());
        for (int c = 1; c < k; ++c) {
            double total = 0.0;
            for (std::size_t p = 0; p < n; ++p) total += best_dist[p];
            std::size_t chosen = n;
            if (total > 0.0) {
                const double target = rng.next_double() * total;
                double run = 0.0;
                for (std::size_t p = 0; p < n; ++p) {
                    run += best_dist[p];
                    if (run >= target && !is_centroid[p]) {
                        chosen = p;
                        break;
                    }
                }
            }
            if (chosen == n) {  // all mass on chosen points (duplicates): first unused
                for (std::size_t p = 0; p < n; ++p)
                    if (!is_centroid[p]) {
                        chosen = p;
                        break;
                    }
            }
            is_centroid[chosen] = 1;
            double* dst = centroids.data() + static_cast<std::size_t>(c) * dim;
            std::copy_n(m.col(chosen), dim, dst);
            for (std::size_t p = 0; p < n; ++p)
                best_dist[p] = std::min(best_dist[p], dist_sq(m.col(p), dst));
        }
    }

    std::vector<int> assign(n, -1);
    std::vector<std::size_t> counts(k, 0);
    const std::ptrdiff_t pn = static_cast<std::ptrdiff_t>(n);
    for (int iter = 0; iter < max_iter; ++iter) {
        int changed = 0;
#pragma omp parallel for schedule(static) reduction(| : changed)
        for (std::ptrdiff_t p = 0; p < pn; ++p) {
            const double* x = m.col(p);
            int best = 0;
            double best_d = dist_sq(x, centroids.data());
            for (int c = 1; c < k; ++c) {
                const double d = dist_sq(x, centroids.data() + static_cast<std::size_t>(c) * dim);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[p] != best) {
                assign[p] = best;
                changed |= 1;
            }
        }
        if (!changed) break;

        std::fill(centroids.begin(), centroids.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t p = 0; p < n; ++p) {
            double* dst = centroids.data() + static_cast<std::size_t>(assign[p]) * dim;
            const double* x = m.col(p);
            for (int i = 0; i < dim; ++i) dst[i] += x[i];
            ++counts[assign[p]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            double* dst = centroids.data() + static_cast<std::size_t>(c) * dim;
            for (int i = 0; i < dim; ++i) dst[i] /= static_cast<double>(counts[c]);
        }

        // reseed empty clusters with the worst-represented point
        std::vector<char> taken(n, 0);
        for (int c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t p = 0; p < n; ++p) {
                if (taken[p] || counts[assign[p]] <= 1) continue;
                const double d =
                    dist_sq(m.col(p), centroids.data() + static_cast<std::size_t>(assign[p]) * dim);
                if (d > far_d) {
                    far_d = d;
                    far = p;
                }
            }
            if (far_d < 0.0) continue;
            taken[far] = 1;
            --counts[assign[far]];
            assign[far] = c;
            counts[c] = 1;
            std::copy_n(m.col(far), dim, centroids.data() + static_cast<std::size_t>(c) * dim);
        }
    }

    // compact labels to first-appearance order
    RegionMap map;
    map.rows = rows;
    map.cols = cols;
    map.connected = false;
    map.labels.resize(n);
    std::vector<int> relabel(k, -1);
    int next = 0;
    for (std::size_t p = 0; p < n; ++p) {
        if (relabel[assign[p]] < 0) relabel[assign[p]] = next++;
        map.labels[p] = relabel[assign[p]];
    }
    map.region_count = next;
    return map;
}

}  // namespace superpca
