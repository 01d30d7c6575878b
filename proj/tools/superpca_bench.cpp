// Benchmark of the OpenMP kernels against their serial reference
// implementations, on synthetic data sized like a real scene. Also verifies
// that both paths produce bit-identical output before timing them.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "superpca/classify.hpp"
#include "superpca/cube.hpp"
#include "superpca/filter.hpp"
#include "superpca/linalg.hpp"
#include "superpca/parallel.hpp"
#include "superpca/rng.hpp"
#include "superpca/segmentation.hpp"
#include "superpca/superpca.hpp"

using namespace superpca;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const double t0 = now_seconds();
        fn();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

void row(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-24s %10.3fs %10.3fs %8.2fx   %s\n", name, serial, parallel,
                serial / parallel, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();
    const int scale = argc > 1 ? std::atoi(argv[1]) : 1;
    const int rows = 96 * scale, cols = 96, bands = 40;

    std::printf("threads: %d   scene: %dx%dx%d\n", worker_thread_count(), rows, cols, bands);
    std::printf("%-24s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

    Rng rng(1);
    HsiCube cube(rows, cols, bands);
    for (double& v : cube.data) v = rng.next_uniform(0.0, 1.0);

    {
        const double sigma = auto_filter_sigma(cube, 2);
        HsiCube out_p, out_s;
        const double tp = time_best_of(3, [&] { out_p = weighted_mean_filter(cube, 2, sigma); });
        const double ts =
            time_best_of(3, [&] { out_s = weighted_mean_filter_serial(cube, 2, sigma); });
        row("weighted_mean_filter", ts, tp, out_p.data == out_s.data);
    }

    const PixelMatrix all = reshape_cube(cube);
    {
        const ProjectionBasis basis = fit_pca(all, 10);
        PixelMatrix out_p, out_s;
        const double tp = time_best_of(3, [&] { out_p = project(basis, all); });
        const double ts = time_best_of(3, [&] { out_s = project_serial(basis, all); });
        row("project", ts, tp, out_p.data == out_s.data);
    }

    {
        const RegionMap map = square_partition(rows, cols, 64);
        ReducedCube out_p, out_s;
        const double tp = time_best_of(2, [&] { out_p = superpca_reduce(cube, map, 10); });
        const double ts =
            time_best_of(2, [&] { out_s = superpca_reduce_serial(cube, map, 10); });
        row("superpca_reduce", ts, tp, out_p.data == out_s.data);
    }

    {
        PixelMatrix train(bands, 480);
        std::vector<int> labels(480);
        for (std::size_t i = 0; i < 480; ++i) {
            std::copy_n(all.col(rng.next_index(all.pixels)), bands, train.col(i));
            labels[i] = 1 + static_cast<int>(rng.next_index(16));
        }
        std::vector<int> out_p, out_s;
        const double tp = time_best_of(2, [&] { out_p = nn_classify(train, labels, all); });
        const double ts = time_best_of(2, [&] { out_s = nn_classify_serial(train, labels, all); });
        row("nn_classify", ts, tp, out_p == out_s);
    }
    return 0;
}
