#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// The OpenMP kernels and their serial references must agree bit for bit:
// every output element is computed independently with the same operation
// order, so any divergence means a data race or a drifted reference.

#include "superpca/classify.hpp"
#include "superpca/filter.hpp"
#include "superpca/linalg.hpp"
#include "superpca/parallel.hpp"
#include "superpca/superpca.hpp"
#include "support/test_util.hpp"

using namespace superpca;

TEST_CASE("weighted mean filter: parallel equals serial") {
    const HsiCube cube = testutil::random_cube(13, 9, 6, 3);
    const double sigma = auto_filter_sigma(cube, 2);
    const HsiCube par = weighted_mean_filter(cube, 2, sigma);
    const HsiCube ser = weighted_mean_filter_serial(cube, 2, sigma);
    CHECK(par.data == ser.data);
}

TEST_CASE("projection: parallel equals serial") {
    const PixelMatrix m = testutil::random_matrix(8, 500, 5);
    const ProjectionBasis basis = fit_pca(m, 4);
    const PixelMatrix par = project(basis, m);
    const PixelMatrix ser = project_serial(basis, m);
    CHECK(par.data == ser.data);
}

TEST_CASE("nn classification: parallel equals serial") {
    const PixelMatrix train = testutil::random_matrix(6, 80, 7);
    const PixelMatrix test = testutil::random_matrix(6, 200, 8);
    Rng rng(9);
    std::vector<int> labels(80);
    for (int& v : labels) v = 1 + static_cast<int>(rng.next_index(5));
    CHECK(nn_classify(train, labels, test) == nn_classify_serial(train, labels, test));
}

TEST_CASE("regionwise reduction: parallel equals serial") {
    const HsiCube cube = testutil::random_cube(12, 10, 7, 11);
    const RegionMap map = square_partition(12, 10, 9);
    for (ProjectionMode mode : {ProjectionMode::Centered, ProjectionMode::Raw}) {
        const ReducedCube par = superpca_reduce(cube, map, 4, mode);
        const ReducedCube ser = superpca_reduce_serial(cube, map, 4, mode);
        CHECK(par.data == ser.data);
    }
}

TEST_CASE("worker thread count is at least one") { CHECK(worker_thread_count() >= 1); }
