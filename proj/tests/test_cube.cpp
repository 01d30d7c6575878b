#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "superpca/cube.hpp"
#include "support/test_util.hpp"

using namespace superpca;

TEST_CASE("reshape of a single pixel is the spectrum itself") {
    HsiCube cube(1, 1, 3);
    cube.data = {1.5, -2.0, 7.25};
    const PixelMatrix m = reshape_cube(cube);
    CHECK(m.bands == 3);
    CHECK(m.pixels == 1);
    CHECK(m.at(0, 0) == 1.5);
    CHECK(m.at(1, 0) == -2.0);
    CHECK(m.at(2, 0) == 7.25);
}

TEST_CASE("reshape orders columns row-major") {
    HsiCube cube(2, 2, 1);
    cube.data = {1.0, 2.0, 3.0, 4.0};  // rows [[p,q],[r,s]]
    const PixelMatrix m = reshape_cube(cube);
    CHECK(m.at(0, 0) == 1.0);
    CHECK(m.at(0, 1) == 2.0);
    CHECK(m.at(0, 2) == 3.0);
    CHECK(m.at(0, 3) == 4.0);
}

TEST_CASE("reshape round-trips bit-exactly") {
    const HsiCube cube = testutil::random_cube(3, 4, 5, 11);
    const HsiCube back = cube_from_matrix(reshape_cube(cube), 3, 4);
    CHECK(testutil::max_abs_diff(cube.data, back.data) == 0.0);
}

TEST_CASE("reshape is a bijection on random cubes") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng shape(seed * 7 + 1);
        const int rows = 1 + static_cast<int>(shape.next_index(6));
        const int cols = 1 + static_cast<int>(shape.next_index(6));
        const int bands = 1 + static_cast<int>(shape.next_index(8));
        const HsiCube cube = testutil::random_cube(rows, cols, bands, seed);
        const HsiCube back = cube_from_matrix(reshape_cube(cube), rows, cols);
        CHECK(cube.data == back.data);
    }
}

TEST_CASE("guide image of a constant-spectrum cube is all zero") {
    HsiCube cube(3, 3, 4);
    for (int b = 0; b < 4; ++b)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) cube.at(b, r, c) = 2.0 + b;
    const GuideImage g = first_pc_image(cube);
    for (double v : g.values) CHECK(v == 0.0);
}

TEST_CASE("guide image of a single band is its min-max normalization") {
    HsiCube cube(2, 2, 1);
    cube.data = {2.0, 4.0, 6.0, 10.0};
    const GuideImage g = first_pc_image(cube);
    CHECK(g.values[0] == doctest::Approx(0.0));
    CHECK(g.values[1] == doctest::Approx(0.25));
    CHECK(g.values[2] == doctest::Approx(0.5));
    CHECK(g.values[3] == doctest::Approx(1.0));
}

TEST_CASE("guide image ordering follows the dominant direction") {
    // pixels on the line x2 = 2*x1: first eigenvector is (1,2)/sqrt(5)
    HsiCube cube(1, 4, 2);
    const double x1[] = {0.5, 3.0, 1.5, 2.0};
    for (int c = 0; c < 4; ++c) {
        cube.at(0, 0, c) = x1[c];
        cube.at(1, 0, c) = 2.0 * x1[c];
    }
    const GuideImage g = first_pc_image(cube);
    // ordering by guide value equals ordering by x1
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (x1[a] < x1[b]) CHECK(g.values[a] < g.values[b]);
    CHECK(*std::min_element(g.values.begin(), g.values.end()) == 0.0);
    CHECK(*std::max_element(g.values.begin(), g.values.end()) == 1.0);
}

TEST_CASE("guide image is bit-exact under constant spectrum shifts") {
    // integer data and a power-of-two pixel count keep all sums and mean
    // divisions exact, so the invariance holds to the bit
    Rng rng(5);
    HsiCube cube(4, 4, 3);
    for (double& v : cube.data) v = static_cast<double>(rng.next_index(10));
    HsiCube shifted = cube;
    const double offset[] = {3.0, -7.0, 11.0};
    for (int b = 0; b < 3; ++b)
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) shifted.at(b, r, c) += offset[b];
    const GuideImage g0 = first_pc_image(cube);
    const GuideImage g1 = first_pc_image(shifted);
    CHECK(g0.values == g1.values);
}

TEST_CASE("cube validity checks dimensions and finiteness") {
    HsiCube cube = testutil::random_cube(2, 2, 2, 3);
    CHECK(cube.valid());
    cube.data[3] = std::numeric_limits<double>::infinity();
    CHECK_FALSE(cube.valid());
    CHECK_THROWS_AS(HsiCube(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(cube_from_matrix(PixelMatrix(2, 6), 2, 2), std::invalid_argument);
}
