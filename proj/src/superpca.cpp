#include "superpca/superpca.hpp"

#include <cmath>
#include <stdexcept>

namespace superpca {

namespace {

struct RegionIndex {
    std::vector<std::vector<std::size_t>> pixels;  // flat indices per region
};

RegionIndex index_regions(const RegionMap& map) {
    RegionIndex idx;
    idx.pixels.resize(map.region_count);
    for (std::size_t p = 0; p < map.labels.size(); ++p)
        idx.pixels[map.labels[p]].push_back(p);
    return idx;
}

void check_reduce_args(const HsiCube& cube, const RegionMap& map, int dim) {
    if (map.rows != cube.rows || map.cols != cube.cols)
        throw std::invalid_argument("superpca_reduce: region map does not match cube");
    if (dim < 1 || dim > cube.bands)
        throw std::invalid_argument("superpca_reduce: dim must satisfy 1 <= dim <= bands");
}

// fit + project one region and scatter its channels into the output
void reduce_region(const PixelMatrix& all, const std::vector<std::size_t>& members, int dim,
                   ProjectionMode mode, ReducedCube& out) {
    const int L = all.bands;
    const std::size_t n = members.size();
    const int kept = std::min<long long>({static_cast<long long>(dim),
                                          static_cast<long long>(n),
                                          static_cast<long long>(L)});

    PixelMatrix region(L, n);
    for (std::size_t i = 0; i < n; ++i)
        std::copy_n(all.col(members[i]), L, region.col(i));

    const ProjectionBasis basis = fit_pca(region, kept);
    const std::size_t plane = static_cast<std::size_t>(out.rows) * out.cols;
    for (std::size_t i = 0; i < n; ++i) {
        const double* x = region.col(i);
        for (int k = 0; k < kept; ++k) {
            const double* w = basis.axis(k);
            double acc = 0.0;
            if (mode == ProjectionMode::Centered) {
                for (int b = 0; b < L; ++b) acc += w[b] * (x[b] - basis.mean[b]);
            } else {
                for (int b = 0; b < L; ++b) acc += w[b] * x[b];
            }
            out.data[plane * k + members[i]] = acc;
        }
        // channels kept..dim-1 stay zero-filled
    }
}

}  // namespace

ReducedCube superpca_reduce(const HsiCube& cube, const RegionMap& map, int dim,
                            ProjectionMode mode, std::string_view method_tag) {
    check_reduce_args(cube, map, dim);
    const PixelMatrix all = reshape_cube(cube);
    const RegionIndex idx = index_regions(map);

    ReducedCube out;
    out.rows = cube.rows;
    out.cols = cube.cols;
    out.channels = dim;
    out.data.assign(cube.pixel_count() * dim, 0.0);
    out.method = std::string(method_tag);
    out.region_count = map.region_count;
    out.mode = mode;

    const int regions = map.region_count;
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < regions; ++k) reduce_region(all, idx.pixels[k], dim, mode, out);
    return out;
}

ReducedCube superpca_reduce_serial(const HsiCube& cube, const RegionMap& map, int dim,
                                   ProjectionMode mode, std::string_view method_tag) {
    check_reduce_args(cube, map, dim);
    const PixelMatrix all = reshape_cube(cube);
    const RegionIndex idx = index_regions(map);

    ReducedCube out;
    out.rows = cube.rows;
    out.cols = cube.cols;
    out.channels = dim;
    out.data.assign(cube.pixel_count() * dim, 0.0);
    out.method = std::string(method_tag);
    out.region_count = map.region_count;
    out.mode = mode;

    for (int k = 0; k < map.region_count; ++k) reduce_region(all, idx.pixels[k], dim, mode, out);
    return out;
}

ReducedCube global_pca_reduce(const HsiCube& cube, int dim, ProjectionMode mode) {
    RegionMap whole;
    whole.rows = cube.rows;
    whole.cols = cube.cols;
    whole.region_count = 1;
    whole.connected = true;
    whole.labels.assign(cube.pixel_count(), 0);
    return superpca_reduce(cube, whole, dim, mode, "global");
}

RegionRatioReport region_eigen_ratios(const HsiCube& cube, const RegionMap& map) {
    if (map.rows != cube.rows || map.cols != cube.cols)
        throw std::invalid_argument("region_eigen_ratios: region map does not match cube");
    if (cube.bands < 2)
        throw std::invalid_argument("region_eigen_ratios: need at least two bands");

    const PixelMatrix all = reshape_cube(cube);
    const RegionIndex idx = index_regions(map);

    RegionRatioReport report;
    report.global_ratio = eigen_ratio(sym_eigen(covariance(all)));

    for (int k = 0; k < map.region_count; ++k) {
        const auto& members = idx.pixels[k];
        if (members.size() < 2) continue;
        PixelMatrix region(all.bands, members.size());
        for (std::size_t i = 0; i < members.size(); ++i)
            std::copy_n(all.col(members[i]), all.bands, region.col(i));
        const EigenSpectrum spec = sym_eigen(covariance(region));
        if (!(spec.values[0] > 0.0)) continue;  // zero covariance, no ratio
        report.regions.push_back({k, eigen_ratio(spec)});
    }

    double sum = 0.0;
    for (const RegionRatio& r : report.regions) sum += r.ratio;
    report.mean_region_ratio =
        report.regions.empty() ? 0.0 : sum / static_cast<double>(report.regions.size());
    return report;
}

HsiCube to_cube(const ReducedCube& r) {
    HsiCube cube(r.rows, r.cols, r.channels);
    cube.data = r.data;
    return cube;
}

}  // namespace superpca
