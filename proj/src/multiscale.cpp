#include "superpca/multiscale.hpp"

#include <cmath>
#include <stdexcept>

namespace superpca {

ScaleSchedule scale_schedule(int fundamental, int half_width, long long pixel_total) {
    if (fundamental < 1) throw std::invalid_argument("scale_schedule: fundamental count must be >= 1");
    if (half_width < 0) throw std::invalid_argument("scale_schedule: half width must be >= 0");
    if (pixel_total < 1) throw std::invalid_argument("scale_schedule: pixel total must be >= 1");

    ScaleSchedule schedule;
    schedule.fundamental = fundamental;
    schedule.half_width = half_width;
    schedule.pixel_total = pixel_total;
    schedule.counts.reserve(2 * half_width + 1);
    const double root2 = std::sqrt(2.0);
    for (int c = -half_width; c <= half_width; ++c) {
        const double raw = std::pow(root2, c) * fundamental;
        long long count = std::llround(raw);  // round half away from zero
        count = std::max<long long>(1, count);
        count = std::min(count, pixel_total);
        schedule.counts.push_back(static_cast<int>(count));
    }
    return schedule;
}

ScaleEnsemble run_multiscale(const HsiCube& cube, const ScaleSchedule& schedule, int dim,
                             std::optional<double> alpha, ProjectionMode mode) {
    if (schedule.pixel_total != static_cast<long long>(cube.pixel_count()))
        throw std::invalid_argument("run_multiscale: schedule pixel total does not match cube");

    ScaleEnsemble ensemble;
    ensemble.schedule = schedule;
    ensemble.guide = first_pc_image(cube);
    const SegmentationGraph graph = build_graph(ensemble.guide);

    const int scales = static_cast<int>(schedule.counts.size());
    ensemble.maps.resize(scales);
    ensemble.cubes.resize(scales);

#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < scales; ++s) {
        RegionMap map = ers_segment(graph, schedule.counts[s], alpha);
        ensemble.cubes[s] = superpca_reduce(cube, map, dim, mode);
        ensemble.maps[s] = std::move(map);
    }
    return ensemble;
}

}  // namespace superpca
