#pragma once

#include <optional>
#include <vector>

#include "superpca/classify.hpp"
#include "superpca/cube.hpp"
#include "superpca/segmentation.hpp"
#include "superpca/superpca.hpp"

namespace superpca {

// The 2C+1 superpixel counts S_c = min(max(1, round(sqrt(2)^c * S_f)), P),
// c = -C..C, stored in ascending c order.
struct ScaleSchedule {
    int fundamental = 0;
    int half_width = 0;
    long long pixel_total = 0;
    std::vector<int> counts;
};

ScaleSchedule scale_schedule(int fundamental, int half_width, long long pixel_total);

// Per-scale artifacts of one multiscale run. predictions is filled by the
// classification stage, one label map per scale.
struct ScaleEnsemble {
    ScaleSchedule schedule;
    GuideImage guide;
    std::vector<RegionMap> maps;
    std::vector<ReducedCube> cubes;
    std::vector<LabelMap> predictions;
};

// Computes the guide image and segmentation graph once, then runs
// ers_segment + superpca_reduce for every scheduled count. Scales are
// independent; results are deterministic and identical across thread counts.
ScaleEnsemble run_multiscale(const HsiCube& cube, const ScaleSchedule& schedule, int dim,
                             std::optional<double> alpha = {},
                             ProjectionMode mode = ProjectionMode::Centered);

}  // namespace superpca
