#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "superpca/classify.hpp"
#include "superpca/cube.hpp"
#include "superpca/segmentation.hpp"

namespace superpca {

// Malformed or truncated file contents. Messages name the offending byte
// offset or line number.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// HSIF cube container: one JSON header line
//   {"rows":R,"cols":C,"bands":B,"dtype":"f32","interleave":"bsq","byteorder":"le"}
// terminated by '\n', immediately followed by R*C*B little-endian 32-bit
// floats in band-sequential order. Only the exact dtype/interleave/byteorder
// triple above is accepted.
HsiCube read_hsif(const std::string& path);
void write_hsif(const HsiCube& cube, const std::string& path);

// Plain-text label grid: first line "rows cols", then rows lines of cols
// space-separated non-negative integers (0 = unlabeled).
LabelMap read_labels(const std::string& path);
void write_labels(const LabelMap& map, const std::string& path);

// Plain-text cube for dataset ingestion: first line "rows cols bands", then
// whitespace-separated values in band-sequential order.
HsiCube read_text_cube(const std::string& path);
void write_text_cube(const HsiCube& cube, const std::string& path);

// Fixed 17-color render palette; entry 0 (unlabeled) is black.
const std::array<std::array<unsigned char, 3>, 17>& label_palette();

// Binary PPM (P6) rendering of a label map through label_palette(). Throws
// FormatError for labels beyond the 16 available class colors.
void render_map(const LabelMap& map, const std::string& path);

// Region maps reuse the label-grid format (region ids written as-is).
LabelMap to_label_map(const RegionMap& map);
RegionMap region_map_from_labels(const LabelMap& map, bool connected);

}  // namespace superpca
