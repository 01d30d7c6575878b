#pragma once

#include <cstdint>

#include "superpca/cube.hpp"

namespace superpca {

// Spectral-similarity weighted mean filter. Each output spectrum is the convex
// combination of the window spectra with weights
//   w_j = exp(-||x_c - x_j||^2 / (2 sigma_f^2))
// renormalized over the in-bounds window (truncated at image borders). radius 2
// gives a 5x5 window. sigma_f = +inf degenerates to an equal-weight mean.
// Throws std::invalid_argument for sigma_f <= 0 or radius < 0.
HsiCube weighted_mean_filter(const HsiCube& cube, int radius, double sigma_f);
HsiCube weighted_mean_filter_serial(const HsiCube& cube, int radius, double sigma_f);

// Data-driven sigma_f: median center-neighbor spectral distance over a 1%
// stride sample of window centers. Degenerate (zero) medians fall back to a
// tiny positive floor, which makes the filter a near-identity.
double auto_filter_sigma(const HsiCube& cube, int radius);

// Adds i.i.d. Gaussian noise with standard deviation sigma. Same seed, same
// output, bit for bit.
HsiCube add_awgn(const HsiCube& cube, double sigma, std::uint64_t seed);

}  // namespace superpca
