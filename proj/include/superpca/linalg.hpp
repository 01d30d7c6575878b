#pragma once

#include <vector>

#include "superpca/cube.hpp"

namespace superpca {

// Dense symmetric matrix, row-major order*order storage.
struct SymMatrix {
    int order = 0;
    std::vector<double> entries;

    SymMatrix() = default;
    explicit SymMatrix(int order_, double fill = 0.0)
        : order(order_), entries(static_cast<std::size_t>(order_) * order_, fill) {}

    double& at(int i, int j) { return entries[static_cast<std::size_t>(i) * order + j]; }
    double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * order + j]; }

    // largest |a_ij - a_ji|
    double max_asymmetry() const;
};

// Full eigendecomposition, eigenvalues sorted non-increasing. Eigenvector k is
// the contiguous column vectors[k*order .. k*order+order).
struct EigenSpectrum {
    int order = 0;
    std::vector<double> values;
    std::vector<double> vectors;  // column-major

    const double* vec(int k) const { return vectors.data() + static_cast<std::size_t>(k) * order; }
    double* vec(int k) { return vectors.data() + static_cast<std::size_t>(k) * order; }
};

// Fitted PCA transform: d orthonormal columns of W (input_dim x output_dim,
// column-major), the centering mean, and the covariance spectrum.
struct ProjectionBasis {
    int input_dim = 0;
    int output_dim = 0;
    std::vector<double> basis;  // column k at basis[k*input_dim]
    std::vector<double> mean;
    EigenSpectrum spectrum;

    const double* axis(int k) const { return basis.data() + static_cast<std::size_t>(k) * input_dim; }
};

// Population covariance (1/P normalization) of the columns of m.
SymMatrix covariance(const PixelMatrix& m);

// Cyclic Jacobi rotations, iterated until the off-diagonal Frobenius norm
// drops below 1e-12 * ||A||_F or 100 sweeps. Throws std::invalid_argument when
// the input is asymmetric beyond 1e-12.
EigenSpectrum sym_eigen(const SymMatrix& a);

// Top-d eigenvectors of covariance(m), sign-fixed so each column's
// largest-magnitude entry is positive. Eigenvalues below 1e-10 * lambda_1 in
// magnitude are clamped to zero (rank-deficient inputs).
ProjectionBasis fit_pca(const PixelMatrix& m, int d);

// y_p = W^T (x_p - mean); output is output_dim x pixels.
PixelMatrix project(const ProjectionBasis& b, const PixelMatrix& m);
PixelMatrix project_serial(const ProjectionBasis& b, const PixelMatrix& m);

// lambda_1 / max(lambda_2, 1e-15). Requires order >= 2.
double eigen_ratio(const EigenSpectrum& s);

}  // namespace superpca
