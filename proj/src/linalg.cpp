#include "superpca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace superpca {

double SymMatrix::max_asymmetry() const {
    double worst = 0.0;
    for (int i = 0; i < order; ++i)
        for (int j = i + 1; j < order; ++j)
            worst = std::max(worst, std::fabs(at(i, j) - at(j, i)));
    return worst;
}

SymMatrix covariance(const PixelMatrix& m) {
    if (m.pixels < 1) throw std::invalid_argument("covariance: empty matrix");
    const int n = m.bands;
    std::vector<double> mean(n, 0.0);
    for (std::size_t p = 0; p < m.pixels; ++p) {
        const double* col = m.col(p);
        for (int b = 0; b < n; ++b) mean[b] += col[b];
    }
    for (double& v : mean) v /= static_cast<double>(m.pixels);

    SymMatrix cov(n);
    std::vector<double> centered(n);
    for (std::size_t p = 0; p < m.pixels; ++p) {
        const double* col = m.col(p);
        for (int b = 0; b < n; ++b) centered[b] = col[b] - mean[b];
        for (int i = 0; i < n; ++i) {
            const double ci = centered[i];
            for (int j = i; j < n; ++j) cov.at(i, j) += ci * centered[j];
        }
    }
    const double inv = 1.0 / static_cast<double>(m.pixels);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cov.at(i, j) *= inv;
            cov.at(j, i) = cov.at(i, j);
        }
    return cov;
}

EigenSpectrum sym_eigen(const SymMatrix& input) {
    if (input.order < 1) throw std::invalid_argument("sym_eigen: empty matrix");
    if (input.max_asymmetry() > 1e-12)
        throw std::invalid_argument("sym_eigen: matrix is not symmetric within 1e-12");

    const int n = input.order;
    std::vector<double> a = input.entries;        // working copy, row-major
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);  // rotations, row-major
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

    double frob = 0.0;
    for (double x : a) frob += x * x;
    frob = std::sqrt(frob);
    const double target = 1e-12 * frob;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += A(i, j) * A(i, j);
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                A(p, p) -= t * apq;
                A(q, q) += t * apq;
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = A(r, p), arq = A(r, q);
                        A(r, p) = arp - s * (arq + tau * arp);
                        A(p, r) = A(r, p);
                        A(r, q) = arq + s * (arp - tau * arq);
                        A(q, r) = A(r, q);
                    }
                    const double vrp = V(r, p), vrq = V(r, q);
                    V(r, p) = vrp - s * (vrq + tau * vrp);
                    V(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return A(i, i) > A(j, j); });

    EigenSpectrum spec;
    spec.order = n;
    spec.values.resize(n);
    spec.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        spec.values[k] = A(src, src);
        double* dst = spec.vec(k);
        for (int i = 0; i < n; ++i) dst[i] = V(i, src);
    }
    return spec;
}

namespace {

// sign convention: the largest-magnitude entry of the column is positive
void fix_sign(double* col, int n) {
    int arg = 0;
    for (int i = 1; i < n; ++i)
        if (std::fabs(col[i]) > std::fabs(col[arg])) arg = i;
    if (col[arg] < 0.0)
        for (int i = 0; i < n; ++i) col[i] = -col[i];
}

}  // namespace

ProjectionBasis fit_pca(const PixelMatrix& m, int d) {
    if (d < 1 || d > m.bands)
        throw std::invalid_argument("fit_pca: d must satisfy 1 <= d <= bands");

    SymMatrix cov = covariance(m);
    EigenSpectrum spec = sym_eigen(cov);

    // rank-deficient fits can surface tiny negative eigenvalues
    if (!spec.values.empty() && spec.values.front() > 0.0) {
        const double floor = 1e-10 * spec.values.front();
        for (double& lambda : spec.values)
            if (lambda < 0.0 && -lambda < floor) lambda = 0.0;
    }
    for (int k = 0; k < spec.order; ++k) fix_sign(spec.vec(k), spec.order);

    ProjectionBasis basis;
    basis.input_dim = m.bands;
    basis.output_dim = d;
    basis.basis.assign(spec.vectors.begin(),
                       spec.vectors.begin() + static_cast<std::size_t>(d) * m.bands);

    basis.mean.assign(m.bands, 0.0);
    for (std::size_t p = 0; p < m.pixels; ++p) {
        const double* col = m.col(p);
        for (int b = 0; b < m.bands; ++b) basis.mean[b] += col[b];
    }
    for (double& v : basis.mean) v /= static_cast<double>(m.pixels);

    basis.spectrum = std::move(spec);
    return basis;
}

namespace {

inline void project_column(const ProjectionBasis& b, const double* x, double* y) {
    for (int k = 0; k < b.output_dim; ++k) {
        const double* w = b.axis(k);
        double acc = 0.0;
        for (int i = 0; i < b.input_dim; ++i) acc += w[i] * (x[i] - b.mean[i]);
        y[k] = acc;
    }
}

}  // namespace

PixelMatrix project(const ProjectionBasis& b, const PixelMatrix& m) {
    if (m.bands != b.input_dim)
        throw std::invalid_argument("project: feature length does not match basis");
    PixelMatrix out(b.output_dim, m.pixels);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(m.pixels);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t p = 0; p < n; ++p) project_column(b, m.col(p), out.col(p));
    return out;
}

PixelMatrix project_serial(const ProjectionBasis& b, const PixelMatrix& m) {
    if (m.bands != b.input_dim)
        throw std::invalid_argument("project: feature length does not match basis");
    PixelMatrix out(b.output_dim, m.pixels);
    for (std::size_t p = 0; p < m.pixels; ++p) project_column(b, m.col(p), out.col(p));
    return out;
}

double eigen_ratio(const EigenSpectrum& s) {
    if (s.order < 2) throw std::invalid_argument("eigen_ratio: need at least two eigenvalues");
    return s.values[0] / std::max(s.values[1], 1e-15);
}

}  // namespace superpca
