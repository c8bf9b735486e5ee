#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "srl/common.hpp"

namespace srl {

/// Dense real matrix.  The whole library works with the Euclidean operator
/// norm on R^d; all four spectral radii are norm-independent in finite
/// dimensions, and the 2-norm makes the distance to low-rank matrices
/// exactly computable from singular values.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline void require_finite(const Matrix& m, const char* who) {
    if (!m.allFinite())
        throw validation_error(std::string(who) + ": matrix has non-finite entries");
}

inline void require_square(const Matrix& m, const char* who) {
    if (m.rows() != m.cols())
        throw dimension_error(std::string(who) + ": matrix is not square (" +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
}

/// Build a matrix from row-major entries, validating shape and finiteness.
inline Matrix make_matrix(int rows, int cols, const std::vector<double>& row_major) {
    if (rows <= 0 || cols <= 0)
        throw dimension_error("make_matrix: dimensions must be positive");
    if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != row_major.size())
        throw dimension_error("make_matrix: entry count does not match rows*cols");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = row_major[static_cast<std::size_t>(i) * cols + j];
    require_finite(m, "make_matrix");
    return m;
}

/// Largest eigenvalue modulus.  Full complex spectrum of the real input via
/// a dense Schur-based solver; accurate to ~1e-10 relative for d <= 16.
inline double spectral_radius(const Matrix& m) {
    require_square(m, "spectral_radius");
    require_finite(m, "spectral_radius");
    if (m.rows() == 1) return std::abs(m(0, 0));
    Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectral_radius: eigenvalue iteration failed to converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Nonincreasing singular spectrum of a (possibly rectangular) matrix.
struct SingularSpectrum {
    std::vector<double> values;  // length min(rows, cols), nonincreasing

    double largest() const { return values.empty() ? 0.0 : values.front(); }
};

inline SingularSpectrum singular_values(const Matrix& m) {
    require_finite(m, "singular_values");
    Eigen::JacobiSVD<Matrix> svd(m);
    SingularSpectrum s;
    s.values.assign(svd.singularValues().data(),
                    svd.singularValues().data() + svd.singularValues().size());
    return s;
}

/// Euclidean operator norm (largest singular value).
inline double operator_norm(const Matrix& m) {
    require_finite(m, "operator_norm");
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

/// Distance in operator norm from m to the set of matrices of rank <= k.
/// By Eckart-Young-Mirsky this is the (k+1)-th singular value, or 0 once
/// k >= min(rows, cols).
inline double distance_to_rank(const Matrix& m, int k) {
    if (k < 0) throw validation_error("distance_to_rank: k must be nonnegative");
    const SingularSpectrum s = singular_values(m);
    if (static_cast<std::size_t>(k) >= s.values.size()) return 0.0;
    return s.values[static_cast<std::size_t>(k)];
}

}  // namespace srl
