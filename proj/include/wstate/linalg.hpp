// linalg.hpp: dense/sparse complex aliases and small matrix utilities

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wstate {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cd, Eigen::RowMajor>;

inline constexpr cd I_unit{0.0, 1.0};

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
}

// Largest entrywise |a_ij - b_ij|.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return max_abs_diff(a, b) <= tol;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

inline double hermiticity_error(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermiticity_error: matrix not square");
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& a, double tol) { return hermiticity_error(a) <= tol; }

// ½‖a − b‖₁ from the eigenvalues of the Hermitian part of the difference.
inline double trace_distance(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "trace_distance");
    if (a.rows() != a.cols()) throw std::invalid_argument("trace_distance: matrices not square");
    Matrix d = a - b;
    d = 0.5 * (d + d.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(d, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline double min_eigenvalue(const Matrix& rho) {
    Matrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline Matrix projector(const Vector& v) { return v * v.adjoint(); }

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

inline std::uint64_t ipow(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Row-major vectorisation: vec(ρ)[i*N + j] = ρ(i, j), so vec(AρB) = (A ⊗ Bᵀ) vec(ρ).
inline Vector vectorize(const Matrix& rho) {
    const Eigen::Index n = rho.rows();
    Vector v(n * rho.cols());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
    return v;
}

inline Matrix unvectorize(const Vector& v, Eigen::Index n) {
    if (v.size() != n * n) throw std::invalid_argument("unvectorize: size mismatch");
    Matrix rho(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) rho(i, j) = v(i * n + j);
    return rho;
}

}  // namespace wstate
