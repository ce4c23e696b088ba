#pragma once

#include <Eigen/Sparse>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bogospec {

struct EigenOptions {
    std::size_t count = 1;
    double tol = 1e-10;              // residual target relative to the norm estimate
    std::uint64_t seed = 20240601;   // start-vector seed
    std::size_t dense_threshold = 512;
    std::size_t max_iterations = 2000; // Krylov dimension cap per locked vector
};

struct EigenResult {
    std::vector<double> values;    // ascending
    std::vector<double> residuals; // ||M v - theta v|| per value
    double norm_estimate = 0.0;    // max absolute row sum
    bool dense = false;
    std::uint64_t seed = 0;
};

/// Lowest `count` eigenvalues of a real symmetric matrix. Dimensions up to
/// dense_threshold use a dense solver; larger ones use Lanczos with full
/// reorthogonalization and locking, which resolves degenerate levels.
EigenResult lowest_eigenvalues(const Eigen::SparseMatrix<double>& m, const EigenOptions& opts);

/// Smallest eigenvalue by dense diagonalization. Empty matrices give +inf.
double dense_min_eigenvalue(const Eigen::MatrixXd& m);

} // namespace bogospec
