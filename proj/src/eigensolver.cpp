#include "bogospec/eigensolver.hpp"

#include "bogospec/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace bogospec {

namespace {

double max_row_sum(const Eigen::SparseMatrix<double>& m)
{
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(m.rows());
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
            rows(it.row()) += std::abs(it.value());
    return rows.size() ? rows.maxCoeff() : 0.0;
}

// Platform-independent uniform draw in [-1, 1).
double uniform_pm1(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

void project_out(Eigen::VectorXd& w, const std::vector<Eigen::VectorXd>& basis)
{
    for (const auto& b : basis)
        w -= b.dot(w) * b;
}

EigenResult dense_solve(const Eigen::SparseMatrix<double>& m, const EigenOptions& opts, double norm)
{
    const Eigen::MatrixXd dense(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("dense symmetric eigensolver failed", {});
    EigenResult res;
    res.dense = true;
    res.norm_estimate = norm;
    res.seed = opts.seed;
    for (std::size_t i = 0; i < opts.count; ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        const double theta = es.eigenvalues()(col);
        res.values.push_back(theta);
        res.residuals.push_back((dense * es.eigenvectors().col(col) - theta * es.eigenvectors().col(col)).norm());
    }
    return res;
}

EigenResult lanczos_solve(const Eigen::SparseMatrix<double>& m, const EigenOptions& opts, double norm)
{
    const Eigen::Index n = m.rows();
    std::mt19937_64 rng(opts.seed);
    std::vector<Eigen::VectorXd> locked;
    std::vector<double> values, residuals;
    const double target = opts.tol * std::max(norm, std::numeric_limits<double>::min());

    for (std::size_t found = 0; found < opts.count; ++found) {
        Eigen::VectorXd q(n);
        for (Eigen::Index i = 0; i < n; ++i)
            q(i) = uniform_pm1(rng);
        project_out(q, locked);
        project_out(q, locked);
        q.normalize();

        std::vector<Eigen::VectorXd> V{q};
        std::vector<double> alpha, beta;
        double theta = 0.0, estimate = std::numeric_limits<double>::infinity();
        Eigen::VectorXd ritz_coeffs;
        const std::size_t room = static_cast<std::size_t>(n) - locked.size();
        const std::size_t cap = std::min(opts.max_iterations, room);

        for (std::size_t j = 0; j < cap; ++j) {
            Eigen::VectorXd w = m * V[j];
            project_out(w, locked);
            const double a = V[j].dot(w);
            w -= a * V[j];
            if (j > 0)
                w -= beta[j - 1] * V[j - 1];
            // Full reorthogonalization, applied twice.
            for (int pass = 0; pass < 2; ++pass) {
                project_out(w, V);
                project_out(w, locked);
            }
            alpha.push_back(a);
            const double b = w.norm();
            const bool exhausted = b <= 1e-14 * std::max(norm, 1.0) || j + 1 == cap;

            if (exhausted || j < 8 || j % 4 == 3) {
                const auto k = static_cast<Eigen::Index>(alpha.size());
                Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
                Eigen::VectorXd sub(std::max<Eigen::Index>(k - 1, 0));
                for (Eigen::Index i = 0; i + 1 < k; ++i)
                    sub(i) = beta[static_cast<std::size_t>(i)];
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
                tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
                theta = tri.eigenvalues()(0);
                ritz_coeffs = tri.eigenvectors().col(0);
                estimate = std::abs(b * ritz_coeffs(k - 1));
                if (estimate <= target || exhausted)
                    break;
            }
            beta.push_back(b);
            V.push_back(w / b);
        }

        Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < ritz_coeffs.size(); ++i)
            y += ritz_coeffs(i) * V[static_cast<std::size_t>(i)];
        project_out(y, locked);
        y.normalize();
        const Eigen::VectorXd my = m * y;
        theta = y.dot(my);
        const double residual = (my - theta * y).norm();
        values.push_back(theta);
        residuals.push_back(residual);
        if (residual > 10.0 * target && estimate > target)
            throw ConvergenceError("Lanczos did not converge within the iteration cap", residuals);
        locked.push_back(std::move(y));
    }

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    EigenResult res;
    res.norm_estimate = norm;
    res.seed = opts.seed;
    for (auto i : order) {
        res.values.push_back(values[i]);
        res.residuals.push_back(residuals[i]);
    }
    return res;
}

} // namespace

EigenResult lowest_eigenvalues(const Eigen::SparseMatrix<double>& m, const EigenOptions& opts)
{
    if (m.rows() != m.cols())
        throw DomainError("eigensolver needs a square matrix");
    if (opts.count > static_cast<std::size_t>(m.rows()))
        throw DomainError("requested " + std::to_string(opts.count) + " eigenvalues of a " +
                          std::to_string(m.rows()) + "-dimensional matrix");
    if (!(opts.tol > 0.0))
        throw DomainError("eigensolver tolerance must be > 0");
    const double norm = max_row_sum(m);
    if (opts.count == 0) {
        EigenResult res;
        res.norm_estimate = norm;
        res.seed = opts.seed;
        return res;
    }
    if (static_cast<std::size_t>(m.rows()) <= opts.dense_threshold)
        return dense_solve(m, opts, norm);
    return lanczos_solve(m, opts, norm);
}

double dense_min_eigenvalue(const Eigen::MatrixXd& m)
{
    if (m.rows() == 0)
        return std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("dense symmetric eigensolver failed", {});
    return es.eigenvalues()(0);
}

} // namespace bogospec
