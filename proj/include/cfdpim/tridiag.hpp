#pragma once

#include <Eigen/Dense>
#include <vector>

namespace cfdpim {

/// Tridiagonal LU with partial pivoting, reused across many right-hand
/// sides. Pivoting matters here: the closure-variant compact matrix has an
/// exactly singular leading 3x3 minor, so the pivotless Thomas recursion
/// breaks down on it. Row swaps add one extra superdiagonal to U.
class TridiagonalSolver {
public:
    /// lower/diag/upper are the matrix bands: lower[i] multiplies x[i-1] in row i
    /// (lower[0] unused), upper[i] multiplies x[i+1] (upper[n-1] unused).
    TridiagonalSolver(std::vector<double> lower, std::vector<double> diag,
                      std::vector<double> upper);

    int size() const { return static_cast<int>(diag_.size()); }

    void solve_inplace(Eigen::Ref<Eigen::VectorXd> rhs) const;
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

private:
    std::vector<double> lower_, diag_, upper_;  // factored bands; lower_ = multipliers
    std::vector<double> upper2_;                // fill-in from row interchanges
    std::vector<bool> swapped_;
};

/// Cyclic (periodic) tridiagonal solve via Sherman-Morrison on top of the
/// Thomas factorization: rows wrap with corner entries lower[0] -> x[n-1]
/// and upper[n-1] -> x[0].
class CyclicTridiagonalSolver {
public:
    CyclicTridiagonalSolver(std::vector<double> lower, std::vector<double> diag,
                            std::vector<double> upper);

    int size() const { return core_.size(); }

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

private:
    double corner_lower_, corner_upper_, gamma_;
    TridiagonalSolver core_;
    Eigen::VectorXd z_;  // core^{-1} u for the rank-one correction
};

}  // namespace cfdpim
