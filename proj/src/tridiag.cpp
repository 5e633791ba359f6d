#include "cfdpim/tridiag.hpp"

#include <cmath>
#include <stdexcept>

namespace cfdpim {

// Tridiagonal LU with partial pivoting (dgttrf-style). Pivoting is required:
// the closure-variant compact matrix has an exactly singular 3x3 leading
// minor, so the plain Thomas recursion hits a zero pivot. Row interchanges
// introduce a second superdiagonal, stored in upper2_.
TridiagonalSolver::TridiagonalSolver(std::vector<double> lower, std::vector<double> diag,
                                     std::vector<double> upper)
    : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper)) {
    const std::size_t n = diag_.size();
    if (n < 2 || lower_.size() != n || upper_.size() != n) {
        throw std::invalid_argument("TridiagonalSolver: band sizes mismatch");
    }
    upper2_.assign(n, 0.0);
    swapped_.assign(n, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(diag_[i]) >= std::abs(lower_[i + 1])) {
            if (diag_[i] == 0.0 || !std::isfinite(diag_[i])) {
                throw std::runtime_error("TridiagonalSolver: singular matrix");
            }
            const double fact = lower_[i + 1] / diag_[i];
            lower_[i + 1] = fact;
            diag_[i + 1] -= fact * upper_[i];
        } else {
            const double fact = diag_[i] / lower_[i + 1];
            diag_[i] = lower_[i + 1];
            lower_[i + 1] = fact;
            const double tmp = upper_[i];
            upper_[i] = diag_[i + 1];
            diag_[i + 1] = tmp - fact * diag_[i + 1];
            if (i + 2 < n) {
                upper2_[i] = upper_[i + 1];
                upper_[i + 1] = -fact * upper_[i + 1];
            }
            swapped_[i] = true;
        }
    }
    if (diag_[n - 1] == 0.0 || !std::isfinite(diag_[n - 1])) {
        throw std::runtime_error("TridiagonalSolver: singular matrix");
    }
}

void TridiagonalSolver::solve_inplace(Eigen::Ref<Eigen::VectorXd> rhs) const {
    const int n = size();
    for (int i = 0; i + 1 < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        if (!swapped_[iu]) {
            rhs[i + 1] -= lower_[iu + 1] * rhs[i];
        } else {
            const double tmp = rhs[i];
            rhs[i] = rhs[i + 1];
            rhs[i + 1] = tmp - lower_[iu + 1] * rhs[i];
        }
    }
    rhs[n - 1] /= diag_[static_cast<std::size_t>(n - 1)];
    if (n >= 2) {
        rhs[n - 2] = (rhs[n - 2] - upper_[static_cast<std::size_t>(n - 2)] * rhs[n - 1]) /
                     diag_[static_cast<std::size_t>(n - 2)];
    }
    for (int i = n - 3; i >= 0; --i) {
        const auto iu = static_cast<std::size_t>(i);
        rhs[i] = (rhs[i] - upper_[iu] * rhs[i + 1] - upper2_[iu] * rhs[i + 2]) / diag_[iu];
    }
}

Eigen::VectorXd TridiagonalSolver::solve(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd x = rhs;
    solve_inplace(x);
    return x;
}

// Corners stripped as A = T + u v^T with u = (gamma, 0, ..., corner_upper)^T
// and v = (1, 0, ..., corner_lower/gamma)^T; T absorbs the diagonal correction.
CyclicTridiagonalSolver::CyclicTridiagonalSolver(std::vector<double> lower,
                                                 std::vector<double> diag,
                                                 std::vector<double> upper)
    : corner_lower_(lower.at(0)),
      corner_upper_(upper.at(upper.size() - 1)),
      gamma_(-diag.at(0)),
      core_([&] {
          const std::size_t n = diag.size();
          if (n < 3) throw std::invalid_argument("CyclicTridiagonalSolver: n >= 3 required");
          diag[0] -= gamma_;
          diag[n - 1] -= corner_lower_ * corner_upper_ / gamma_;
          lower[0] = 0.0;
          upper[n - 1] = 0.0;
          return TridiagonalSolver(std::move(lower), std::move(diag), std::move(upper));
      }()) {
    const int n = core_.size();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    u[0] = gamma_;
    u[n - 1] = corner_upper_;
    z_ = core_.solve(u);
}

Eigen::VectorXd CyclicTridiagonalSolver::solve(const Eigen::VectorXd& rhs) const {
    const int n = core_.size();
    Eigen::VectorXd y = core_.solve(rhs);
    const double vy = y[0] + corner_lower_ / gamma_ * y[n - 1];
    const double vz = z_[0] + corner_lower_ / gamma_ * z_[n - 1];
    return y - (vy / (1.0 + vz)) * z_;
}

}  // namespace cfdpim
