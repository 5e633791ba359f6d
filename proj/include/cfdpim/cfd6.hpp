#pragma once

#include <Eigen/Dense>

#include "cfdpim/grid.hpp"

namespace cfdpim {

enum class BoundaryKind { closure, periodic, even_fold, odd_fold };

/// Leading coefficient of the one-sided closure row. The literature value
/// 2077/157 leaves a residual row sum of ~6.4e-6/h^2, so the operator is not
/// exact on constants; `consistent` is the Taylor-matched replacement
/// 13097/990 that restores exact annihilation (all other row entries agree
/// with the O(h^6) matching either way).
enum class ClosureRow1 { consistent, printed };

inline constexpr double kClosureRow1Consistent = 13097.0 / 990.0;
inline constexpr double kClosureRow1Printed = 2077.0 / 157.0;

/// The compact pair A phi'' = B phi for one axis. B carries the 1/h^2 scale.
struct CompactOperator {
    Eigen::MatrixXd a;
    Eigen::MatrixXd b;
    double h = 0.0;
    BoundaryKind kind = BoundaryKind::closure;
    ClosureRow1 row1 = ClosureRow1::consistent;

    int size() const { return static_cast<int>(a.rows()); }
    double row1_coefficient() const {
        return row1 == ClosureRow1::consistent ? kClosureRow1Consistent : kClosureRow1Printed;
    }
};

/// Sixth-order interior stencil with one-sided closure rows at nodes
/// 1, 2, N-1, N. Needs n >= 8 (the closure rows reach 7 nodes).
CompactOperator assemble_closure(int n, double h,
                                 ClosureRow1 row1 = ClosureRow1::consistent);

/// Circulant variant: the interior stencil wrapped around, for periodic data.
CompactOperator assemble_periodic(int n, double h);

/// Interior stencil folded by even reflection about both endpoints (cosine
/// image): the operator for fields with homogeneous Neumann walls. Exactly
/// diagonalized by cos(k pi x) on the grid, eigenvalues real and <= 0.
CompactOperator assemble_even_fold(int n, double h);

/// Interior stencil folded by odd reflection (sine image) on the n-2 interior
/// nodes: the operator for fields pinned to zero at both walls. Exactly
/// diagonalized by sin(k pi x); the returned operator has size n-2.
CompactOperator assemble_odd_fold(int n, double h);

/// Heat-equation generator H = omega * A^{-1} B, stored dense. The columnwise
/// solves go through the banded factorization of A.
struct Generator {
    Eigen::MatrixXd h_matrix;
    double omega = 0.0;
    double h = 0.0;
    BoundaryKind kind = BoundaryKind::closure;

    int size() const { return static_cast<int>(h_matrix.rows()); }
};

Generator form_generator(const CompactOperator& op, double omega);

/// Eigenvalue of the periodic generator's circulant symbol at angle theta:
///   omega * (3/(11 h^2)) (cos(theta) - 1)(cos(theta) + 9) / (1 + (4/11) cos(theta)).
double periodic_symbol(double theta, double h, double omega);

/// Row-major full-precision text dump shared by the CLI's debug flag.
void dump_matrix(const Eigen::MatrixXd& m, std::ostream& os);

}  // namespace cfdpim
