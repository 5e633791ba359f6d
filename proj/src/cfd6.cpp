#include "cfdpim/cfd6.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <string>

#include "cfdpim/tridiag.hpp"

namespace cfdpim {

namespace {

// Interior scheme: (2/11) f''_{i-1} + f''_i + (2/11) f''_{i+1}
//                = [ (3/44)(f_{i+2} + f_{i-2}) + (12/11)(f_{i+1} + f_{i-1}) - (51/22) f_i ] / h^2
constexpr double kAlphaInterior = 2.0 / 11.0;
constexpr std::array<double, 5> kBInterior = {3.0 / 44.0, 12.0 / 11.0, -51.0 / 22.0,
                                              12.0 / 11.0, 3.0 / 44.0};

constexpr std::array<double, 7> kBRow2 = {585.0 / 512.0, -141.0 / 64.0, 459.0 / 512.0,
                                          9.0 / 32.0,    -81.0 / 512.0, 3.0 / 64.0,
                                          -3.0 / 512.0};

std::array<double, 7> row1_coeffs(ClosureRow1 row1) {
    return {row1 == ClosureRow1::consistent ? kClosureRow1Consistent : kClosureRow1Printed,
            -2943.0 / 110.0,
            573.0 / 44.0,
            167.0 / 99.0,
            -18.0 / 11.0,
            57.0 / 110.0,
            -131.0 / 1980.0};
}

}  // namespace

CompactOperator assemble_closure(int n, double h, ClosureRow1 row1) {
    if (n < 8) {
        throw dimension_error("assemble_closure: n >= 8 required, got " + std::to_string(n));
    }
    if (!(h > 0.0)) throw dimension_error("assemble_closure: h > 0 required");

    CompactOperator op;
    op.h = h;
    op.kind = BoundaryKind::closure;
    op.row1 = row1;
    op.a = Eigen::MatrixXd::Zero(n, n);
    op.b = Eigen::MatrixXd::Zero(n, n);
    const double ih2 = 1.0 / (h * h);

    // Row 1 and its mirror.
    op.a(0, 0) = 1.0;
    op.a(0, 1) = 126.0 / 11.0;
    op.a(n - 1, n - 1) = 1.0;
    op.a(n - 1, n - 2) = 126.0 / 11.0;
    const auto b1 = row1_coeffs(row1);
    for (int j = 0; j < 7; ++j) {
        op.b(0, j) = b1[static_cast<std::size_t>(j)] * ih2;
        op.b(n - 1, n - 1 - j) = b1[static_cast<std::size_t>(j)] * ih2;
    }

    // Row 2 and its mirror.
    op.a(1, 0) = 11.0 / 128.0;
    op.a(1, 1) = 1.0;
    op.a(1, 2) = 11.0 / 128.0;
    op.a(n - 2, n - 1) = 11.0 / 128.0;
    op.a(n - 2, n - 2) = 1.0;
    op.a(n - 2, n - 3) = 11.0 / 128.0;
    for (int j = 0; j < 7; ++j) {
        op.b(1, j) = kBRow2[static_cast<std::size_t>(j)] * ih2;
        op.b(n - 2, n - 1 - j) = kBRow2[static_cast<std::size_t>(j)] * ih2;
    }

    // Interior rows.
    for (int i = 2; i < n - 2; ++i) {
        op.a(i, i - 1) = kAlphaInterior;
        op.a(i, i) = 1.0;
        op.a(i, i + 1) = kAlphaInterior;
        for (int j = -2; j <= 2; ++j) {
            op.b(i, i + j) = kBInterior[static_cast<std::size_t>(j + 2)] * ih2;
        }
    }
    return op;
}

CompactOperator assemble_periodic(int n, double h) {
    if (n < 6) {
        throw dimension_error("assemble_periodic: n >= 6 required, got " + std::to_string(n));
    }
    if (!(h > 0.0)) throw dimension_error("assemble_periodic: h > 0 required");

    CompactOperator op;
    op.h = h;
    op.kind = BoundaryKind::periodic;
    op.a = Eigen::MatrixXd::Zero(n, n);
    op.b = Eigen::MatrixXd::Zero(n, n);
    const double ih2 = 1.0 / (h * h);

    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    for (int i = 0; i < n; ++i) {
        op.a(i, wrap(i - 1)) = kAlphaInterior;
        op.a(i, i) = 1.0;
        op.a(i, wrap(i + 1)) = kAlphaInterior;
        for (int j = -2; j <= 2; ++j) {
            op.b(i, wrap(i + j)) += kBInterior[static_cast<std::size_t>(j + 2)] * ih2;
        }
    }
    return op;
}

CompactOperator assemble_even_fold(int n, double h) {
    if (n < 8) {
        throw dimension_error("assemble_even_fold: n >= 8 required, got " + std::to_string(n));
    }
    if (!(h > 0.0)) throw dimension_error("assemble_even_fold: h > 0 required");
    CompactOperator op;
    op.h = h;
    op.kind = BoundaryKind::even_fold;
    op.a = Eigen::MatrixXd::Zero(n, n);
    op.b = Eigen::MatrixXd::Zero(n, n);
    const double ih2 = 1.0 / (h * h);
    auto reflect = [n](int i) {
        if (i < 0) return -i;
        if (i >= n) return 2 * (n - 1) - i;
        return i;
    };
    for (int i = 0; i < n; ++i) {
        op.a(i, i) += 1.0;
        op.a(i, reflect(i - 1)) += kAlphaInterior;
        op.a(i, reflect(i + 1)) += kAlphaInterior;
        for (int j = -2; j <= 2; ++j) {
            op.b(i, reflect(i + j)) += kBInterior[static_cast<std::size_t>(j + 2)] * ih2;
        }
    }
    return op;
}

CompactOperator assemble_odd_fold(int n, double h) {
    if (n < 8) {
        throw dimension_error("assemble_odd_fold: n >= 8 required, got " + std::to_string(n));
    }
    if (!(h > 0.0)) throw dimension_error("assemble_odd_fold: h > 0 required");
    const int m = n - 2;  // interior nodes 1..n-2; wall values are exactly 0
    CompactOperator op;
    op.h = h;
    op.kind = BoundaryKind::odd_fold;
    op.a = Eigen::MatrixXd::Zero(m, m);
    op.b = Eigen::MatrixXd::Zero(m, m);
    const double ih2 = 1.0 / (h * h);
    // Global node g = local + 1; phi(0) = phi(n-1) = 0, phi(-g) = -phi(g),
    // phi(n-1+g) = -phi(n-1-g). Second derivatives share the parity, and
    // vanish at the walls, so the A-stencil simply restricts.
    auto add = [&](int row, int g, double coeff) {
        if (g < 0) {
            g = -g;
            coeff = -coeff;
        }
        if (g > n - 1) {
            g = 2 * (n - 1) - g;
            coeff = -coeff;
        }
        if (g == 0 || g == n - 1) return;  // pinned to zero
        op.b(row, g - 1) += coeff;
    };
    for (int local = 0; local < m; ++local) {
        const int g = local + 1;
        op.a(local, local) = 1.0;
        if (local > 0) op.a(local, local - 1) = kAlphaInterior;
        if (local + 1 < m) op.a(local, local + 1) = kAlphaInterior;
        for (int j = -2; j <= 2; ++j) {
            add(local, g + j, kBInterior[static_cast<std::size_t>(j + 2)] * ih2);
        }
    }
    return op;
}

Generator form_generator(const CompactOperator& op, double omega) {
    if (!(omega > 0.0)) {
        throw std::domain_error("form_generator: omega > 0 required");
    }
    const int n = op.size();
    Generator gen;
    gen.omega = omega;
    gen.h = op.h;
    gen.kind = op.kind;
    gen.h_matrix.resize(n, n);

    if (op.kind != BoundaryKind::periodic) {
        // A is tridiagonal: rows 1 and N couple only to their inner neighbor.
        std::vector<double> lo(static_cast<std::size_t>(n)), di(static_cast<std::size_t>(n)),
            up(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            di[static_cast<std::size_t>(i)] = op.a(i, i);
            lo[static_cast<std::size_t>(i)] = i > 0 ? op.a(i, i - 1) : 0.0;
            up[static_cast<std::size_t>(i)] = i + 1 < n ? op.a(i, i + 1) : 0.0;
        }
        TridiagonalSolver solver(lo, di, up);
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd col = op.b.col(j);
            solver.solve_inplace(col);
            gen.h_matrix.col(j) = omega * col;
        }
    } else {
        std::vector<double> lo(static_cast<std::size_t>(n)), di(static_cast<std::size_t>(n)),
            up(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            di[static_cast<std::size_t>(i)] = op.a(i, i);
            lo[static_cast<std::size_t>(i)] = op.a(i, (i - 1 + n) % n);
            up[static_cast<std::size_t>(i)] = op.a(i, (i + 1) % n);
        }
        CyclicTridiagonalSolver solver(lo, di, up);
        for (int j = 0; j < n; ++j) {
            gen.h_matrix.col(j) = omega * solver.solve(op.b.col(j));
        }
    }

    if (!gen.h_matrix.allFinite()) {
        throw overflow_error("form_generator: singular compact matrix A");
    }
    return gen;
}

double periodic_symbol(double theta, double h, double omega) {
    const double c = std::cos(theta);
    return omega * (3.0 / (11.0 * h * h)) * (c - 1.0) * (c + 9.0) / (1.0 + (4.0 / 11.0) * c);
}

void dump_matrix(const Eigen::MatrixXd& m, std::ostream& os) {
    char buf[32];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            os << buf << (j + 1 < m.cols() ? " " : "");
        }
        os << "\n";
    }
}

}  // namespace cfdpim
