#include "cfdpim/cfd6.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cfdpim/pim.hpp"

namespace cfdpim {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Cfd6Closure, InteriorRowPattern) {
    const CompactOperator op = assemble_closure(8, 1.0);
    // Interior row 4 (index 3) of B: (..., 3/44, 12/11, -51/22, 12/11, 3/44, ...)
    EXPECT_DOUBLE_EQ(op.b(3, 1), 3.0 / 44.0);
    EXPECT_DOUBLE_EQ(op.b(3, 2), 12.0 / 11.0);
    EXPECT_DOUBLE_EQ(op.b(3, 3), -51.0 / 22.0);
    EXPECT_DOUBLE_EQ(op.b(3, 4), 12.0 / 11.0);
    EXPECT_DOUBLE_EQ(op.b(3, 5), 3.0 / 44.0);
    EXPECT_DOUBLE_EQ(op.a(3, 2), 2.0 / 11.0);
    EXPECT_DOUBLE_EQ(op.a(3, 3), 1.0);
    EXPECT_DOUBLE_EQ(op.a(3, 4), 2.0 / 11.0);
    // Closure rows as printed.
    EXPECT_DOUBLE_EQ(op.a(0, 1), 126.0 / 11.0);
    EXPECT_DOUBLE_EQ(op.b(0, 1), -2943.0 / 110.0);
    EXPECT_DOUBLE_EQ(op.b(0, 2), 573.0 / 44.0);
    EXPECT_DOUBLE_EQ(op.b(1, 0), 585.0 / 512.0);
    EXPECT_THROW(assemble_closure(7, 1.0), dimension_error);
}

// Independent re-derivation of the one-sided rows: match the action on
// monomials x^m, m = 0..6, at the boundary (a 7x7 Vandermonde solve).
Eigen::VectorXd derive_boundary_row(const std::vector<double>& lhs_weights) {
    Eigen::MatrixXd vand(7, 7);
    Eigen::VectorXd rhs(7);
    for (int m = 0; m < 7; ++m) {
        for (int j = 0; j < 7; ++j) vand(m, j) = std::pow(static_cast<double>(j), m);
        double v = 0.0;
        for (std::size_t node = 0; node < lhs_weights.size(); ++node) {
            // phi'' of x^m at node*h in units of h^(m-2)
            if (m >= 2) {
                const double nd = static_cast<double>(node);
                v += lhs_weights[node] * m * (m - 1) * (m == 2 ? 1.0 : std::pow(nd, m - 2));
            }
        }
        rhs(m) = v;
    }
    return vand.fullPivLu().solve(rhs);
}

TEST(Cfd6Closure, Row1TaylorMatchRecoversConsistentCoefficient) {
    const Eigen::VectorXd row1 = derive_boundary_row({1.0, 126.0 / 11.0});
    EXPECT_NEAR(row1(0), kClosureRow1Consistent, 1e-9);
    EXPECT_NEAR(row1(1), -2943.0 / 110.0, 1e-9);
    EXPECT_NEAR(row1(2), 573.0 / 44.0, 1e-9);
    EXPECT_NEAR(row1(3), 167.0 / 99.0, 1e-9);
    EXPECT_NEAR(row1(4), -18.0 / 11.0, 1e-9);
    EXPECT_NEAR(row1(5), 57.0 / 110.0, 1e-9);
    EXPECT_NEAR(row1(6), -131.0 / 1980.0, 1e-9);
    // The literature coefficient differs from the consistent one by ~6.4e-6.
    EXPECT_NEAR(kClosureRow1Printed - row1(0), 6.434e-6, 1e-8);

    const Eigen::VectorXd row2 = derive_boundary_row({11.0 / 128.0, 1.0, 11.0 / 128.0});
    EXPECT_NEAR(row2(0), 585.0 / 512.0, 1e-10);
    EXPECT_NEAR(row2(6), -3.0 / 512.0, 1e-10);
}

TEST(Cfd6Closure, ConstantAnnihilation) {
    const double h = 0.1;
    const CompactOperator good = assemble_closure(12, h);
    const CompactOperator printed = assemble_closure(12, h, ClosureRow1::printed);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(12);
    EXPECT_LT((good.b * ones).cwiseAbs().maxCoeff(), 1e-12 / (h * h));
    // The printed row-1 coefficient leaves a 6.4e-6/h^2 residual on constants.
    EXPECT_NEAR(std::abs((printed.b * ones)(0)), 6.4338e-6 / (h * h), 1e-7 / (h * h));
    EXPECT_DOUBLE_EQ(printed.row1_coefficient(), kClosureRow1Printed);
    EXPECT_DOUBLE_EQ(good.row1_coefficient(), kClosureRow1Consistent);
}

TEST(Cfd6Closure, InteriorRowSumsVanish) {
    const double h = 0.02;
    const CompactOperator op = assemble_closure(24, h);
    const Eigen::VectorXd sums = op.b * Eigen::VectorXd::Ones(24);
    for (int i = 0; i < 24; ++i) {
        EXPECT_LT(std::abs(sums(i)), 1e-13 / (h * h)) << "row " << i;
    }
}

TEST(Cfd6Closure, QuadraticExactness) {
    // Solving A f'' = B f for f = x^2 gives f'' = 2 at every node to roundoff.
    for (int n : {8, 21, 41}) {
        const double h = 1.0 / (n - 1);
        const CompactOperator op = assemble_closure(n, h);
        Eigen::VectorXd f(n);
        for (int i = 0; i < n; ++i) f(i) = (i * h) * (i * h);
        const Eigen::VectorXd fpp = op.a.partialPivLu().solve(op.b * f);
        EXPECT_LT((fpp.array() - 2.0).abs().maxCoeff(), 1e-8) << "n=" << n;
    }
}

TEST(Cfd6Closure, SixthDegreeExactness) {
    // Taylor matching to O(h^6) makes every polynomial through x^6 exact.
    const int n = 16;
    const double h = 1.0 / (n - 1);
    const CompactOperator op = assemble_closure(n, h);
    Eigen::VectorXd f(n), want(n);
    for (int i = 0; i < n; ++i) {
        const double x = i * h;
        f(i) = std::pow(x, 6) - 2.0 * std::pow(x, 4) + x;
        want(i) = 30.0 * std::pow(x, 4) - 24.0 * x * x;
    }
    const Eigen::VectorXd fpp = op.a.partialPivLu().solve(op.b * f);
    EXPECT_LT((fpp - want).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Cfd6Closure, InteriorOrderAtLeastFiveAndAHalf) {
    // Richardson order estimate on f = sin(2 pi x) against the exact second
    // derivative, interior nodes only.
    auto interior_error = [](int n) {
        const double h = 1.0 / (n - 1);
        const CompactOperator op = assemble_closure(n, h);
        Eigen::VectorXd f(n);
        for (int i = 0; i < n; ++i) f(i) = std::sin(2.0 * kPi * i * h);
        const Eigen::VectorXd fpp = op.a.partialPivLu().solve(op.b * f);
        double worst = 0.0;
        for (int i = 4; i < n - 4; ++i) {
            const double exact = -4.0 * kPi * kPi * std::sin(2.0 * kPi * i * h);
            worst = std::max(worst, std::abs(fpp(i) - exact));
        }
        return worst;
    };
    const double e1 = interior_error(17);
    const double e2 = interior_error(33);
    const double order = std::log2(e1 / e2);
    EXPECT_GE(order, 5.5);
}

TEST(Cfd6Periodic, RowSumsAndSymmetry) {
    const int n = 16;
    const double h = 0.25;
    const CompactOperator op = assemble_periodic(n, h);
    const Eigen::VectorXd row_sums = op.b * Eigen::VectorXd::Ones(n);
    EXPECT_LT(row_sums.cwiseAbs().maxCoeff(), 1e-13 / (h * h));
    EXPECT_EQ((op.a - op.a.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((op.b - op.b.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_THROW(assemble_periodic(5, 1.0), dimension_error);
}

TEST(Cfd6Periodic, EigenvaluesRealNonpositive) {
    const int n = 32;
    const double h = 1.0 / 32.0;
    const Generator gen = form_generator(assemble_periodic(n, h), 1.0);
    Eigen::EigenSolver<Eigen::MatrixXd> es(gen.h_matrix);
    const double scale = gen.h_matrix.cwiseAbs().rowwise().sum().maxCoeff();
    EXPECT_LT(es.eigenvalues().imag().cwiseAbs().maxCoeff(), 1e-8 * scale);
    EXPECT_LT(es.eigenvalues().real().maxCoeff(), 1e-8 * scale);
}

TEST(Cfd6Periodic, MatchesCirculantSymbol) {
    // Circulant diagonalization oracle: eigenvalues of H equal the symbol at
    // the roots of unity.
    for (int n : {6, 12}) {
        const double h = 0.5;
        const double omega = 0.7;
        const Generator gen = form_generator(assemble_periodic(n, h), omega);
        Eigen::EigenSolver<Eigen::MatrixXd> es(gen.h_matrix);
        const Eigen::VectorXd reals = es.eigenvalues().real();
        std::vector<double> got(reals.data(), reals.data() + n);
        std::vector<double> want;
        for (int k = 0; k < n; ++k) want.push_back(periodic_symbol(2.0 * kPi * k / n, h, omega));
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        for (int k = 0; k < n; ++k) EXPECT_NEAR(got[static_cast<std::size_t>(k)], want[static_cast<std::size_t>(k)], 1e-10) << "n=" << n;
    }
}

TEST(Cfd6Folds, EvenFoldDiagonalizedByCosines) {
    // cos(k pi x) are exact eigenvectors with the interior-symbol eigenvalue
    // at theta = k pi / (n-1).
    const int n = 17;
    const double h = 1.0 / (n - 1);
    const double omega = 0.3;
    const Generator gen = form_generator(assemble_even_fold(n, h), omega);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = std::cos(k * kPi * i / (n - 1.0));
        const Eigen::VectorXd hv = gen.h_matrix * v;
        const double lambda = periodic_symbol(k * kPi / (n - 1.0), h, omega);
        EXPECT_LT((hv - lambda * v).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, std::abs(lambda)))
            << "k=" << k;
        EXPECT_LE(lambda, 1e-12);
    }
}

TEST(Cfd6Folds, OddFoldDiagonalizedBySines) {
    const int n = 17;
    const double h = 1.0 / (n - 1);
    const double omega = 0.25;
    const Generator gen = form_generator(assemble_odd_fold(n, h), omega);
    ASSERT_EQ(gen.size(), n - 2);
    for (int k = 1; k <= n - 2; ++k) {
        Eigen::VectorXd v(n - 2);
        for (int i = 0; i < n - 2; ++i) v(i) = std::sin(k * kPi * (i + 1) / (n - 1.0));
        const Eigen::VectorXd hv = gen.h_matrix * v;
        const double lambda = periodic_symbol(k * kPi / (n - 1.0), h, omega);
        EXPECT_LT((hv - lambda * v).cwiseAbs().maxCoeff(), 1e-9 * std::abs(lambda)) << "k=" << k;
        EXPECT_LT(lambda, 0.0);
    }
}

TEST(Cfd6Folds, EvenFoldAnnihilatesConstantsAndIsSixthOrder) {
    const Generator gen = form_generator(assemble_even_fold(16, 0.1), 1.0);
    EXPECT_LT((gen.h_matrix * Eigen::VectorXd::Ones(16)).cwiseAbs().maxCoeff(), 1e-11);
    // Symbol accuracy: lambda(theta) = -omega theta^2/h^2 (1 + O(theta^6)).
    auto err = [](double theta) {
        return std::abs(periodic_symbol(theta, 1.0, 1.0) + theta * theta);
    };
    const double order = std::log2(err(0.2) / err(0.1));
    EXPECT_NEAR(order, 8.0, 0.5);  // symbol error is O(theta^8) absolute
}

TEST(Cfd6Closure, FreeEvolutionHasNonNormalTransient) {
    // Why the solver pipeline folds instead of evolving the closure operator
    // on all nodes: ||exp(H t)||_inf grows by orders of magnitude before the
    // spectrum takes over, amplifying truncation error accordingly.
    const int n = 41;
    const Generator gen = form_generator(assemble_closure(n, 1.0 / (n - 1)), 0.1);
    const Propagator prop = build_propagator(gen, 0.01);
    Eigen::MatrixXd t_power = prop.increment + Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd acc = t_power;
    for (int k = 1; k < 10; ++k) acc = acc * t_power;  // exp(H * 0.1)
    const double gain = acc.cwiseAbs().rowwise().sum().maxCoeff();
    EXPECT_GT(gain, 1e4);
}

TEST(FormGenerator, RejectsNonpositiveOmega) {
    const CompactOperator op = assemble_periodic(8, 1.0);
    EXPECT_THROW(form_generator(op, 0.0), std::domain_error);
    EXPECT_THROW(form_generator(op, -1.0), std::domain_error);
}

TEST(FormGenerator, ConstantsInKernelPeriodic) {
    const Generator gen = form_generator(assemble_periodic(16, 0.1), 0.5);
    const Eigen::VectorXd hv = gen.h_matrix * Eigen::VectorXd::Ones(16);
    EXPECT_LT(hv.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FormGenerator, QuadraticThroughSolve) {
    const int n = 16;
    const double h = 1.0 / (n - 1);
    const Generator gen = form_generator(assemble_closure(n, h), 1.0);
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f(i) = (i * h) * (i * h);
    const Eigen::VectorXd hv = gen.h_matrix * f;
    for (int i = 2; i < n - 2; ++i) EXPECT_NEAR(hv(i), 2.0, 1e-9);
}

TEST(FormGenerator, MatchesDenseSolve) {
    // The banded path must agree with a dense LU of A applied to B.
    const int n = 20;
    for (BoundaryKind kind : {BoundaryKind::closure, BoundaryKind::periodic}) {
        const CompactOperator op =
            kind == BoundaryKind::closure ? assemble_closure(n, 0.05) : assemble_periodic(n, 0.05);
        const Generator gen = form_generator(op, 0.3);
        const Eigen::MatrixXd dense = 0.3 * op.a.partialPivLu().solve(op.b);
        EXPECT_LT((gen.h_matrix - dense).cwiseAbs().maxCoeff() / dense.cwiseAbs().maxCoeff(),
                  1e-13);
    }
}

}  // namespace
}  // namespace cfdpim
