#include "cfdpim/pim.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/expm_ref.hpp"
#include "support/test_helpers.hpp"

namespace cfdpim {
namespace {

using testing::expm_ref;
using testing::expm_ref_symmetric;
using testing::random_symmetric_nsd;
using testing::rel_inf_error;

TEST(TaylorIncrement, ZeroGenerator) {
    const Eigen::MatrixXd h = Eigen::MatrixXd::Zero(5, 5);
    EXPECT_EQ(taylor_increment(h, 0.01).cwiseAbs().maxCoeff(), 0.0);
}

TEST(TaylorIncrement, ScalarRemainderBound) {
    // H = diag(-1), dt = 0.01: entries match e^{-0.01} - 1 within dt^5/120.
    const Eigen::MatrixXd h = -Eigen::MatrixXd::Identity(3, 3);
    const double dt = 0.01;
    const Eigen::MatrixXd inc = taylor_increment(h, dt);
    const double want = std::expm1(-dt);
    for (int i = 0; i < 3; ++i) {
        EXPECT_NEAR(inc(i, i), want, std::pow(dt, 5) / 120.0);
    }
}

TEST(TaylorIncrement, MatchesReferenceExponentialAtSmallStep) {
    const Eigen::MatrixXd h = random_symmetric_nsd(8, 42, 2.0);
    const double dt = 1e-3;
    const Eigen::MatrixXd got = taylor_increment(h, dt) + Eigen::MatrixXd::Identity(8, 8);
    const Eigen::MatrixXd want = expm_ref_symmetric(h * dt);
    EXPECT_LT(rel_inf_error(got, want), 1e-13);
}

TEST(SquareUp, ZeroFixedPoint) {
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(4, 4);
    EXPECT_EQ(square_up(zero, 17).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SquareUp, ScalarAdditionIdentity) {
    // t_a = e^x - 1: one round gives 2 t_a + t_a^2 = e^{2x} - 1 exactly.
    const double x = 0.37;
    Eigen::MatrixXd t(1, 1);
    t(0, 0) = std::expm1(x);
    const Eigen::MatrixXd doubled = square_up(t, 1);
    EXPECT_NEAR(doubled(0, 0), std::expm1(2.0 * x), 1e-15);
}

TEST(SquareUp, TwentyRoundsMatchReference) {
    const Eigen::MatrixXd h = random_symmetric_nsd(8, 7, 5.0);
    const double tau = 0.5;
    const int n = 20;
    const double dt = tau / std::ldexp(1.0, n);
    const Eigen::MatrixXd inc = square_up(taylor_increment(h, dt), n);
    const Eigen::MatrixXd got = inc + Eigen::MatrixXd::Identity(8, 8);
    EXPECT_LT(rel_inf_error(got, expm_ref_symmetric(h * tau)), 1e-12);
}

Generator diffusion_generator(int n, double h, double omega) {
    return form_generator(assemble_periodic(n, h), omega);
}

TEST(BuildPropagator, ZeroLikeGeneratorActsAsIdentity) {
    // A tiny-omega generator on constants behaves as the identity.
    const Generator gen = diffusion_generator(8, 1.0, 1e-12);
    const Propagator prop = build_propagator(gen, 1e-3);
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(8, 0.0, 1.0);
    EXPECT_LT((apply(prop, v) - v).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BuildPropagator, PeriodicSpectralRadiusAtMostOne) {
    const Generator gen = diffusion_generator(32, 1.0 / 32.0, 0.01);
    const Propagator prop = build_propagator(gen, 5e-4);
    Eigen::MatrixXd t = prop.increment;
    t.diagonal().array() += 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(t);
    EXPECT_LE(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0 + 1e-12);
}

TEST(BuildPropagator, SemigroupOnClosureGenerator) {
    // Example-1-like closure generator: k small steps equal one k-fold step.
    const int n = 41;
    const Generator gen = form_generator(assemble_closure(n, 1.0 / (n - 1)), 0.01);
    const double tau = 5e-5;
    const Propagator small = build_propagator(gen, tau);
    const Propagator big = build_propagator(gen, 4 * tau);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = std::cos(std::numbers::pi * i / (n - 1.0));
    Eigen::VectorXd stepped = v;
    for (int k = 0; k < 4; ++k) stepped = apply(small, stepped);
    const Eigen::VectorXd direct = apply(big, v);
    EXPECT_LT((stepped - direct).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(BuildPropagator, FingerprintTracksInputs) {
    const Generator gen = diffusion_generator(8, 0.125, 0.5);
    const Propagator a = build_propagator(gen, 1e-3);
    const Propagator b = build_propagator(gen, 2e-3);
    EXPECT_NE(a.generator_fingerprint, b.generator_fingerprint);
    const Propagator c = build_propagator(gen, 1e-3);
    EXPECT_EQ(a.generator_fingerprint, c.generator_fingerprint);
    EXPECT_GT(a.hdt_scale, 0.0);
}

TEST(Apply, ZeroField) {
    const Generator gen = diffusion_generator(8, 0.125, 0.5);
    const Propagator prop = build_propagator(gen, 1e-3);
    Field f(Grid::line(0.0, 1.0, 8));
    const Field out = apply(prop, f);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], 0.0);
}

TEST(Apply, ConstantPreservedByPeriodic) {
    const Generator gen = diffusion_generator(16, 0.0625, 1.0);
    const Propagator prop = build_propagator(gen, 1e-3);
    const Eigen::VectorXd ones = Eigen::VectorXd::Constant(16, 3.25);
    EXPECT_LT((apply(prop, ones) - ones).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Apply, SizeMismatchThrows) {
    const Generator gen = diffusion_generator(16, 0.0625, 1.0);
    const Propagator prop = build_propagator(gen, 1e-3);
    EXPECT_THROW(apply(prop, Eigen::VectorXd::Zero(8)), dimension_error);
}

TEST(Apply, DiscreteMassConservedUnderPeriodicDiffusion) {
    const int n = 64;
    const double h = 1.0 / n;
    const Generator gen = diffusion_generator(n, h, 0.05);
    const Propagator prop = build_propagator(gen, 1e-3);
    Eigen::VectorXd bump(n);
    for (int i = 0; i < n; ++i) {
        const double x = i * h - 0.5;
        bump(i) = std::exp(-50.0 * x * x);
    }
    const double mass0 = bump.sum() * h;
    Eigen::VectorXd v = bump;
    for (int k = 0; k < 200; ++k) v = apply(prop, v);
    EXPECT_NEAR(v.sum() * h, mass0, 1e-10);
}

TEST(Pim, OracleEquivalenceOnSmallGenerators) {
    // Random symmetric NSD generators plus a periodic diffusion generator,
    // all compared to the frozen reference exponential.
    for (unsigned seed : {1u, 2u, 3u}) {
        const int n = 8 + 8 * static_cast<int>(seed);
        const Eigen::MatrixXd h = random_symmetric_nsd(n, seed, 10.0);
        Generator gen;
        gen.h_matrix = h;
        gen.omega = 1.0;
        gen.kind = BoundaryKind::periodic;
        const double tau = 0.25;
        const Propagator prop = build_propagator(gen, tau);
        const Eigen::MatrixXd got = prop.increment + Eigen::MatrixXd::Identity(n, n);
        EXPECT_LT(rel_inf_error(got, expm_ref_symmetric(h * tau)), 1e-12) << "seed " << seed;
    }
    const Generator diff = diffusion_generator(24, 1.0 / 24.0, 0.01);
    const Propagator prop = build_propagator(diff, 5e-4);
    const Eigen::MatrixXd got = prop.increment + Eigen::MatrixXd::Identity(24, 24);
    EXPECT_LT(rel_inf_error(got, expm_ref(diff.h_matrix * 5e-4)), 1e-12);
}

TEST(Pim, MonotoneDampingPeriodic) {
    const int n = 48;
    const Generator gen = diffusion_generator(n, 1.0 / n, 0.2);
    const Propagator prop = build_propagator(gen, 2e-3);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = std::sin(7.0 * i) + 0.3 * std::cos(3.0 * i * i);
    double prev = v.cwiseAbs().maxCoeff();
    for (int k = 0; k < 50; ++k) {
        v = apply(prop, v);
        const double cur = v.cwiseAbs().maxCoeff();
        EXPECT_LE(cur, prev + 1e-12);
        prev = cur;
    }
}

TEST(Pim, OverflowSignalsUnstableGenerator) {
    Eigen::MatrixXd h(2, 2);
    h << 800.0, 0.0, 0.0, 900.0;  // growing modes blow up under squaring
    Generator gen;
    gen.h_matrix = h;
    gen.omega = 1.0;
    EXPECT_THROW(build_propagator(gen, 1e6, 4), overflow_error);
}

}  // namespace
}  // namespace cfdpim
