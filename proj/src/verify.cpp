#include "cfdpim/verify.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace cfdpim {

namespace {

constexpr double kEigTolScale = 1e-8;
constexpr double kRhoTol = 1e-12;

double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

StabilityReport check_generator_spectrum(const Generator& gen) {
    const int n = gen.size();
    if (n > 512) throw dimension_error("check_generator_spectrum: N <= 512 required");
    StabilityReport rep;
    rep.h_norm = inf_norm(gen.h_matrix);

    Eigen::EigenSolver<Eigen::MatrixXd> es(gen.h_matrix, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw overflow_error("check_generator_spectrum: eigensolver failed");
    }
    rep.max_real_eig = es.eigenvalues().real().maxCoeff();
    rep.max_imag_eig = es.eigenvalues().imag().cwiseAbs().maxCoeff();

    // The periodic matrices and both parity folds are trig-diagonalized with
    // real nonpositive spectra; the closure variant is reported only.
    const double tol = kEigTolScale * rep.h_norm;
    rep.passed = gen.kind == BoundaryKind::closure
                     ? true
                     : (rep.max_real_eig <= tol && rep.max_imag_eig <= tol);
    return rep;
}

StabilityReport check_propagator(const Generator& gen, const Propagator& prop) {
    StabilityReport rep = check_generator_spectrum(gen);
    Eigen::MatrixXd t = prop.increment;
    t.diagonal().array() += 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(t, false);
    if (es.info() != Eigen::Success) {
        throw overflow_error("check_propagator: eigensolver failed");
    }
    rep.spectral_radius_t = es.eigenvalues().cwiseAbs().maxCoeff();
    if (gen.kind != BoundaryKind::closure) {
        rep.passed = rep.passed && rep.spectral_radius_t <= 1.0 + kRhoTol;
    }
    return rep;
}

double check_curl(const std::vector<Field>& velocity) {
    if (velocity.size() < 2) {
        throw dimension_error("check_curl: rank >= 2 velocity field required");
    }
    const Grid& grid = velocity[0].grid();
    const int rank = grid.rank();
    if (static_cast<int>(velocity.size()) != rank) {
        throw dimension_error("check_curl: one component per axis required");
    }

    const int nx = grid.axis(0).n;
    const int ny = grid.axis(1).n;
    const int nz = rank == 3 ? grid.axis(2).n : 1;
    auto value = [&](int comp, int i, int j, int k) {
        const Field& f = velocity[static_cast<std::size_t>(comp)];
        return rank == 2 ? f.at(i, j) : f.at(i, j, k);
    };
    // Centered difference of component `comp` along `axis`, one-sided at ends.
    auto deriv = [&](int comp, int axis, int i, int j, int k) {
        const double h = grid.axis(axis).h;
        const int ext = grid.axis(axis).n;
        int idx[3] = {i, j, k};
        const int c = idx[axis];
        auto at_off = [&](int off) {
            int s[3] = {i, j, k};
            s[axis] = c + off;
            return value(comp, s[0], s[1], s[2]);
        };
        if (c == 0) return (-3.0 * at_off(0) + 4.0 * at_off(1) - at_off(2)) / (2.0 * h);
        if (c == ext - 1) return (3.0 * at_off(0) - 4.0 * at_off(-1) + at_off(-2)) / (2.0 * h);
        return (at_off(1) - at_off(-1)) / (2.0 * h);
    };

    double worst = 0.0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k)
                for (int a = 0; a < rank; ++a)
                    for (int b = a + 1; b < rank; ++b) {
                        const double v = std::abs(deriv(b, a, i, j, k) - deriv(a, b, i, j, k));
                        if (v > worst) worst = v;
                    }
    return worst;
}

}  // namespace cfdpim
