#include "cfdpim/pim.hpp"

#include <cmath>
#include <cstring>

namespace cfdpim {

Eigen::MatrixXd taylor_increment(const Eigen::MatrixXd& h_matrix, double dt) {
    if (!(dt > 0.0)) throw std::domain_error("taylor_increment: dt > 0 required");
    const Eigen::Index n = h_matrix.rows();
    const Eigen::MatrixXd hdt = h_matrix * dt;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
    // T_a = Hdt (I + Hdt/2 (I + Hdt/3 (I + Hdt/4)))
    Eigen::MatrixXd acc = eye + hdt / 4.0;
    acc = eye + (hdt * acc) / 3.0;
    acc = eye + (hdt * acc) / 2.0;
    Eigen::MatrixXd inc = hdt * acc;
    if (!inc.allFinite()) {
        throw overflow_error("taylor_increment: nonfinite entries (||H|| dt too large?)");
    }
    return inc;
}

Eigen::MatrixXd square_up(Eigen::MatrixXd increment, int rounds) {
    if (rounds < 0) throw std::domain_error("square_up: rounds >= 0 required");
    for (int r = 0; r < rounds; ++r) {
        // The identity never enters the loop; only the increment is squared.
        increment = 2.0 * increment + (increment * increment).eval();
        if (!increment.allFinite()) {
            throw overflow_error("square_up: increment overflowed at round " + std::to_string(r));
        }
    }
    return increment;
}

Propagator build_propagator(const Generator& gen, double tau, int bisection_order) {
    if (!(tau > 0.0)) throw std::domain_error("build_propagator: tau > 0 required");
    if (bisection_order < 0 || bisection_order > 62) {
        throw std::domain_error("build_propagator: bisection order out of range");
    }
    const double dt = tau / std::ldexp(1.0, bisection_order);
    Propagator prop;
    prop.tau = tau;
    prop.bisection_order = bisection_order;
    prop.hdt_scale = gen.h_matrix.cwiseAbs().rowwise().sum().maxCoeff() * dt;
    prop.generator_fingerprint = fingerprint(gen.h_matrix, tau, bisection_order);
    prop.increment = square_up(taylor_increment(gen.h_matrix, dt), bisection_order);
    return prop;
}

Eigen::VectorXd apply(const Propagator& prop, const Eigen::VectorXd& x) {
    if (x.size() != prop.increment.rows()) {
        throw dimension_error("apply: field length does not match propagator size");
    }
    return x + prop.increment * x;
}

Field apply(const Propagator& prop, const Field& field) {
    if (field.grid().rank() != 1) {
        throw dimension_error("apply: rank-1 field expected; use apply_axis for tensor grids");
    }
    Eigen::Map<const Eigen::VectorXd> x(field.data(), static_cast<Eigen::Index>(field.size()));
    Field out(field.grid());
    Eigen::Map<Eigen::VectorXd> y(out.data(), static_cast<Eigen::Index>(out.size()));
    y = x + prop.increment * x;
    return out;
}

std::uint64_t fingerprint(const Eigen::MatrixXd& h_matrix, double tau, int bisection_order) {
    // FNV-1a over the raw matrix bytes plus the step parameters.
    std::uint64_t hash = 1469598103934665603ull;
    auto mix = [&hash](const void* p, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < len; ++i) {
            hash ^= bytes[i];
            hash *= 1099511628211ull;
        }
    };
    mix(h_matrix.data(), sizeof(double) * static_cast<std::size_t>(h_matrix.size()));
    mix(&tau, sizeof tau);
    mix(&bisection_order, sizeof bisection_order);
    return hash;
}

}  // namespace cfdpim
