#include "cfdpim/splitting.hpp"

#include <string>

namespace cfdpim {

SplitPropagator make_split_propagator(const std::vector<Generator>& per_axis, double tau,
                                      SplitScheme scheme, int bisection_order) {
    if (per_axis.empty() || per_axis.size() > 3) {
        throw dimension_error("make_split_propagator: 1..3 axis generators expected");
    }
    SplitPropagator sp;
    sp.scheme = scheme;
    sp.tau = tau;
    for (const Generator& g : per_axis) {
        sp.axis.push_back(build_propagator(g, tau, bisection_order));
        if (scheme == SplitScheme::strang) {
            sp.axis_half.push_back(build_propagator(g, tau / 2.0, bisection_order));
        }
    }
    return sp;
}

Field apply_axis(const Propagator& prop, const Field& field, int axis) {
    const Grid& grid = field.grid();
    const int rank = grid.rank();
    if (axis < 0 || axis >= rank) throw dimension_error("apply_axis: axis out of range");
    const int n = grid.axis(axis).n;
    if (n != prop.size()) {
        throw dimension_error("apply_axis: extent " + std::to_string(n) +
                              " does not match propagator size " + std::to_string(prop.size()));
    }

    Field out(grid);
    Eigen::Index pre = 1, post = 1;
    for (int k = 0; k < axis; ++k) pre *= grid.axis(k).n;
    for (int k = axis + 1; k < rank; ++k) post *= grid.axis(k).n;

    using RowMajorMap =
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    using ConstRowMajorMap =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

    if (post == 1) {
        // Last axis: rows of the (pre x n) layout are the lines.
        ConstRowMajorMap src(field.data(), pre, n);
        RowMajorMap dst(out.data(), pre, n);
        dst.noalias() = src * prop.increment.transpose();
        dst += src;
    } else {
        for (Eigen::Index p = 0; p < pre; ++p) {
            ConstRowMajorMap src(field.data() + p * n * post, n, post);
            RowMajorMap dst(out.data() + p * n * post, n, post);
            dst.noalias() = prop.increment * src;
            dst += src;
        }
    }
    return out;
}

Field apply_axis_interior(const Propagator& prop, const Field& field, int axis) {
    const Grid& grid = field.grid();
    const int rank = grid.rank();
    if (axis < 0 || axis >= rank) throw dimension_error("apply_axis_interior: axis out of range");
    const int n = grid.axis(axis).n;
    if (n - 2 != prop.size()) {
        throw dimension_error("apply_axis_interior: interior extent " + std::to_string(n - 2) +
                              " does not match propagator size " + std::to_string(prop.size()));
    }

    Field out(grid);
    Eigen::Index pre = 1, post = 1;
    for (int k = 0; k < axis; ++k) pre *= grid.axis(k).n;
    for (int k = axis + 1; k < rank; ++k) post *= grid.axis(k).n;

    using RowMajorMap =
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
    using ConstRowMajorMap =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

    for (Eigen::Index p = 0; p < pre; ++p) {
        const double* src_base = field.data() + p * n * post;
        double* dst_base = out.data() + p * n * post;
        ConstRowMajorMap src(src_base + post, n - 2, post);  // skip wall row
        RowMajorMap dst(dst_base + post, n - 2, post);
        dst.noalias() = prop.increment * src;
        dst += src;
        // wall rows stay exactly zero (out is zero-initialized)
    }
    return out;
}

namespace {

Field apply_all_axes(const SplitPropagator& sp, Field f) {
    const int rank = f.grid().rank();
    if (sp.scheme == SplitScheme::lie) {
        for (int a = 0; a < rank; ++a) f = apply_axis(sp.axis[static_cast<std::size_t>(a)], f, a);
        return f;
    }
    // Symmetric pattern: half steps outward, full step on the innermost axis.
    for (int a = 0; a < rank - 1; ++a) f = apply_axis(sp.axis_half[static_cast<std::size_t>(a)], f, a);
    f = apply_axis(sp.axis[static_cast<std::size_t>(rank - 1)], f, rank - 1);
    for (int a = rank - 2; a >= 0; --a) f = apply_axis(sp.axis_half[static_cast<std::size_t>(a)], f, a);
    return f;
}

}  // namespace

HeatState step(const SplitPropagator& sp, const HeatState& state) {
    const int rank = state.rank();
    if (static_cast<int>(sp.axis.size()) != rank) {
        throw dimension_error("step: propagator/state rank mismatch");
    }
    HeatState next = state;
    next.phi = apply_all_axes(sp, state.phi);
    for (std::size_t g = 0; g < state.grad.size(); ++g) {
        next.grad[g] = apply_all_axes(sp, state.grad[g]);
    }
    next.time = state.time + sp.tau;
    return next;
}

}  // namespace cfdpim
