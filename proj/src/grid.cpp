#include "cfdpim/grid.hpp"

#include <cmath>
#include <string>

namespace cfdpim {

Axis Grid::axis(double a, double b, int n) {
    if (n < 8) {
        throw dimension_error("Grid axis needs at least 8 nodes, got " + std::to_string(n));
    }
    if (!(b > a)) {
        throw dimension_error("Grid axis requires b > a");
    }
    Axis ax;
    ax.a = a;
    ax.b = b;
    ax.n = n;
    ax.h = (b - a) / (n - 1);
    return ax;
}

Grid Grid::make(std::vector<Axis> axes) {
    if (axes.empty() || axes.size() > 3) {
        throw dimension_error("Grid rank must be 1, 2 or 3");
    }
    for (const Axis& ax : axes) {
        if (ax.n < 8 || !(ax.h > 0.0)) {
            throw dimension_error("Grid axis invalid: n >= 8 and h > 0 required");
        }
    }
    return Grid(std::move(axes));
}

std::size_t Grid::num_nodes() const {
    if (axes_.empty()) return 0;
    std::size_t total = 1;
    for (const Axis& ax : axes_) total *= static_cast<std::size_t>(ax.n);
    return total;
}

double Grid::cell_weight() const {
    double w = 1.0;
    for (const Axis& ax : axes_) w *= ax.h;
    return w;
}

Grid Grid::refined() const {
    std::vector<Axis> fine;
    fine.reserve(axes_.size());
    for (const Axis& ax : axes_) fine.push_back(axis(ax.a, ax.b, 2 * ax.n - 1));
    return make(std::move(fine));
}

Field::Field(Grid grid) : grid_(std::move(grid)), values_(grid_.num_nodes(), 0.0) {}

Field::Field(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.num_nodes()) {
        throw dimension_error("Field values do not match grid shape");
    }
}

double& Field::at(int i, int j) {
    const int ny = grid_.axis(1).n;
    return values_[static_cast<std::size_t>(i) * ny + j];
}

double Field::at(int i, int j) const {
    const int ny = grid_.axis(1).n;
    return values_[static_cast<std::size_t>(i) * ny + j];
}

double& Field::at(int i, int j, int k) {
    const int ny = grid_.axis(1).n;
    const int nz = grid_.axis(2).n;
    return values_[(static_cast<std::size_t>(i) * ny + j) * nz + k];
}

double Field::at(int i, int j, int k) const {
    const int ny = grid_.axis(1).n;
    const int nz = grid_.axis(2).n;
    return values_[(static_cast<std::size_t>(i) * ny + j) * nz + k];
}

bool Field::all_finite() const {
    for (double v : values_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

ErrorReport error_norms(const Field& numeric, const Field& reference, L2Convention convention) {
    if (numeric.grid() != reference.grid()) {
        throw dimension_error("error_norms: fields live on different grids");
    }
    double sumsq = 0.0;
    double linf = 0.0;
    const std::size_t count = numeric.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double e = numeric[i] - reference[i];
        sumsq += e * e;
        const double a = std::abs(e);
        if (a > linf) linf = a;
    }
    ErrorReport rep;
    rep.n = count;
    rep.h = numeric.grid().axis(0).h;
    rep.linf = linf;
    rep.l2 = convention == L2Convention::spacing_weighted
                 ? std::sqrt(numeric.grid().cell_weight() * sumsq)
                 : std::sqrt(sumsq / static_cast<double>(count));
    return rep;
}

double convergence_order(double coarse_err, double fine_err) {
    if (!(coarse_err > 0.0) || !(fine_err > 0.0)) {
        throw std::domain_error("convergence_order requires positive errors");
    }
    return std::log2(coarse_err / fine_err);
}

}  // namespace cfdpim
