#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "cfdpim/errors.hpp"

namespace cfdpim {

/// One uniform axis, inclusive of both endpoints: node i sits at a + i*h.
struct Axis {
    double a = 0.0;
    double b = 1.0;
    int n = 0;
    double h = 0.0;

    bool operator==(const Axis&) const = default;
};

/// Uniform tensor grid of rank 1..3. Immutable after construction. A
/// default-constructed Grid is an empty placeholder awaiting assignment.
class Grid {
public:
    Grid() = default;

    static Grid make(std::vector<Axis> axes);

    /// Axis with n nodes on [a, b]; h = (b-a)/(n-1).
    static Axis axis(double a, double b, int n);

    static Grid line(double a, double b, int n) { return make({axis(a, b, n)}); }
    static Grid square(double a, double b, int n) { return make({axis(a, b, n), axis(a, b, n)}); }
    static Grid cube(double a, double b, int n) {
        return make({axis(a, b, n), axis(a, b, n), axis(a, b, n)});
    }

    int rank() const { return static_cast<int>(axes_.size()); }
    const Axis& axis(int k) const { return axes_[static_cast<std::size_t>(k)]; }
    const std::vector<Axis>& axes() const { return axes_; }

    double coord(int k, int i) const { return axes_[static_cast<std::size_t>(k)].a + i * axes_[static_cast<std::size_t>(k)].h; }

    std::size_t num_nodes() const;
    /// Product of axis spacings; the discrete volume weight for the L2 norm.
    double cell_weight() const;

    /// Same endpoints, each axis refined n -> 2n-1 (endpoints bit-identical).
    Grid refined() const;

    bool operator==(const Grid&) const = default;

private:
    explicit Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {}
    std::vector<Axis> axes_;
};

/// Real values sampled on a Grid, stored flat in row-major order
/// (last axis fastest). Shape always equals the grid's node counts; a
/// default-constructed Field is empty until assigned.
class Field {
public:
    Field() = default;
    explicit Field(Grid grid);
    Field(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    double& at(int i) { return values_[static_cast<std::size_t>(i)]; }
    double& at(int i, int j);
    double& at(int i, int j, int k);
    double at(int i) const { return values_[static_cast<std::size_t>(i)]; }
    double at(int i, int j) const;
    double at(int i, int j, int k) const;

    /// True if every entry is finite.
    bool all_finite() const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// L2 weighting conventions; benchmark tables rarely state theirs, so both are offered.
enum class L2Convention {
    spacing_weighted,  // sqrt(prod(h) * sum e^2), the default
    root_mean_square,  // sqrt(sum e^2 / count)
};

struct ErrorReport {
    double l2 = 0.0;
    double linf = 0.0;
    std::size_t n = 0;  // nodes compared
    double h = 0.0;     // first-axis spacing, for convergence tables
};

/// Pointwise error norms between a numeric field and a reference on the same
/// grid. Summation is fixed left-to-right for determinism.
ErrorReport error_norms(const Field& numeric, const Field& reference,
                        L2Convention convention = L2Convention::spacing_weighted);

/// log2(coarse_err / fine_err); both must be positive.
double convergence_order(double coarse_err, double fine_err);

}  // namespace cfdpim
