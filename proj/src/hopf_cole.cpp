#include "cfdpim/hopf_cole.hpp"

#include <cmath>
#include <string>

namespace cfdpim {

namespace {

// Composite Simpson of f over [a, x_i] accumulated cell by cell. Each grid
// cell starts on a 4x-refined Simpson rule and doubles with Richardson
// extrapolation until the cell integral settles to near roundoff.
std::vector<double> cumulative_integral(const std::function<double(double)>& f, const Axis& ax) {
    auto cell_simpson = [&f](double x0, double width, int panels) {
        const double hh = width / panels;
        double odd = 0.0, even = 0.0;
        for (int i = 1; i < panels; i += 2) odd += f(x0 + i * hh);
        for (int i = 2; i < panels; i += 2) even += f(x0 + i * hh);
        return hh / 3.0 * (f(x0) + f(x0 + width) + 4.0 * odd + 2.0 * even);
    };
    std::vector<double> acc(static_cast<std::size_t>(ax.n), 0.0);
    double total = 0.0;
    for (int i = 0; i + 1 < ax.n; ++i) {
        const double x0 = ax.a + i * ax.h;
        double coarse = cell_simpson(x0, ax.h, 4);
        double cell = coarse;
        for (int panels = 8; panels <= 256; panels *= 2) {
            const double fine = cell_simpson(x0, ax.h, panels);
            cell = fine + (fine - coarse) / 15.0;
            if (std::abs(fine - coarse) <= 1e-14 * (std::abs(cell) + 1e-3 * ax.h)) break;
            coarse = fine;
        }
        total += cell;
        acc[static_cast<std::size_t>(i + 1)] = total;
    }
    return acc;
}

void check_positive(const Field& phi, double offset = 0.0) {
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (!(phi[i] + offset > kPhiFloor)) {
            throw singular_transform_error(
                "Hopf-Cole phi not positive at node " + std::to_string(i), static_cast<long>(i));
        }
    }
}

}  // namespace

HeatState forward_1d(const InitialVelocity& u0, double omega, const Grid& grid) {
    if (grid.rank() != 1) throw dimension_error("forward_1d: rank-1 grid expected");
    if (!(omega > 0.0)) throw std::domain_error("forward_1d: omega > 0 required");
    if (u0.components.size() != 1) throw dimension_error("forward_1d: one velocity component expected");

    const Axis& ax = grid.axis(0);
    HeatState state;
    state.omega = omega;
    state.time = 0.0;
    state.phi = Field(grid);
    state.grad.emplace_back(grid);

    const auto& u = u0.components[0];
    std::vector<double> psi(static_cast<std::size_t>(ax.n));
    if (u0.potential) {
        const auto& pot = *u0.potential;
        for (int i = 0; i < ax.n; ++i) psi[static_cast<std::size_t>(i)] = pot({grid.coord(0, i), 0, 0});
    } else {
        psi = cumulative_integral([&u](double x) { return u({x, 0, 0}); }, ax);
    }
    for (int i = 0; i < ax.n; ++i) {
        const double x = grid.coord(0, i);
        const double phi = std::exp(-psi[static_cast<std::size_t>(i)] / (2.0 * omega));
        state.phi.at(i) = phi;
        state.grad[0].at(i) = -u({x, 0, 0}) / (2.0 * omega) * phi;
    }
    check_positive(state.phi);
    return state;
}

HeatState forward_nd(const InitialVelocity& u0, double omega, const Grid& grid) {
    const int rank = grid.rank();
    if (rank < 2) throw dimension_error("forward_nd: rank 2 or 3 grid expected");
    if (!(omega > 0.0)) throw std::domain_error("forward_nd: omega > 0 required");
    if (static_cast<int>(u0.components.size()) != rank) {
        throw dimension_error("forward_nd: one velocity component per axis expected");
    }

    HeatState state;
    state.omega = omega;
    state.time = 0.0;
    state.phi = Field(grid);
    for (int k = 0; k < rank; ++k) state.grad.emplace_back(grid);

    // D at each node: registered potential, or symmetrized path integrals
    // along the coordinate edges (each leg a 1D cumulative Simpson).
    Field d_field(grid);
    if (u0.potential) {
        const auto& pot = *u0.potential;
        const int nx = grid.axis(0).n;
        const int ny = grid.axis(1).n;
        const int nz = rank == 3 ? grid.axis(2).n : 1;
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j)
                for (int k = 0; k < nz; ++k) {
                    const std::array<double, 3> p{grid.coord(0, i), grid.coord(1, j),
                                                  rank == 3 ? grid.coord(2, k) : 0.0};
                    const double v = pot(p);
                    if (rank == 2)
                        d_field.at(i, j) = v;
                    else
                        d_field.at(i, j, k) = v;
                }
    } else if (rank == 2) {
        const Axis& axx = grid.axis(0);
        const Axis& axy = grid.axis(1);
        const double x0 = axx.a, y0 = axy.a;
        const auto& u = u0.components[0];
        const auto& v = u0.components[1];
        // D(x,y) = 1/2 { int_x0^x [u(s,y)+u(s,y0)] ds + int_y0^y [v(x,s)+v(x0,s)] ds }
        std::vector<double> ux_at_y0 =
            cumulative_integral([&](double s) { return u({s, y0, 0}); }, axx);
        std::vector<double> vy_at_x0 =
            cumulative_integral([&](double s) { return v({x0, s, 0}); }, axy);
        for (int j = 0; j < axy.n; ++j) {
            const double y = axy.a + j * axy.h;
            std::vector<double> ux =
                cumulative_integral([&](double s) { return u({s, y, 0}); }, axx);
            for (int i = 0; i < axx.n; ++i) {
                d_field.at(i, j) = ux[static_cast<std::size_t>(i)] + ux_at_y0[static_cast<std::size_t>(i)];
            }
        }
        for (int i = 0; i < axx.n; ++i) {
            const double x = axx.a + i * axx.h;
            std::vector<double> vy =
                cumulative_integral([&](double s) { return v({x, s, 0}); }, axy);
            for (int j = 0; j < axy.n; ++j) {
                d_field.at(i, j) = 0.5 * (d_field.at(i, j) + vy[static_cast<std::size_t>(j)] +
                                          vy_at_x0[static_cast<std::size_t>(j)]);
            }
        }
    } else {
        // Three-way average of edge-path integrals:
        // legs u(s,y,z)+u(s,y0,z)+u(s,y0,z0), v(x,s,z)+v(x,s,z0)+v(x0,s,z0),
        // w(x,y,s)+w(x0,y,s)+w(x0,y0,s), each averaged with weight 1/3.
        const Axis& axx = grid.axis(0);
        const Axis& axy = grid.axis(1);
        const Axis& axz = grid.axis(2);
        const double x0 = axx.a, y0 = axy.a, z0 = axz.a;
        const auto& u = u0.components[0];
        const auto& v = u0.components[1];
        const auto& w = u0.components[2];
        for (int j = 0; j < axy.n; ++j)
            for (int k = 0; k < axz.n; ++k) {
                const double y = axy.a + j * axy.h;
                const double z = axz.a + k * axz.h;
                auto leg = cumulative_integral(
                    [&](double s) { return u({s, y, z}) + u({s, y0, z}) + u({s, y0, z0}); }, axx);
                for (int i = 0; i < axx.n; ++i) d_field.at(i, j, k) = leg[static_cast<std::size_t>(i)];
            }
        for (int i = 0; i < axx.n; ++i)
            for (int k = 0; k < axz.n; ++k) {
                const double x = axx.a + i * axx.h;
                const double z = axz.a + k * axz.h;
                auto leg = cumulative_integral(
                    [&](double s) { return v({x, s, z}) + v({x, s, z0}) + v({x0, s, z0}); }, axy);
                for (int j = 0; j < axy.n; ++j) d_field.at(i, j, k) += leg[static_cast<std::size_t>(j)];
            }
        for (int i = 0; i < axx.n; ++i)
            for (int j = 0; j < axy.n; ++j) {
                const double x = axx.a + i * axx.h;
                const double y = axy.a + j * axy.h;
                auto leg = cumulative_integral(
                    [&](double s) { return w({x, y, s}) + w({x0, y, s}) + w({x0, y0, s}); }, axz);
                for (int k = 0; k < axz.n; ++k) {
                    d_field.at(i, j, k) = (d_field.at(i, j, k) + leg[static_cast<std::size_t>(k)]) / 3.0;
                }
            }
    }

    const int nx = grid.axis(0).n;
    const int ny = grid.axis(1).n;
    const int nz = rank == 3 ? grid.axis(2).n : 1;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k) {
                const std::array<double, 3> p{grid.coord(0, i), grid.coord(1, j),
                                              rank == 3 ? grid.coord(2, k) : 0.0};
                const double d = rank == 2 ? d_field.at(i, j) : d_field.at(i, j, k);
                const double phi = std::exp(-d / (2.0 * omega));
                if (rank == 2) {
                    state.phi.at(i, j) = phi;
                    for (int c = 0; c < 2; ++c)
                        state.grad[static_cast<std::size_t>(c)].at(i, j) =
                            -u0.components[static_cast<std::size_t>(c)](p) / (2.0 * omega) * phi;
                } else {
                    state.phi.at(i, j, k) = phi;
                    for (int c = 0; c < 3; ++c)
                        state.grad[static_cast<std::size_t>(c)].at(i, j, k) =
                            -u0.components[static_cast<std::size_t>(c)](p) / (2.0 * omega) * phi;
                }
            }
    check_positive(state.phi);
    return state;
}

HeatState forward(const InitialVelocity& u0, double omega, const Grid& grid, double kappa) {
    if (kappa != 1.0) {
        throw std::domain_error("forward: kappa must be 1 (it cancels in the transformation)");
    }
    return grid.rank() == 1 ? forward_1d(u0, omega, grid) : forward_nd(u0, omega, grid);
}

std::vector<Field> inverse(const HeatState& state) {
    const double scale = -2.0 * state.omega;
    check_positive(state.phi, state.phi_offset);
    std::vector<Field> out;
    out.reserve(state.grad.size());
    for (const Field& g : state.grad) {
        Field u(g.grid());
        for (std::size_t i = 0; i < g.size(); ++i) u[i] = scale * g[i] / state.phi_total(i);
        out.push_back(std::move(u));
    }
    return out;
}

std::vector<Field> inverse_by_differencing(const Field& phi, double omega) {
    const Grid& grid = phi.grid();
    const int rank = grid.rank();
    std::vector<Field> out;
    const int nx = grid.axis(0).n;
    const int ny = rank >= 2 ? grid.axis(1).n : 1;
    const int nz = rank == 3 ? grid.axis(2).n : 1;
    auto val = [&](int i, int j, int k) {
        if (rank == 1) return phi.at(i);
        if (rank == 2) return phi.at(i, j);
        return phi.at(i, j, k);
    };
    for (int axis = 0; axis < rank; ++axis) {
        const double h = grid.axis(axis).h;
        const int ext = grid.axis(axis).n;
        Field u(grid);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j)
                for (int k = 0; k < nz; ++k) {
                    int idx[3] = {i, j, k};
                    const int c = idx[axis];
                    double dphi;
                    auto shifted = [&](int off) {
                        int s[3] = {i, j, k};
                        s[axis] = c + off;
                        return val(s[0], s[1], s[2]);
                    };
                    if (c == 0) {
                        dphi = (-3.0 * shifted(0) + 4.0 * shifted(1) - shifted(2)) / (2.0 * h);
                    } else if (c == ext - 1) {
                        dphi = (3.0 * shifted(0) - 4.0 * shifted(-1) + shifted(-2)) / (2.0 * h);
                    } else {
                        dphi = (shifted(1) - shifted(-1)) / (2.0 * h);
                    }
                    const double p = val(i, j, k);
                    if (!(p > kPhiFloor)) {
                        throw singular_transform_error("phi not positive during differencing", i);
                    }
                    const double value = -2.0 * omega * dphi / p;
                    if (rank == 1) u.at(i) = value;
                    else if (rank == 2) u.at(i, j) = value;
                    else u.at(i, j, k) = value;
                }
        out.push_back(std::move(u));
    }
    return out;
}

}  // namespace cfdpim
