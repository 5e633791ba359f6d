#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cfdpim/fourier.hpp"
#include "cfdpim/grid.hpp"
#include "cfdpim/hopf_cole.hpp"
#include "cfdpim/splitting.hpp"

namespace cfdpim {

/// One benchmark run. Exactly one of `re`/`omega` may be set (0 = unset);
/// unset numeric fields fall back to the example's registered defaults.
struct RunConfig {
    int example_id = 1;
    double re = 0.0;
    double omega = 0.0;
    std::vector<int> n;  // nodes per axis; a single entry is broadcast
    double tau = 0.0;
    double t_final = 0.0;
    std::vector<double> sample_times;  // defaults to {t_final}
    double epsilon = 2.0;              // examples 1-2 family parameter
    SplitScheme scheme = SplitScheme::lie;
    int bisection_order = 20;
    L2Convention l2_convention = L2Convention::spacing_weighted;
    bool heat_only = false;                // evolve phi only (example 9 table runs)
    bool gradient_by_differencing = false; // unmodified transform, for A/B studies
    std::vector<std::array<double, 3>> phi_probes;
    std::vector<std::array<double, 3>> velocity_probes;
    double assert_linf_max = 0.0;  // >0: run fails when any sampled L_inf exceeds it
    std::string csv_path;          // optional CSV output file
    std::string dump_operators_path;  // optional matrix-dump debug output
};

std::string to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const std::string& text);

struct SampleReport {
    double t = 0.0;
    std::vector<ErrorReport> component_errors;  // one per velocity component
    std::optional<ErrorReport> phi_error;       // set when the oracle provides phi
    std::vector<double> phi_probe_values;
    std::vector<std::array<double, 3>> velocity_probe_values;
};

struct RunReport {
    RunConfig config;          // resolved config (echo round-trips the run)
    std::string oracle_kind;   // closed-form | series | series-quadrature
    std::vector<SampleReport> samples;
    double wall_seconds = 0.0;
    std::string csv;
    bool passed = true;

    double worst_linf() const;
};

std::string to_json(const RunReport& report);

RunReport run_example(const RunConfig& cfg);

struct ConvergenceRow {
    int n = 0;
    double linf = 0.0;
    double order = 0.0;   // vs the previous row; NaN on the first row / at floor
    bool at_floor = false;  // error under 1e-12: order not meaningful
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;  // per component tables share N ladders
    std::vector<std::vector<ConvergenceRow>> per_component;
};

/// Grid ladder study: runs cfg at each node count, tabulating L_inf and log2
/// ratios per velocity component. tau must be small enough that time error is
/// negligible (<= 5e-4 enforced).
ConvergenceTable convergence_study(RunConfig cfg, const std::vector<int>& ladder);

/// Linear 1D heat solve with Dirichlet data taken from `exact(x, t)`:
/// boundary rows eliminated, interior evolved with the restricted generator,
/// boundary forcing injected each step via the separated-increment affine
/// update (midpoint-frozen boundary values).
Field evolve_heat_dirichlet_1d(const Grid& grid,
                               const std::function<double(double, double)>& exact,
                               double diffusivity, double tau, double t_final,
                               int bisection_order = 20);

/// The example-5 reduction (and any registered linear heat run) through the
/// Dirichlet path; produces the usual report against the exact solution.
RunReport solve_heat_dirichlet(const RunConfig& cfg);

/// Registered initial data for the forward transform of example `id`.
InitialVelocity example_initial_velocity(int id, double omega, double epsilon);

/// Reference solution of example `id` on a grid (closed form or series).
struct Reference {
    std::vector<Field> velocity;
    std::optional<Field> phi;
    std::string kind;
};
Reference example_reference(int id, const Grid& grid, double t, double omega, double epsilon,
                            const std::optional<FourierOracle>& oracle);

/// Series oracle for the examples that need one (3, 4, 7, 9); nullopt otherwise.
std::optional<FourierOracle> example_series_oracle(int id, double omega);

/// Reference-default RunConfig for example `id` (grid, tau, horizon, Re).
RunConfig example_defaults(int id);

}  // namespace cfdpim
