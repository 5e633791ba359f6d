#pragma once

#include <vector>

#include "cfdpim/cfd6.hpp"
#include "cfdpim/grid.hpp"
#include "cfdpim/pim.hpp"

namespace cfdpim {

struct StabilityReport {
    double max_real_eig = 0.0;
    double max_imag_eig = 0.0;
    double spectral_radius_t = 0.0;
    double h_norm = 0.0;  // ||H||_inf, the scale for the eigenvalue tolerances
    bool passed = false;  // asserted only for the periodic variant
};

/// Dense eigensolve of H (N <= 512). Periodic generators must have real,
/// nonpositive spectra within 1e-8 ||H||; closure spectra are reported
/// without a pass verdict (the theory covers the periodic matrices only).
StabilityReport check_generator_spectrum(const Generator& gen);

/// Same report extended with the spectral radius of I + increment.
StabilityReport check_propagator(const Generator& gen, const Propagator& prop);

/// Max discrete curl violation max_ij |d u_j/d x_i - d u_i/d x_j| by centered
/// differences (one-sided at the ends); rank >= 2 required.
double check_curl(const std::vector<Field>& velocity);

}  // namespace cfdpim
