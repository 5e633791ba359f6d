#pragma once

#include <span>

namespace cfdpim {

/// Modified Bessel function of the first kind, I_n(x), for integer order
/// n in [0, 200] and x in [0, 700]. Ascending power series for x <= 20,
/// downward Miller recurrence normalized by e^x = I_0 + 2 sum_k I_k above.
double bessel_i(int order, double x);

/// Ratio I_order(x) / I_0(x); cheaper and overflow-free when only relative
/// coefficients are needed.
double bessel_i_ratio(int order, double x);

/// Generalized hypergeometric series pFq(top; bottom; z) by Pochhammer term
/// recurrence, terminating when |term| < 1e-17 |partial sum|.
double hyper_pfq(std::span<const double> top, std::span<const double> bottom, double z);

double hyper_3f4(const double (&top)[3], const double (&bottom)[4], double z);

}  // namespace cfdpim
