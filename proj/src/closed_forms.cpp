#include "cfdpim/closed_forms.hpp"

#include <cmath>
#include <numbers>

namespace cfdpim::closed_form {

namespace {
constexpr double kPi = std::numbers::pi;
}

double example1(double x, double t, double omega, double epsilon) {
    const double e = std::exp(-kPi * kPi * omega * t);
    return 2.0 * omega * kPi * e * std::sin(kPi * x) / (epsilon + e * std::cos(kPi * x));
}

double example2(double x, double t, double omega) {
    const double e1 = std::exp(-kPi * kPi * omega * t);
    const double e4 = std::exp(-4.0 * kPi * kPi * omega * t);
    const double num = kPi * e1 * std::sin(kPi * x) + 4.0 * kPi * e4 * std::sin(2.0 * kPi * x);
    const double den = 4.0 + e1 * std::cos(kPi * x) + 2.0 * e4 * std::cos(2.0 * kPi * x);
    return 2.0 * omega * num / den;
}

double example5(double x, double t) { return std::exp(-t) * std::sin(x); }

std::array<double, 2> example6(double x, double y, double t, double omega) {
    const double e = std::exp(-5.0 * kPi * kPi * omega * t);
    const double phi = 2.0 + e * std::sin(2.0 * kPi * x) * std::sin(kPi * y);
    return {-4.0 * kPi * omega * e * std::cos(2.0 * kPi * x) * std::sin(kPi * y) / phi,
            -2.0 * kPi * omega * e * std::sin(2.0 * kPi * x) * std::cos(kPi * y) / phi};
}

double example8_phi(double x, double y, double z, double t, double omega) {
    const double e = std::exp(-3.0 * kPi * kPi * omega * t);
    return 1.0 + e * std::sin(kPi * x) * std::sin(kPi * y) * std::sin(kPi * z);
}

std::array<double, 3> example8(double x, double y, double z, double t, double omega) {
    const double e = std::exp(-3.0 * kPi * kPi * omega * t);
    const double phi = example8_phi(x, y, z, t, omega);
    const double sx = std::sin(kPi * x), cx = std::cos(kPi * x);
    const double sy = std::sin(kPi * y), cy = std::cos(kPi * y);
    const double sz = std::sin(kPi * z), cz = std::cos(kPi * z);
    const double k = -2.0 * kPi * omega * e / phi;
    return {k * cx * sy * sz, k * sx * cy * sz, k * sx * sy * cz};
}

}  // namespace cfdpim::closed_form
