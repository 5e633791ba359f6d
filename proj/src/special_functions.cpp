#include "cfdpim/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfdpim {

namespace {

constexpr int kMaxOrder = 200;
constexpr double kMaxArgument = 700.0;
constexpr double kSeriesCut = 20.0;

void check_domain(int order, double x) {
    if (order < 0 || order > kMaxOrder) {
        throw std::domain_error("bessel_i: order out of [0, 200]: " + std::to_string(order));
    }
    if (!(x >= 0.0) || x > kMaxArgument) {
        throw std::domain_error("bessel_i: argument out of [0, 700]");
    }
}

// I_n(x) = sum_k (x/2)^{n+2k} / (k! (n+k)!)
double series_i(int n, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    for (int j = 1; j <= n; ++j) term *= 0.5 * x / j;
    double sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= q / (static_cast<double>(k) * (n + k));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// Downward Miller recurrence I_{k-1} = I_{k+1} + (2k/x) I_k, normalized with
// e^x = I_0(x) + 2 sum_{k>=1} I_k(x). The seed order must sit well above both
// n and x (below the turning point k ~ x the recurrence does not separate the
// minimal solution), so the start is raised until the result stabilizes.
std::vector<double> miller_pass(int n_max, double x, int start) {
    std::vector<double> table(static_cast<std::size_t>(n_max + 1), 0.0);
    double ip1 = 0.0;   // I_{k+1} (unnormalized)
    double ik = 1e-30;  // I_k
    double norm = 0.0;
    for (int k = start; k >= 1; --k) {
        const double im1 = ip1 + (2.0 * k / x) * ik;
        ip1 = ik;
        ik = im1;
        if (k - 1 <= n_max) table[static_cast<std::size_t>(k - 1)] = ik;
        if (k - 1 >= 1) norm += 2.0 * ik;
        if (std::abs(ik) > 1e250) {
            ip1 *= 1e-250;
            ik *= 1e-250;
            norm *= 1e-250;
            for (double& v : table) v *= 1e-250;
        }
    }
    norm += table[0];  // e^x = I_0 + 2 sum I_k
    const double scale = std::exp(x) / norm;
    for (double& v : table) v *= scale;
    return table;
}

std::vector<double> miller_table(int n_max, double x) {
    int start = std::max(n_max, static_cast<int>(x)) +
                static_cast<int>(3.0 * std::sqrt(40.0 + x)) + 20;
    std::vector<double> table = miller_pass(n_max, x, start);
    for (int iter = 0; iter < 8; ++iter) {
        start += 40;
        std::vector<double> retry = miller_pass(n_max, x, start);
        double worst = 0.0;
        for (std::size_t i = 0; i < table.size(); ++i) {
            const double denom = std::abs(retry[i]) + 1e-300;
            worst = std::max(worst, std::abs(retry[i] - table[i]) / denom);
        }
        table.swap(retry);
        if (worst < 1e-14) return table;
    }
    return table;
}

}  // namespace

double bessel_i(int order, double x) {
    check_domain(order, x);
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x <= kSeriesCut) return series_i(order, x);
    return miller_table(order, x)[static_cast<std::size_t>(order)];
}

double bessel_i_ratio(int order, double x) {
    check_domain(order, x);
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x <= kSeriesCut) return series_i(order, x) / series_i(0, x);
    const auto table = miller_table(order, x);
    return table[static_cast<std::size_t>(order)] / table[0];
}

double hyper_pfq(std::span<const double> top, std::span<const double> bottom, double z) {
    for (double b : bottom) {
        if (b <= 0.0 && b == std::floor(b)) {
            throw std::domain_error("hyper_pfq: bottom parameter is a nonpositive integer");
        }
    }
    double sum = 1.0;
    double term = 1.0;
    for (int s = 0; s < 10000; ++s) {
        double ratio = z / (s + 1.0);
        for (double a : top) ratio *= (a + s);
        for (double b : bottom) ratio /= (b + s);
        term *= ratio;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
        if (!std::isfinite(sum)) break;
    }
    throw std::runtime_error("hyper_pfq: series did not terminate");
}

double hyper_3f4(const double (&top)[3], const double (&bottom)[4], double z) {
    return hyper_pfq(std::span<const double>(top, 3), std::span<const double>(bottom, 4), z);
}

}  // namespace cfdpim
