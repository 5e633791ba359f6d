#include "cfdpim/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cfdpim/quadrature.hpp"
#include "cfdpim/special_functions.hpp"

namespace cfdpim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kPiXp = std::numbers::pi_v<long double>;

double c_of(double omega) { return 1.0 / (2.0 * omega * kPi); }

// First term of the 3D coefficient series in log space, then term recurrence.
double coeff_3d_series(int a, int b, int g, double c) {
    int s = std::max({a, b, g});
    if ((s - a) % 2 != 0) ++s;
    const int tuple[3] = {a, b, g};
    auto log_term = [&](int ss) {
        double lt = ss * std::log(c / 8.0) + 2.0 * std::lgamma(ss + 1.0);
        for (int idx : tuple) {
            lt -= std::lgamma((ss - idx) / 2.0 + 1.0) + std::lgamma((ss + idx) / 2.0 + 1.0);
        }
        return lt;
    };
    double term = std::exp(log_term(s));
    double total = term;
    for (int iter = 0; iter < 2000; ++iter) {
        double ratio = (c / 8.0) * (c / 8.0) * (s + 1.0) * (s + 1.0) * (s + 2.0) * (s + 2.0);
        for (int idx : tuple) {
            ratio /= ((s - idx) / 2.0 + 1.0) * ((s + idx) / 2.0 + 1.0);
        }
        term *= ratio;
        total += term;
        s += 2;
        if (term < 1e-17 * total) return total;
    }
    throw std::runtime_error("fourier_coeff_3d: series did not converge");
}

}  // namespace

double fourier_coeff_1d(int alpha, double omega) {
    const double c = c_of(omega);
    return std::exp(-c) * bessel_i(alpha, c);
}

double fourier_coeff_1d_parity_variant(int alpha, double omega) {
    if (alpha % 2 != 0) return 0.0;
    return bessel_i(alpha / 2, c_of(omega));
}

double fourier_coeff_2d(int alpha, int beta, double omega) {
    if ((alpha + beta) % 2 != 0) return 0.0;
    const double c = c_of(omega);
    return std::exp(-c) * bessel_i((alpha + beta) / 2, c / 2.0) *
           bessel_i(std::abs(alpha - beta) / 2, c / 2.0);
}

double fourier_coeff_3d(int alpha, int beta, int gamma, double omega) {
    if (alpha % 2 != beta % 2 || beta % 2 != gamma % 2) return 0.0;
    const double c = c_of(omega);
    return std::exp(-c) * coeff_3d_series(alpha, beta, gamma, c);
}

double fourier_coeff_1d_quadrature(int alpha, double omega, double rel_tol) {
    const double c = c_of(omega);
    return simpson_richardson(
        [c, alpha](double x) {
            return std::exp(c * (std::cos(kPi * x) - 1.0)) * std::cos(alpha * kPi * x);
        },
        0.0, 1.0, rel_tol, 32, 1 << 16);
}

double fourier_coeff_2d_quadrature(int alpha, int beta, double omega, double rel_tol) {
    // Extended precision: the high-index coefficients are ~1e-9 against an
    // O(1) integrand, beyond the double-precision summation floor.
    const long double c = 1.0L / (2.0L * static_cast<long double>(omega) * kPiXp);
    return simpson_richardson_2d_xp(
        [c, alpha, beta](long double x, long double y) {
            return expl(c * (cosl(kPiXp * x) * cosl(kPiXp * y) - 1.0L)) *
                   cosl(alpha * kPiXp * x) * cosl(beta * kPiXp * y);
        },
        rel_tol, 32, 2048);
}

double fourier_coeff_3d_quadrature(int alpha, int beta, int gamma, double omega, double rel_tol) {
    const long double c = 1.0L / (2.0L * static_cast<long double>(omega) * kPiXp);
    return simpson_richardson_3d_xp(
        [c, alpha, beta, gamma](long double x, long double y, long double z) {
            return expl(c * (cosl(kPiXp * x) * cosl(kPiXp * y) * cosl(kPiXp * z) - 1.0L)) *
                   cosl(alpha * kPiXp * x) * cosl(beta * kPiXp * y) * cosl(gamma * kPiXp * z);
        },
        rel_tol, 16, 512);
}

void FourierOracle::raise_until_converged(const std::function<double(int, int, int)>& b_fn,
                                          int max_m) {
    for (;;) {
        const int m = truncation_;
        const int stride = m + 1;
        coeffs_.assign(static_cast<std::size_t>(rank_ == 1 ? stride
                                                : rank_ == 2 ? stride * stride
                                                             : stride * stride * stride),
                       0.0);
        double total_abs = 0.0;
        double shell_abs = 0.0;
        auto a_factor = [](int idx) { return idx == 0 ? 1.0 : 2.0; };
        if (rank_ == 1) {
            for (int a = 0; a <= m; ++a) {
                const double cval = a_factor(a) * b_fn(a, 0, 0);
                coeffs_[static_cast<std::size_t>(a)] = cval;
                total_abs += std::abs(cval);
                if (a == m) shell_abs = std::abs(cval);
            }
        } else if (rank_ == 2) {
            for (int a = 0; a <= m; ++a)
                for (int b = 0; b <= m; ++b) {
                    const double cval = a_factor(a) * a_factor(b) * b_fn(a, b, 0);
                    coeffs_[static_cast<std::size_t>(a) * stride + b] = cval;
                    total_abs += std::abs(cval);
                    if (a == m || b == m) shell_abs = std::max(shell_abs, std::abs(cval));
                }
        } else {
            for (int a = 0; a <= m; ++a)
                for (int b = 0; b <= m; ++b)
                    for (int g = 0; g <= m; ++g) {
                        const double cval = a_factor(a) * a_factor(b) * a_factor(g) * b_fn(a, b, g);
                        coeffs_[(static_cast<std::size_t>(a) * stride + b) * stride + g] = cval;
                        total_abs += std::abs(cval);
                        if (a == m || b == m || g == m) shell_abs = std::max(shell_abs, std::abs(cval));
                    }
        }
        if (shell_abs <= 1e-15 * total_abs || truncation_ + 10 > max_m) return;
        truncation_ += 10;
    }
}

FourierOracle FourierOracle::profile_1d_sin(double omega, int truncation) {
    FourierOracle o;
    o.rank_ = 1;
    o.omega_ = omega;
    o.truncation_ = truncation;
    o.raise_until_converged(
        [omega](int a, int, int) { return fourier_coeff_1d(a, omega); }, 190);
    return o;
}

FourierOracle FourierOracle::profile_1d_quadrature(std::function<double(double)> phi0,
                                                   double omega, int truncation) {
    FourierOracle o;
    o.rank_ = 1;
    o.omega_ = omega;
    o.truncation_ = truncation;
    o.raise_until_converged(
        [phi0 = std::move(phi0)](int a, int, int) {
            return simpson_richardson(
                [&phi0, a](double x) { return phi0(x) * std::cos(a * kPi * x); }, 0.0, 1.0, 1e-11,
                64, 1 << 18);
        },
        190);
    return o;
}

FourierOracle FourierOracle::profile_2d_sincos(double omega, int truncation) {
    FourierOracle o;
    o.rank_ = 2;
    o.omega_ = omega;
    o.truncation_ = truncation;
    o.raise_until_converged(
        [omega](int a, int b, int) { return fourier_coeff_2d(a, b, omega); }, 190);
    return o;
}

FourierOracle FourierOracle::profile_3d_sincos(double omega, int truncation) {
    FourierOracle o;
    o.rank_ = 3;
    o.omega_ = omega;
    o.truncation_ = truncation;
    o.raise_until_converged(
        [omega](int a, int b, int g) { return fourier_coeff_3d(a, b, g, omega); }, 98);
    return o;
}

double FourierOracle::coeff(int a, int b, int g) const {
    const int stride = truncation_ + 1;
    if (a < 0 || a > truncation_ || b < 0 || (rank_ >= 2 && b > truncation_) || g < 0 ||
        (rank_ == 3 && g > truncation_)) {
        throw std::out_of_range("FourierOracle::coeff index beyond truncation");
    }
    if (rank_ == 1) return coeffs_[static_cast<std::size_t>(a)];
    if (rank_ == 2) return coeffs_[static_cast<std::size_t>(a) * stride + b];
    return coeffs_[(static_cast<std::size_t>(a) * stride + b) * stride + g];
}

std::array<double, 3> FourierOracle::velocity(const std::array<double, 3>& x, double t) const {
    const int m = truncation_;
    const double pw = kPi * kPi * omega_ * t;
    std::array<double, 3> numer{0.0, 0.0, 0.0};
    double denom = 0.0;
    double denom_abs = 0.0;
    if (rank_ == 1) {
        for (int a = 0; a <= m; ++a) {
            const double ce = coeff(a) * std::exp(-static_cast<double>(a) * a * pw);
            numer[0] += a * ce * std::sin(a * kPi * x[0]);
            denom += ce * std::cos(a * kPi * x[0]);
            denom_abs += std::abs(ce);
        }
    } else if (rank_ == 2) {
        for (int a = 0; a <= m; ++a)
            for (int b = 0; b <= m; ++b) {
                const double c0 = coeff(a, b);
                if (c0 == 0.0) continue;
                const double ce = c0 * std::exp(-static_cast<double>(a * a + b * b) * pw);
                const double ca = std::cos(a * kPi * x[0]), sa = std::sin(a * kPi * x[0]);
                const double cb = std::cos(b * kPi * x[1]), sb = std::sin(b * kPi * x[1]);
                numer[0] += a * ce * sa * cb;
                numer[1] += b * ce * ca * sb;
                denom += ce * ca * cb;
                denom_abs += std::abs(ce);
            }
    } else {
        for (int a = 0; a <= m; ++a)
            for (int b = 0; b <= m; ++b)
                for (int g = 0; g <= m; ++g) {
                    const double c0 = coeff(a, b, g);
                    if (c0 == 0.0) continue;
                    const double ce =
                        c0 * std::exp(-static_cast<double>(a * a + b * b + g * g) * pw);
                    const double ca = std::cos(a * kPi * x[0]), sa = std::sin(a * kPi * x[0]);
                    const double cb = std::cos(b * kPi * x[1]), sb = std::sin(b * kPi * x[1]);
                    const double cg = std::cos(g * kPi * x[2]), sg = std::sin(g * kPi * x[2]);
                    numer[0] += a * ce * sa * cb * cg;
                    numer[1] += b * ce * ca * sb * cg;
                    numer[2] += g * ce * ca * cb * sg;
                    denom += ce * ca * cb * cg;
                    denom_abs += std::abs(ce);
                }
    }
    if (std::abs(denom) <= 1e-14 * denom_abs) {
        throw std::runtime_error("FourierOracle::velocity: series denominator below floor");
    }
    const double scale = 2.0 * kPi * omega_ / denom;
    return {scale * numer[0], scale * numer[1], scale * numer[2]};
}

FourierOracle::GridEval FourierOracle::evaluate_on_grid(const Grid& grid, double t) const {
    if (grid.rank() != rank_) {
        throw dimension_error("FourierOracle::evaluate_on_grid: grid rank mismatch");
    }
    const int m = truncation_;
    const int nm = m + 1;
    const double pw = kPi * kPi * omega_ * t;

    // Per-axis trig tables: cos(a pi x_i) and sin(a pi x_i).
    std::vector<std::vector<double>> ct(static_cast<std::size_t>(rank_)),
        st(static_cast<std::size_t>(rank_));
    for (int ax = 0; ax < rank_; ++ax) {
        const int n = grid.axis(ax).n;
        auto& c = ct[static_cast<std::size_t>(ax)];
        auto& s = st[static_cast<std::size_t>(ax)];
        c.resize(static_cast<std::size_t>(n) * nm);
        s.resize(static_cast<std::size_t>(n) * nm);
        for (int i = 0; i < n; ++i) {
            const double x = grid.coord(ax, i);
            for (int a = 0; a <= m; ++a) {
                c[static_cast<std::size_t>(i) * nm + a] = std::cos(a * kPi * x);
                s[static_cast<std::size_t>(i) * nm + a] = std::sin(a * kPi * x);
            }
        }
    }

    GridEval out{Field(grid), {}};
    for (int k = 0; k < rank_; ++k) out.velocity.emplace_back(grid);

    double denom_abs = 0.0;
    std::vector<double> weighted(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        int a, b = 0, g = 0;
        if (rank_ == 1) {
            a = static_cast<int>(i);
        } else if (rank_ == 2) {
            a = static_cast<int>(i) / nm;
            b = static_cast<int>(i) % nm;
        } else {
            a = static_cast<int>(i) / (nm * nm);
            b = (static_cast<int>(i) / nm) % nm;
            g = static_cast<int>(i) % nm;
        }
        weighted[i] = coeffs_[i] * std::exp(-static_cast<double>(a * a + b * b + g * g) * pw);
        denom_abs += std::abs(weighted[i]);
    }

    // Contract one mode index at a time. `mode_factor` = a (for the numerator
    // of that component) or 1; the sin table replaces cos on that axis.
    auto contract = [&](int component /* -1 for phi */) {
        std::vector<double> cur = weighted;  // layout: modes [a][b][g]
        std::vector<double> next;
        // After contracting axis 0..ax-1, layout is [i..][remaining modes].
        std::size_t lead = 1;
        std::size_t mode_block = cur.size();
        for (int ax = 0; ax < rank_; ++ax) {
            const int n = grid.axis(ax).n;
            const auto& tbl = (ax == component) ? st[static_cast<std::size_t>(ax)]
                                                : ct[static_cast<std::size_t>(ax)];
            const std::size_t rest = mode_block / nm;
            next.assign(lead * static_cast<std::size_t>(n) * rest, 0.0);
            for (std::size_t l = 0; l < lead; ++l) {
                for (int i = 0; i < n; ++i) {
                    double* dst = next.data() + (l * n + static_cast<std::size_t>(i)) * rest;
                    const double* trig = tbl.data() + static_cast<std::size_t>(i) * nm;
                    for (int a = 0; a <= m; ++a) {
                        const double w = (ax == component) ? trig[a] * a : trig[a];
                        if (w == 0.0) continue;
                        const double* src = cur.data() + (l * mode_block) + static_cast<std::size_t>(a) * rest;
                        for (std::size_t r = 0; r < rest; ++r) dst[r] += w * src[r];
                    }
                }
            }
            cur.swap(next);
            lead *= static_cast<std::size_t>(n);
            mode_block = rest;
        }
        return cur;  // size = num grid nodes
    };

    const std::vector<double> den = contract(-1);
    for (std::size_t i = 0; i < den.size(); ++i) {
        if (std::abs(den[i]) <= 1e-14 * denom_abs) {
            throw std::runtime_error("FourierOracle: series denominator below floor on grid");
        }
        out.phi[i] = den[i];
    }
    for (int comp = 0; comp < rank_; ++comp) {
        const std::vector<double> num = contract(comp);
        Field& u = out.velocity[static_cast<std::size_t>(comp)];
        for (std::size_t i = 0; i < num.size(); ++i) {
            u[i] = 2.0 * kPi * omega_ * num[i] / den[i];
        }
    }
    return out;
}

double FourierOracle::phi(const std::array<double, 3>& x, double t) const {
    const int m = truncation_;
    const double pw = kPi * kPi * omega_ * t;
    double total = 0.0;
    if (rank_ == 1) {
        for (int a = 0; a <= m; ++a) {
            total += coeff(a) * std::exp(-static_cast<double>(a) * a * pw) * std::cos(a * kPi * x[0]);
        }
    } else if (rank_ == 2) {
        for (int a = 0; a <= m; ++a)
            for (int b = 0; b <= m; ++b) {
                const double c0 = coeff(a, b);
                if (c0 == 0.0) continue;
                total += c0 * std::exp(-static_cast<double>(a * a + b * b) * pw) *
                         std::cos(a * kPi * x[0]) * std::cos(b * kPi * x[1]);
            }
    } else {
        for (int a = 0; a <= m; ++a)
            for (int b = 0; b <= m; ++b)
                for (int g = 0; g <= m; ++g) {
                    const double c0 = coeff(a, b, g);
                    if (c0 == 0.0) continue;
                    total += c0 * std::exp(-static_cast<double>(a * a + b * b + g * g) * pw) *
                             std::cos(a * kPi * x[0]) * std::cos(b * kPi * x[1]) *
                             std::cos(g * kPi * x[2]);
                }
    }
    return total;
}

}  // namespace cfdpim
