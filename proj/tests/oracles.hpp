// Test-side oracles, independent of the library's computational paths:
// dense principal-value quadrature, analytic Wigner fields, tapered
// oscillatory overlap integrals and reference quadrature densities.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

// I(alpha) = int |k| e^{i k alpha} f~(k) dk by brute-force quadrature with
// the transform f~ computed densely from the samples themselves
inline double dense_ramp_oracle(const std::vector<double>& f, double xmin, double dx,
                                double alpha, double kmax = 60.0, int nk = 60001) {
    int n = static_cast<int>(f.size());
    double acc = 0.0;
    double dk = 2.0 * kmax / (nk - 1);
    for (int m = 0; m < nk; ++m) {
        double k = -kmax + m * dk;
        // f~(k) = int f e^{-ikx} dx (trapezoid)
        std::complex<double> ft(0.0);
        for (int i = 0; i < n; ++i) {
            double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            ft += w * f[i] * std::exp(std::complex<double>(0.0, -k * (xmin + i * dx)));
        }
        ft *= dx;
        double wk = (m == 0 || m == nk - 1) ? 0.5 : 1.0;
        acc += wk * std::abs(k) *
               (ft * std::exp(std::complex<double>(0.0, k * alpha))).real();
    }
    return acc * dk;
}

// dense PV integral -2 PV int f'(x)/(x - alpha) dx with explicit splitting
// of the singular cell: over [alpha-h, alpha+h] the PV of the linearized
// numerator vanishes and the quadratic term gives 2 f''(alpha) * 2h
inline double dense_pv_oracle(const std::function<double(double)>& fprime,
                              const std::function<double(double)>& fsecond,
                              double a, double b, double alpha, int n = 400001) {
    double h = (b - a) / (n - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = a + i * h;
        if (std::abs(x - alpha) < 1.5 * h) continue;
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * fprime(x) / (x - alpha);
    }
    acc *= h;
    acc += fsecond(alpha) * 2.0 * (1.5 * h);  // singular-cell mass
    return -2.0 * acc;
}

// vacuum / Fock-1 Wigner fields
inline double wigner_vacuum(double q, double p) { return 2.0 * std::exp(-(q * q + p * p)); }
inline double wigner_fock1(double q, double p) {
    double r2 = q * q + p * p;
    return -2.0 * (1.0 - 2.0 * r2) * std::exp(-r2);
}

// |int conj(psi_{x1,th1}) psi_{x2,th2} dx|^2 by tapered oscillatory
// quadrature (cos^2 roll-off on the outer 30% of the window)
inline double overlap_oracle(
    const std::function<std::complex<double>(double, double, double)>& amp, double th1,
    double x1, double th2, double x2) {
    double A = 0.5 * (std::cos(th1) / std::sin(th1) - std::cos(th2) / std::sin(th2));
    double B = x2 / std::sin(th2) - x1 / std::sin(th1);
    double xstar = std::abs(A) > 1e-12 ? -B / (2.0 * A) : 0.0;
    double L = std::max(60.0, 2.5 * std::abs(xstar) + 40.0);
    double phimax = std::abs(2.0 * A * L) + std::abs(B);
    double h = std::min(0.2 / std::max(phimax, 1.0), 0.02);
    int n = static_cast<int>(2.0 * L / h) + 1;
    std::complex<double> acc(0.0);
    for (int i = 0; i < n; ++i) {
        double x = -L + i * h;
        double t = std::abs(x) / L;
        double w = t < 0.7 ? 1.0 : std::pow(std::cos(kPi * (t - 0.7) / 0.6), 2);
        acc += w * std::conj(amp(th1, x, x1)) * amp(th2, x, x2);
    }
    return std::norm(acc * h);
}

// momentum distribution from a coordinate kernel by direct double quadrature
inline double momentum_distribution(const std::vector<std::complex<double>>& K, int n,
                                    double xmin, double dx, double p) {
    std::complex<double> acc(0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            double x1 = xmin + i * dx, x2 = xmin + j * dx;
            acc += wi * wj * K[static_cast<size_t>(i) * n + j] *
                   std::exp(std::complex<double>(0.0, -p * (x1 - x2)));
        }
    return (acc * dx * dx / (2.0 * kPi)).real();
}

// least-squares slope of log(err) vs log(N)
inline double loglog_slope(const std::vector<double>& N, const std::vector<double>& err) {
    int n = static_cast<int>(N.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        double x = std::log(N[i]), y = std::log(err[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles
