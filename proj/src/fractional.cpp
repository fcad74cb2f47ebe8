#include "tomokit/fractional.hpp"

#include <algorithm>
#include <cmath>

namespace tomokit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

cxd quadrature_amplitude(double theta, double x, double xprime) {
    double s = std::sin(theta);
    if (std::abs(s) <= kSinTolerance)
        throw SingularAngle("quadrature_amplitude undefined at sin(theta) ~ 0");
    double c = std::cos(theta);
    double sgn = (s > 0) ? 1.0 : -1.0;
    cxd phase = std::exp(cxd(0.0, kPi / 4.0 * sgn - theta / 2.0));
    cxd osc = std::exp(cxd(0.0, -((x * x + xprime * xprime) * c - 2.0 * x * xprime) /
                                     (2.0 * s)));
    return phase / std::sqrt(2.0 * kPi * std::abs(s)) * osc;
}

double continuous_mub_overlap(double theta1, double theta2) {
    double s = std::sin(theta1 - theta2);
    if (std::abs(s) <= kSinTolerance)
        throw SingularAngle("bases coincide: sin(theta1 - theta2) ~ 0");
    return 1.0 / (2.0 * kPi * std::abs(s));
}

double oscillator_psi(int n, double x) {
    double p0 = std::pow(kPi, -0.25) * std::exp(-x * x / 2.0);
    if (n == 0) return p0;
    double p1 = std::sqrt(2.0) * x * p0;
    for (int k = 2; k <= n; ++k) {
        double p2 = std::sqrt(2.0 / k) * x * p1 - std::sqrt((k - 1.0) / k) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

OscillatorBasis build_oscillator_basis(int nmax, const Grid1D& grid) {
    OscillatorBasis b{nmax, grid, {}};
    b.values.assign(static_cast<size_t>(nmax + 1) * grid.n, 0.0);
    for (int i = 0; i < grid.n; ++i) {
        double x = grid.point(i);
        double p0 = std::pow(kPi, -0.25) * std::exp(-x * x / 2.0);
        b.values[i] = p0;
        if (nmax >= 1) {
            double p1 = std::sqrt(2.0) * x * p0;
            b.values[static_cast<size_t>(grid.n) + i] = p1;
            for (int n = 2; n <= nmax; ++n) {
                double p2 = std::sqrt(2.0 / n) * x * p1 - std::sqrt((n - 1.0) / n) * p0;
                b.values[static_cast<size_t>(n) * grid.n + i] = p2;
                p0 = p1;
                p1 = p2;
            }
        }
    }
    return b;
}

double OscillatorBasis::orthonormality_residual(int upto) const {
    double dx = grid.spacing();
    double worst = 0.0;
    for (int m = 0; m <= upto; ++m)
        for (int n = m; n <= upto; ++n) {
            double s = 0.0;
            for (int i = 0; i < grid.n; ++i) {
                double w = (i == 0 || i == grid.n - 1) ? 0.5 : 1.0;
                s += w * at(m, i) * at(n, i);
            }
            s *= dx;
            worst = std::max(worst, std::abs(s - (m == n ? 1.0 : 0.0)));
        }
    return worst;
}

namespace {

// Limit of a sequence of partial sums by Wynn's epsilon algorithm.
// Stagnant entries (added term negligible) are merged first; otherwise the
// algorithm breaks down on the zero differences. Returns {value, settle}.
std::pair<cxd, double> epsilon_limit(const std::vector<cxd>& sums_in) {
    std::vector<cxd> s = sums_in;
    if (s.size() < 4) return {s.empty() ? cxd(0) : s.back(), 1e300};
    std::vector<cxd> em1(s.size() + 1, cxd(0));  // eps_{-1}
    std::vector<cxd> e0 = s;                     // eps_0
    cxd best = e0.back();
    cxd prev_best = best;
    int k = 0;
    while (e0.size() >= 2) {
        ++k;
        std::vector<cxd> e1(e0.size() - 1);
        for (size_t i = 0; i + 1 < e0.size(); ++i) {
            cxd d = e0[i + 1] - e0[i];
            if (std::abs(d) < 1e-290) {
                e1[i] = cxd(1e290, 0.0);  // poisoned; drops out of even columns
            } else {
                e1[i] = em1[i + 1] + 1.0 / d;
            }
        }
        em1 = std::move(e0);
        e0 = std::move(e1);
        if (k % 2 == 0 && !e0.empty() && std::abs(e0.back()) < 1e200) {
            prev_best = best;
            best = e0.back();
        }
    }
    return {best, std::abs(best - prev_best)};
}

}  // namespace

cxd rotation_matrix_element(double theta, double x, double xprime, int nmax,
                            double tail_tol) {
    if (nmax < 1) throw BadGrid("rotation_matrix_element needs nmax >= 1");

    // terms by recurrence, shared for the two points
    double a0 = std::pow(kPi, -0.25) * std::exp(-x * x / 2.0);
    double b0 = std::pow(kPi, -0.25) * std::exp(-xprime * xprime / 2.0);
    double a1 = std::sqrt(2.0) * x * a0, b1 = std::sqrt(2.0) * xprime * b0;

    std::vector<cxd> sums;
    sums.reserve(nmax + 1);
    cxd acc(0.0);
    double scale = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        double prod;
        if (n == 0) prod = a0 * b0;
        else if (n == 1) prod = a1 * b1;
        else {
            double a2 = std::sqrt(2.0 / n) * x * a1 - std::sqrt((n - 1.0) / n) * a0;
            double b2 = std::sqrt(2.0 / n) * xprime * b1 - std::sqrt((n - 1.0) / n) * b0;
            a0 = a1; a1 = a2; b0 = b1; b1 = b2;
            prod = a2 * b2;
        }
        cxd term = prod * std::exp(cxd(0.0, n * theta));
        acc += term;
        scale = std::max(scale, std::abs(term));
        // merge stagnant steps so the epsilon table never sees zero jumps
        if (sums.empty() || std::abs(term) > 1e-15 * scale) sums.push_back(acc);
        else sums.back() = acc;
    }

    int window = std::min<int>(121, static_cast<int>(sums.size()));
    std::vector<cxd> tail(sums.end() - window, sums.end());
    auto [value, settle] = epsilon_limit(tail);
    if (settle > tail_tol)
        throw TruncationInsufficient("series not settled: estimate " +
                                     std::to_string(settle) + " > tolerance " +
                                     std::to_string(tail_tol));
    return value;
}

std::vector<cxd> build_projector_kernel(double theta, double xprime, const Grid1D& grid,
                                        const std::vector<double>& envelope) {
    if (!envelope.empty() && static_cast<int>(envelope.size()) != grid.n)
        throw GridMismatch("envelope size does not match grid");
    std::vector<cxd> psi(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        psi[i] = quadrature_amplitude(theta, grid.point(i), xprime);
        if (!envelope.empty()) psi[i] *= envelope[i];
    }
    std::vector<cxd> M(static_cast<size_t>(grid.n) * grid.n);
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            M[static_cast<size_t>(i) * grid.n + j] = psi[i] * std::conj(psi[j]);
    return M;
}

}  // namespace tomokit
