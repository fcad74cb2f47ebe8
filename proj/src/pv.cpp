#include "tomokit/pv.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace tomokit {

double pv_g(const PVKernel& kernel, double xi) {
    return 2.0 * xi / (xi * xi + kernel.epsilon * kernel.epsilon);
}

double default_epsilon(const Grid1D& grid) { return grid.spacing() / 16.0; }

namespace {

void check_boundary_decay(std::span<const double> f) {
    double peak = 0.0;
    for (double v : f) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return;
    if (std::abs(f.front()) > kBoundaryTol * peak ||
        std::abs(f.back()) > kBoundaryTol * peak) {
        throw BoundaryLeak("profile does not decay at the offset boundaries");
    }
}

// centered 2nd-order differences, one-sided at the ends
std::vector<double> derivative(std::span<const double> f, double dx) {
    int n = static_cast<int>(f.size());
    std::vector<double> d(n);
    d[0] = (f[1] - f[0]) / dx;
    d[n - 1] = (f[n - 1] - f[n - 2]) / dx;
    for (int i = 1; i < n - 1; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
    return d;
}

// I(alpha) given precomputed f' and f''
double pv_eval(const std::vector<double>& d1, const std::vector<double>& d2,
               const Grid1D& g, double eps, double alpha) {
    const int n = g.n;
    const double dx = g.spacing();
    const double e2 = eps * eps;

    // f'(alpha), f''(alpha) by linear interpolation (exact at nodes)
    double u = g.locate(alpha);
    int i0 = static_cast<int>(std::floor(u));
    i0 = std::clamp(i0, 0, n - 2);
    double fr = u - i0;
    double da = d1[i0] * (1 - fr) + d1[i0 + 1] * fr;
    double dda = d2[i0] * (1 - fr) + d2[i0 + 1] * fr;

    // smooth remainder (f'(x) - f'(alpha)) g_eps(x - alpha), trapezoid
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double xi = g.point(i) - alpha;
        double w = (i == 0 || i == n - 1) ? 0.5 * dx : dx;
        double r;
        if (std::abs(xi) < 0.5 * dx) {
            r = 2.0 * dda;  // limit of the remainder at the node
        } else {
            r = (d1[i] - da) * 2.0 * xi / (xi * xi + e2);
        }
        acc += w * r;
    }
    // singular part integrated analytically over the window
    double a = g.min - alpha, b = g.max - alpha;
    double win = std::log(b * b + e2) - std::log(a * a + e2);
    return -acc - da * win;
}

}  // namespace

double pv_convolve(std::span<const double> samples, const Grid1D& grid,
                   const PVKernel& kernel, double alpha) {
    if (static_cast<int>(samples.size()) != grid.n)
        throw GridMismatch("samples/grid size mismatch");
    check_boundary_decay(samples);
    auto d1 = derivative(samples, grid.spacing());
    auto d2 = derivative(d1, grid.spacing());
    return pv_eval(d1, d2, grid, kernel.epsilon, alpha);
}

std::vector<double> pv_filter_profile(std::span<const double> samples,
                                      const Grid1D& grid, const PVKernel& kernel) {
    if (static_cast<int>(samples.size()) != grid.n)
        throw GridMismatch("samples/grid size mismatch");
    check_boundary_decay(samples);
    auto d1 = derivative(samples, grid.spacing());
    auto d2 = derivative(d1, grid.spacing());
    std::vector<double> out(grid.n);
    for (int i = 0; i < grid.n; ++i)
        out[i] = pv_eval(d1, d2, grid, kernel.epsilon, grid.point(i));
    return out;
}

void fft_inplace(std::vector<std::complex<double>>& data, int sign) {
    static std::mutex plan_mutex;  // FFTW planner is not thread safe
    int n = static_cast<int>(data.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(data.data()),
                                reinterpret_cast<fftw_complex*>(data.data()),
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
}

std::vector<double> ramp_filter(std::span<const double> samples, const Grid1D& grid,
                                int pad_factor, bool apodize) {
    const int n = grid.n;
    if (n < 8) throw GridTooCoarse("ramp_filter needs at least 8 samples");
    if (static_cast<int>(samples.size()) != n)
        throw GridMismatch("samples/grid size mismatch");
    if (pad_factor < 1) pad_factor = 1;

    const int N = pad_factor * n;
    const double dx = grid.spacing();
    std::vector<std::complex<double>> buf(N, 0.0);
    for (int i = 0; i < n; ++i) buf[i] = samples[i];
    fft_inplace(buf, -1);

    const double pi = 3.14159265358979323846;
    const double dk = 2.0 * pi / (N * dx);
    for (int m = 0; m < N; ++m) {
        int f = (m <= N / 2) ? m : m - N;
        double k = dk * f;
        double w = std::abs(k);
        if (apodize) w *= 0.5 * (1.0 + std::cos(pi * f / (0.5 * N)));
        buf[m] *= w;
    }
    fft_inplace(buf, +1);

    // I(x_l) = 2*pi * IDFT(|k| F)_l ; FFTW backward omits the 1/N
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = 2.0 * pi * buf[i].real() / N;
    return out;
}

}  // namespace tomokit
