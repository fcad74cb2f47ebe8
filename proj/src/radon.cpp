#include "tomokit/radon.hpp"

#include <algorithm>
#include <cmath>

#include "tomokit/parallel.hpp"

namespace tomokit {

namespace {
constexpr double kPi = 3.14159265358979323846;

// trapezoid weight row for a grid
inline double trap_w(int i, int n, double dx) {
    return (i == 0 || i == n - 1) ? 0.5 * dx : dx;
}
}  // namespace

double Density2D::integral() const {
    double s = 0.0;
    for (int iy = 0; iy < gy.n; ++iy)
        for (int ix = 0; ix < gx.n; ++ix)
            s += at(iy, ix) * trap_w(ix, gx.n, gx.spacing()) *
                 trap_w(iy, gy.n, gy.spacing());
    return s * measure_weight(measure);
}

void Density2D::normalize() {
    double s = integral();
    if (s == 0.0) throw BadGrid("cannot normalize a zero density");
    for (double& v : values) v /= s;
}

void Density2D::validate(double norm_tol, double neg_tol) const {
    if (static_cast<int>(values.size()) != gx.n * gy.n)
        throw GridMismatch("density storage does not match grids");
    double s = integral();
    if (std::abs(s - 1.0) > norm_tol)
        throw BadGrid("density not normalized: integral = " + std::to_string(s));
    if (classical) {
        double peak = 0.0;
        for (double v : values) peak = std::max(peak, std::abs(v));
        for (double v : values)
            if (v < -neg_tol * peak)
                throw BadGrid("classical density has negative values");
    }
}

double Sinogram::row_integral(int a) const {
    double s = 0.0;
    for (int k = 0; k < offsets.n; ++k)
        s += at(a, k) * trap_w(k, offsets.n, offsets.spacing());
    return s;
}

void Sinogram::validate(double norm_tol, double neg_tol) const {
    double peak = 0.0;
    for (double v : values) peak = std::max(peak, std::abs(v));
    for (size_t a = 0; a < angles.size(); ++a) {
        double s = row_integral(static_cast<int>(a));
        if (std::abs(s - 1.0) > norm_tol)
            throw RowNotNormalized("sinogram row " + std::to_string(a) +
                                   " integrates to " + std::to_string(s));
    }
    for (double v : values)
        if (v < -neg_tol * peak) throw NegativeProbability("sinogram value < 0");
}

std::vector<double> uniform_angles(int count, bool half_offset) {
    std::vector<double> th(count);
    double shift = half_offset ? 0.5 : 0.0;
    for (int j = 0; j < count; ++j) th[j] = (j + shift) * kPi / count;
    return th;
}

namespace {

// bilinear sample of a density, zero outside the grid
inline double sample2d(const Density2D& d, double x, double y) {
    double u = d.gx.locate(x), v = d.gy.locate(y);
    int i = static_cast<int>(std::floor(u));
    int j = static_cast<int>(std::floor(v));
    if (i < 0 || i >= d.gx.n - 1 || j < 0 || j >= d.gy.n - 1) return 0.0;
    double fu = u - i, fv = v - j;
    return d.at(j, i) * (1 - fu) * (1 - fv) + d.at(j, i + 1) * fu * (1 - fv) +
           d.at(j + 1, i) * (1 - fu) * fv + d.at(j + 1, i + 1) * fu * fv;
}

// bounding box of |values| > rel_tol * peak
struct Bbox { double x0, x1, y0, y1; bool empty; };

Bbox support_box(const Density2D& d, double rel_tol) {
    double peak = 0.0;
    for (double v : d.values) peak = std::max(peak, std::abs(v));
    Bbox b{0, 0, 0, 0, true};
    if (peak == 0.0) return b;
    for (int iy = 0; iy < d.gy.n; ++iy)
        for (int ix = 0; ix < d.gx.n; ++ix)
            if (std::abs(d.at(iy, ix)) > rel_tol * peak) {
                double x = d.gx.point(ix), y = d.gy.point(iy);
                if (b.empty) { b = {x, x, y, y, false}; }
                else {
                    b.x0 = std::min(b.x0, x); b.x1 = std::max(b.x1, x);
                    b.y0 = std::min(b.y0, y); b.y1 = std::max(b.y1, y);
                }
            }
    return b;
}

}  // namespace

Sinogram forward_radon(const Density2D& density, const std::vector<double>& angles,
                       const Grid1D& offsets) {
    Bbox box = support_box(density, 1e-6);
    if (!box.empty) {
        // quick accept on the bounding box; exact per-cell scan otherwise
        // (the box corners over-reach for round supports)
        bool box_ok = true;
        for (double th : angles) {
            double C = std::cos(th), S = std::sin(th);
            for (double x : {box.x0, box.x1})
                for (double y : {box.y0, box.y1}) {
                    double xp = C * x + S * y;
                    if (xp < offsets.min || xp > offsets.max) box_ok = false;
                }
        }
        if (!box_ok) {
            double peak = 0.0;
            for (double v : density.values) peak = std::max(peak, std::abs(v));
            std::vector<std::pair<double, double>> cells;
            for (int iy = 0; iy < density.gy.n; ++iy)
                for (int ix = 0; ix < density.gx.n; ++ix)
                    if (std::abs(density.at(iy, ix)) > 1e-6 * peak)
                        cells.emplace_back(density.gx.point(ix), density.gy.point(iy));
            for (double th : angles) {
                double C = std::cos(th), S = std::sin(th);
                double lo = 1e300, hi = -1e300;
                for (auto& [x, y] : cells) {
                    double xp = C * x + S * y;
                    lo = std::min(lo, xp);
                    hi = std::max(hi, xp);
                }
                if (lo < offsets.min || hi > offsets.max)
                    throw SupportClipped("support extends to offsets [" +
                                         std::to_string(lo) + ", " + std::to_string(hi) +
                                         "] at theta = " + std::to_string(th));
            }
        }
    }

    const double dt = 0.5 * std::min(density.gx.spacing(), density.gy.spacing());
    const double half_diag = 0.5 * std::hypot(density.gx.extent(), density.gy.extent());
    const int nt = static_cast<int>(std::ceil(2.0 * half_diag / dt)) + 1;

    Sinogram sino;
    sino.angles = angles;
    sino.offsets = offsets;
    sino.measure = density.measure;
    sino.values.assign(angles.size() * static_cast<size_t>(offsets.n), 0.0);

    const double w = measure_weight(density.measure);
    parallel_for(static_cast<int>(angles.size()), [&](int a) {
        double C = std::cos(angles[a]), S = std::sin(angles[a]);
        for (int k = 0; k < offsets.n; ++k) {
            double xp = offsets.point(k);
            double acc = 0.0;
            for (int m = 0; m < nt; ++m) {
                double t = -half_diag + m * dt;
                double tw = (m == 0 || m == nt - 1) ? 0.5 : 1.0;
                acc += tw * sample2d(density, xp * C - t * S, xp * S + t * C);
            }
            sino.at(a, k) = acc * dt * w;
        }
    });
    return sino;
}

Density2D inverse_radon(const Sinogram& sino, const Grid1D& gx, const Grid1D& gy,
                        InversionMethod method, double epsilon) {
    const int na = static_cast<int>(sino.angles.size());
    if (na < 8) throw TooFewAngles("inverse_radon needs at least 8 angles");
    if (epsilon <= 0.0) epsilon = default_epsilon(sino.offsets);

    // filter every row on its own grid
    std::vector<std::vector<double>> filt(na);
    PVKernel kern(epsilon);
    parallel_for(na, [&](int a) {
        auto row = sino.row(a);
        filt[a] = (method == InversionMethod::PvKernel)
                      ? pv_filter_profile(row, sino.offsets, kern)
                      : ramp_filter(row, sino.offsets);
    });

    // periodic-extension trapezoid weights over [0, pi)
    std::vector<double> wtheta(na);
    if (na == 1) {
        wtheta[0] = kPi;
    } else {
        for (int a = 0; a < na; ++a) {
            double prev = (a == 0) ? sino.angles[na - 1] - kPi : sino.angles[a - 1];
            double next = (a == na - 1) ? sino.angles[0] + kPi : sino.angles[a + 1];
            wtheta[a] = 0.5 * (next - prev);
        }
    }

    Density2D out;
    out.gx = gx;
    out.gy = gy;
    out.measure = sino.measure;
    out.values.assign(static_cast<size_t>(gx.n) * gy.n, 0.0);

    const double pref = (sino.measure == Measure::DqDpOver2Pi)
                            ? 1.0 / (2.0 * kPi)
                            : 1.0 / (4.0 * kPi * kPi);
    const Grid1D& og = sino.offsets;
    parallel_for(gy.n, [&](int iy) {
        double y = gy.point(iy);
        for (int ix = 0; ix < gx.n; ++ix) {
            double x = gx.point(ix);
            double acc = 0.0;
            for (int a = 0; a < na; ++a) {
                double alpha = x * std::cos(sino.angles[a]) + y * std::sin(sino.angles[a]);
                double u = og.locate(alpha);
                if (u < 0.0 || u > og.n - 1) continue;  // filtered value ~ 0 out there
                int i0 = std::min(static_cast<int>(u), og.n - 2);
                double fr = u - i0;
                acc += wtheta[a] * (filt[a][i0] * (1 - fr) + filt[a][i0 + 1] * fr);
            }
            out.at(iy, ix) = pref * acc;
        }
    });
    return out;
}

ConditionalFactors conditional_factorize(const Density2D& density, double threshold) {
    density.validate(1e-6);
    const double w = measure_weight(density.measure);
    ConditionalFactors f;
    f.marginal.assign(density.gy.n, 0.0);
    f.conditional.assign(density.values.size(), 0.0);
    f.defined.assign(density.gy.n, 0);
    for (int iy = 0; iy < density.gy.n; ++iy) {
        double s = 0.0;
        for (int ix = 0; ix < density.gx.n; ++ix)
            s += density.at(iy, ix) * trap_w(ix, density.gx.n, density.gx.spacing());
        f.marginal[iy] = s * w;
        if (f.marginal[iy] > threshold) {
            f.defined[iy] = 1;
            for (int ix = 0; ix < density.gx.n; ++ix)
                f.conditional[static_cast<size_t>(iy) * density.gx.n + ix] =
                    density.at(iy, ix) * w / f.marginal[iy];
        }
    }
    return f;
}

}  // namespace tomokit
