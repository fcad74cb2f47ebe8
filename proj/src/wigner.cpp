#include "tomokit/wigner.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "tomokit/parallel.hpp"

namespace tomokit {

namespace {
constexpr double kPi = 3.14159265358979323846;

inline double trap(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }
}  // namespace

double DensityKernel::trace() const {
    double s = 0.0;
    for (int i = 0; i < grid.n; ++i) s += at(i, i).real();
    return s * grid.spacing();
}

double DensityKernel::hermiticity_residual() const {
    double worst = 0.0;
    for (int i = 0; i < grid.n; ++i)
        for (int j = i; j < grid.n; ++j)
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
}

double DensityKernel::min_eigenvalue() const {
    Eigen::MatrixXcd M(grid.n, grid.n);
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j) M(i, j) = at(i, j) * grid.spacing();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityKernel::validate(double herm_tol, double trace_tol, double eig_floor) const {
    if (static_cast<int>(values.size()) != grid.n * grid.n)
        throw GridMismatch("kernel storage does not match grid");
    if (hermiticity_residual() > herm_tol)
        throw BadGrid("kernel is not Hermitian");
    double tr = trace();
    if (std::abs(tr - 1.0) > trace_tol)
        throw BadGrid("kernel trace = " + std::to_string(tr));
    if (min_eigenvalue() < eig_floor)
        throw BadGrid("kernel has eigenvalue below the positivity floor");
}

double WignerField::integral() const {
    double s = 0.0;
    for (int ip = 0; ip < pgrid.n; ++ip)
        for (int iq = 0; iq < qgrid.n; ++iq)
            s += at(ip, iq) * trap(iq, qgrid.n) * trap(ip, pgrid.n);
    return s * qgrid.spacing() * pgrid.spacing() / (2.0 * kPi);
}

Density2D WignerField::as_density() const {
    Density2D d;
    d.gx = qgrid;
    d.gy = pgrid;
    d.values = values;
    d.measure = Measure::DqDpOver2Pi;
    d.classical = false;
    return d;
}

namespace {

// complex bilinear sample of a kernel, zero outside
inline cxd ksample(const Grid1D& g, const std::vector<cxd>& K, double x1, double x2) {
    double u = g.locate(x1), v = g.locate(x2);
    int i = static_cast<int>(std::floor(u));
    int j = static_cast<int>(std::floor(v));
    if (i < 0 || i >= g.n - 1 || j < 0 || j >= g.n - 1) return cxd(0.0);
    double fu = u - i, fv = v - j;
    const size_t n = g.n;
    return K[i * n + j] * ((1 - fu) * (1 - fv)) + K[i * n + j + 1] * ((1 - fu) * fv) +
           K[(i + 1) * n + j] * (fu * (1 - fv)) + K[(i + 1) * n + j + 1] * (fu * fv);
}

bool aligned_to(const Grid1D& xg, const Grid1D& qg) {
    for (int i = 0; i < qg.n; ++i) {
        double u = xg.locate(qg.point(i));
        if (std::abs(u - std::round(u)) > 1e-9) return false;
        if (u < -0.5 || u > xg.n - 0.5) return false;
    }
    return true;
}

}  // namespace

WignerField wigner_transform_raw(const Grid1D& xgrid, const std::vector<cxd>& kernel,
                                 const Grid1D& qgrid, const Grid1D& pgrid) {
    const int n = xgrid.n;
    const double dx = xgrid.spacing();
    const bool fast = aligned_to(xgrid, qgrid);
    const double dy = fast ? 2.0 * dx : dx;

    double pmax = std::max(std::abs(pgrid.min), std::abs(pgrid.max));
    if (pmax > kPi / dy * (1.0 + 1e-12))
        throw NyquistViolation("p-grid exceeds the band resolvable at y step " +
                               std::to_string(dy));

    WignerField w;
    w.qgrid = qgrid;
    w.pgrid = pgrid;
    w.values.assign(static_cast<size_t>(qgrid.n) * pgrid.n, 0.0);

    std::vector<double> imag_res(qgrid.n, 0.0);
    const int jmax = fast ? (n - 1) / 2 + (n - 1) % 2 : n - 1;

    parallel_for(qgrid.n, [&](int iq) {
        double q = qgrid.point(iq);
        // h(y_j) = K(q + y_j/2, q - y_j/2), y_j = j * dy
        std::vector<cxd> h(2 * jmax + 1, cxd(0.0));
        if (fast) {
            int qi = static_cast<int>(std::round(xgrid.locate(q)));
            for (int j = -jmax; j <= jmax; ++j) {
                int i1 = qi + j, i2 = qi - j;
                if (i1 >= 0 && i1 < n && i2 >= 0 && i2 < n)
                    h[j + jmax] = kernel[static_cast<size_t>(i1) * n + i2];
            }
        } else {
            for (int j = -jmax; j <= jmax; ++j) {
                double y = j * dy;
                h[j + jmax] = ksample(xgrid, kernel, q + y / 2.0, q - y / 2.0);
            }
        }
        for (int ip = 0; ip < pgrid.n; ++ip) {
            double p = pgrid.point(ip);
            // incremental phasor e^{-i p y_j}
            cxd step = std::exp(cxd(0.0, -p * dy));
            cxd ph = std::exp(cxd(0.0, -p * (-jmax) * dy));
            cxd acc(0.0);
            for (int t = 0; t < 2 * jmax + 1; ++t) {
                acc += ph * h[t];
                ph *= step;
            }
            acc *= dy;
            w.at(ip, iq) = acc.real();
            imag_res[iq] = std::max(imag_res[iq], std::abs(acc.imag()));
        }
    });
    w.imag_residual = *std::max_element(imag_res.begin(), imag_res.end());
    return w;
}

WignerField wigner_transform(const DensityKernel& kernel, const Grid1D& qgrid,
                             const Grid1D& pgrid) {
    if (static_cast<int>(kernel.values.size()) != kernel.grid.n * kernel.grid.n)
        throw GridMismatch("kernel storage does not match grid");
    return wigner_transform_raw(kernel.grid, kernel.values, qgrid, pgrid);
}

double trace_product(const WignerField& wa, const WignerField& wb) {
    if (!(wa.qgrid == wb.qgrid) || !(wa.pgrid == wb.pgrid))
        throw GridMismatch("trace_product fields live on different grids");
    double s = 0.0;
    for (int ip = 0; ip < wa.pgrid.n; ++ip)
        for (int iq = 0; iq < wa.qgrid.n; ++iq)
            s += wa.at(ip, iq) * wb.at(ip, iq) * trap(iq, wa.qgrid.n) * trap(ip, wa.pgrid.n);
    return s * wa.qgrid.spacing() * wa.pgrid.spacing() / (2.0 * kPi);
}

CharacteristicFunction characteristic_function(const DensityKernel& kernel,
                                               const Grid1D& ugrid, const Grid1D& vgrid) {
    const Grid1D& g = kernel.grid;
    const double dx = g.spacing();
    double umax = std::max(std::abs(ugrid.min), std::abs(ugrid.max));
    if (umax > kPi / dx * (1.0 + 1e-12))
        throw NyquistViolation("u-grid exceeds the coordinate-grid band");
    double vmax = std::max(std::abs(vgrid.min), std::abs(vgrid.max));
    if (vmax > g.extent())
        throw NyquistViolation("v shift exceeds the kernel extent");

    CharacteristicFunction cf;
    cf.ugrid = ugrid;
    cf.vgrid = vgrid;
    cf.values.assign(static_cast<size_t>(ugrid.n) * vgrid.n, cxd(0.0));

    parallel_for(vgrid.n, [&](int iv) {
        double v = vgrid.point(iv);
        // K(x_i, x_i + v) along the shifted diagonal (linear interp in 2nd index)
        std::vector<cxd> diag(g.n, cxd(0.0));
        for (int i = 0; i < g.n; ++i) {
            double t = g.locate(g.point(i) + v);
            int j = static_cast<int>(std::floor(t));
            if (j < 0 || j >= g.n - 1) continue;
            double fr = t - j;
            diag[i] = kernel.at(i, j) * (1.0 - fr) + kernel.at(i, j + 1) * fr;
        }
        for (int iu = 0; iu < ugrid.n; ++iu) {
            double u = ugrid.point(iu);
            cxd acc(0.0);
            for (int i = 0; i < g.n; ++i) {
                double x = g.point(i);
                acc += trap(i, g.n) * diag[i] * std::exp(cxd(0.0, -u * (x + v / 2.0)));
            }
            cf.values[static_cast<size_t>(iu) * vgrid.n + iv] = acc * dx;
        }
    });
    return cf;
}

std::vector<double> quadrature_distribution(const WignerField& w, double theta,
                                            const Grid1D& offsets) {
    Sinogram s = forward_radon(w.as_density(), {theta}, offsets);
    return {s.values.begin(), s.values.end()};
}

WignerField reconstruct_wigner(const Sinogram& quadratures, const Grid1D& qgrid,
                               const Grid1D& pgrid, InversionMethod method,
                               double epsilon) {
    Sinogram s = quadratures;
    s.measure = Measure::DqDpOver2Pi;  // quadrature data reconstructs W under /2pi
    Density2D d = inverse_radon(s, qgrid, pgrid, method, epsilon);
    WignerField w;
    w.qgrid = qgrid;
    w.pgrid = pgrid;
    w.values = std::move(d.values);
    return w;
}

}  // namespace tomokit
