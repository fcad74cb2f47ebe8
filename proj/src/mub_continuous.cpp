#include "tomokit/mub_continuous.hpp"

#include <algorithm>
#include <cmath>

#include "tomokit/parallel.hpp"
#include "tomokit/pv.hpp"

namespace tomokit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

QuadratureDataset QuadratureDataset::from_sinogram(const Sinogram& s, Provenance prov,
                                                   long long shots) {
    return QuadratureDataset{s.angles, s.offsets, s.values, prov, shots};
}

Sinogram QuadratureDataset::to_sinogram() const {
    Sinogram s;
    s.angles = angles;
    s.offsets = offsets;
    s.values = values;
    s.measure = Measure::DqDpOver2Pi;
    return s;
}

void QuadratureDataset::validate(double norm_tol) const {
    if (provenance == Provenance::Sampled && shots > 0) {
        // statistical tolerance: a few sigma of a binned multinomial row sum
        norm_tol = std::max(norm_tol, 5.0 / std::sqrt(static_cast<double>(shots)));
    }
    const double dx = offsets.spacing();
    for (size_t a = 0; a < angles.size(); ++a) {
        double s = 0.0;
        for (int k = 0; k < offsets.n; ++k) {
            double v = at(static_cast<int>(a), k);
            if (v < -1e-12) throw NegativeProbability("quadrature row has negative entry");
            s += v * dx;
        }
        if (std::abs(s - 1.0) > norm_tol)
            throw RowNotNormalized("quadrature row " + std::to_string(a) +
                                   " integrates to " + std::to_string(s));
    }
}

cxd displacement_coefficient(const DensityKernel& kernel, double a, double b) {
    const Grid1D& g = kernel.grid;
    if (std::abs(b) > g.extent())
        throw ShiftOutOfRange("shift |b| = " + std::to_string(std::abs(b)) +
                              " exceeds kernel extent");
    const double dx = g.spacing();
    cxd acc(0.0);
    for (int i = 0; i < g.n; ++i) {
        double x = g.point(i);
        double t = g.locate(x + b);
        int j = static_cast<int>(std::floor(t));
        if (j < 0 || j >= g.n - 1) continue;
        double fr = t - j;
        cxd kij = kernel.at(i, j) * (1.0 - fr) + kernel.at(i, j + 1) * fr;
        double w = (i == 0 || i == g.n - 1) ? 0.5 : 1.0;
        acc += w * kij * std::exp(cxd(0.0, -a * x));
    }
    return acc * dx;
}

DmReconstruction reconstruct_density_matrix(const QuadratureDataset& data,
                                            const Grid1D& out_grid, double epsilon,
                                            double angle_tol) {
    const int na = static_cast<int>(data.angles.size());
    if (na < 8) throw TooFewAngles("reconstruct_density_matrix needs at least 8 angles");
    for (double th : data.angles)
        if (std::abs(std::sin(th)) <= angle_tol)
            throw SingularAngleInData("angle " + std::to_string(th) +
                                      " too close to sin(theta) = 0");
    data.validate();
    if (epsilon < 0.0) epsilon = default_epsilon(data.offsets);

    const Grid1D& og = data.offsets;
    const double dxp = og.spacing();

    // rho~_a(kappa) = int rho_a(x') e^{-i kappa x'} dx' on a fine kappa <= 0 grid
    const double kmax = kPi / dxp;
    const int nk = 4096;
    const double dk = kmax / (nk - 1);
    std::vector<cxd> rhot(static_cast<size_t>(na) * nk);
    parallel_for(na, [&](int a) {
        for (int ik = 0; ik < nk; ++ik) {
            double kap = -kmax + ik * dk;  // kappa in [-kmax, 0]
            cxd acc(0.0);
            for (int k = 0; k < og.n; ++k) {
                double w = (k == 0 || k == og.n - 1) ? 0.5 : 1.0;
                acc += w * data.at(a, k) * std::exp(cxd(0.0, -kap * og.point(k)));
            }
            rhot[static_cast<size_t>(a) * nk + ik] = acc * dxp;
        }
    });

    // angles must be sorted for the linear row interpolation
    std::vector<int> order(na);
    for (int i = 0; i < na; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return data.angles[i] < data.angles[j]; });
    std::vector<double> th_sorted(na);
    for (int i = 0; i < na; ++i) th_sorted[i] = data.angles[order[i]];

    auto row_value = [&](double theta, double kappa) -> cxd {
        if (kappa < -kmax) return cxd(0.0);  // beyond the offset-grid band
        // clamp theta into the sampled range, linear between rows
        int hi = static_cast<int>(std::lower_bound(th_sorted.begin(), th_sorted.end(), theta) -
                                  th_sorted.begin());
        int j0, j1;
        double fj;
        if (hi <= 0) { j0 = j1 = 0; fj = 0.0; }
        else if (hi >= na) { j0 = j1 = na - 1; fj = 0.0; }
        else {
            j0 = hi - 1; j1 = hi;
            fj = (theta - th_sorted[j0]) / (th_sorted[j1] - th_sorted[j0]);
        }
        double t = (kappa + kmax) / dk;
        int k0 = std::clamp(static_cast<int>(std::floor(t)), 0, nk - 2);
        double fk = std::clamp(t - k0, 0.0, 1.0);
        auto val = [&](int j) {
            const cxd* r = &rhot[static_cast<size_t>(order[j]) * nk];
            return r[k0] * (1.0 - fk) + r[k0 + 1] * fk;
        };
        return val(j0) * (1.0 - fj) + val(j1) * fj;
    };

    // K(x1,x2) = (1/2pi) int dw e^{-i m w} e^{-eps s} rho~_{theta(w)}(-s),
    // s = sqrt(delta^2 + w^2), theta = atan2(delta, w), m = (x1+x2)/2
    const double W = std::min(kmax, 40.0);
    const double dw = 0.01;
    const int nw = 2 * static_cast<int>(W / dw) + 1;
    const int nx = out_grid.n;
    const double eps = epsilon;

    DensityKernel K;
    K.grid = out_grid;
    K.values.assign(static_cast<size_t>(nx) * nx, cxd(0.0));

    parallel_for(nx, [&](int idx) {  // idx = (i - j), delta = idx * spacing
        double delta = idx * out_grid.spacing();
        std::vector<cxd> gvals(nw);
        for (int t = 0; t < nw; ++t) {
            double w = -W + t * dw;
            double s = std::sqrt(delta * delta + w * w);
            double theta = (delta > 0.0) ? std::atan2(delta, w) : (w >= 0.0 ? 0.0 : kPi);
            gvals[t] = row_value(theta, -s) * std::exp(-eps * s);
        }
        for (int j = 0; j + idx < nx; ++j) {
            int i = j + idx;  // x1 = point(i) >= x2 = point(j)
            double m = 0.5 * (out_grid.point(i) + out_grid.point(j));
            cxd ph = std::exp(cxd(0.0, -m * (-W)));
            cxd step = std::exp(cxd(0.0, -m * dw));
            cxd acc(0.0);
            for (int t = 0; t < nw; ++t) {
                acc += ph * gvals[t];
                ph *= step;
            }
            K.at(i, j) = acc * dw / (2.0 * kPi);
        }
    });
    // Hermitian mirror for the upper triangle
    for (int i = 0; i < nx; ++i)
        for (int j = i + 1; j < nx; ++j) K.at(i, j) = std::conj(K.at(j, i));

    DmReconstruction rec;
    // real data rows give rho~(+s) = conj(rho~(-s)), so the delta < 0 half of
    // the formula is the exact conjugate of the delta > 0 half; the mirror is
    // an identity here, not a correction, and the residual is reported as such
    rec.hermiticity_residual = K.hermiticity_residual();
    rec.trace_residual = std::abs(K.trace() - 1.0);

    double tr = K.trace();
    if (tr != 0.0)
        for (auto& v : K.values) v /= tr;
    rec.kernel = std::move(K);
    return rec;
}

}  // namespace tomokit
