#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tomokit/fractional.hpp"
#include "tomokit/states.hpp"
#include "tomokit/wigner.hpp"
#include "oracles.hpp"

using namespace tomokit;

namespace {
constexpr double kPi = 3.14159265358979323846;
const Grid1D kXGrid(-8.0, 8.0, 257);

int center(const Grid1D& g) { return (g.n - 1) / 2; }

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}
}  // namespace

TEST_CASE("vacuum Wigner function: peak and normalization") {
    DensityKernel k = realize_kernel(VacuumSpec{}, kXGrid);
    k.validate();
    WignerField w = wigner_transform(k, kXGrid, kXGrid);
    CHECK(std::abs(w.at(center(kXGrid), center(kXGrid)) - 2.0) < 1e-3);
    CHECK(std::abs(w.integral() - 1.0) < 1e-4);
    CHECK(w.imag_residual < 1e-10);
    // pointwise against the analytic field
    double worst = 0.0;
    for (int ip = 0; ip < kXGrid.n; ip += 16)
        for (int iq = 0; iq < kXGrid.n; iq += 16)
            worst = std::max(worst, std::abs(w.at(ip, iq) -
                                             oracles::wigner_vacuum(kXGrid.point(iq),
                                                                    kXGrid.point(ip))));
    CHECK(worst < 1e-3);
}

TEST_CASE("Fock-1 Wigner function is -2 at the origin") {
    DensityKernel k = realize_kernel(FockSpec{1}, kXGrid);
    WignerField w = wigner_transform(k, kXGrid, kXGrid);
    CHECK(std::abs(w.at(center(kXGrid), center(kXGrid)) + 2.0) < 1e-2);
}

TEST_CASE("Wigner transform is linear: equal mixture of Fock 0 and 1") {
    MixedSpec mix{{{0.5, VacuumSpec{}}, {0.5, FockSpec{1}}}};
    WignerField wm = wigner_transform(realize_kernel(mix, kXGrid), kXGrid, kXGrid);
    WignerField w0 = wigner_transform(realize_kernel(VacuumSpec{}, kXGrid), kXGrid, kXGrid);
    WignerField w1 = wigner_transform(realize_kernel(FockSpec{1}, kXGrid), kXGrid, kXGrid);
    double worst = 0.0;
    for (size_t i = 0; i < wm.values.size(); ++i)
        worst = std::max(worst,
                         std::abs(wm.values[i] - 0.5 * (w0.values[i] + w1.values[i])));
    CHECK(worst < 1e-12);
}

TEST_CASE("p-grid beyond the resolvable band is rejected") {
    DensityKernel k = realize_kernel(VacuumSpec{}, Grid1D(-8.0, 8.0, 65));
    CHECK_THROWS_AS(wigner_transform(k, Grid1D(-8.0, 8.0, 65), Grid1D(-40.0, 40.0, 65)),
                    NyquistViolation);
}

TEST_CASE("non-Hermitian kernels fail validation") {
    DensityKernel k = realize_kernel(VacuumSpec{}, Grid1D(-6.0, 6.0, 33));
    k.at(3, 7) += cxd(0.0, 1e-6);
    CHECK_THROWS(k.validate());
}

TEST_CASE("trace products") {
    WignerField w0 = wigner_transform(realize_kernel(VacuumSpec{}, kXGrid), kXGrid, kXGrid);
    WignerField w1 = wigner_transform(realize_kernel(FockSpec{1}, kXGrid), kXGrid, kXGrid);

    SUBCASE("purity of the vacuum is 1") {
        CHECK(std::abs(trace_product(w0, w0) - 1.0) < 1e-3);
    }
    SUBCASE("pairing with the identity recovers the normalization") {
        WignerField ones = w0;
        std::fill(ones.values.begin(), ones.values.end(), 1.0);
        CHECK(std::abs(trace_product(w0, ones) - 1.0) < 1e-4);
    }
    SUBCASE("orthogonal pure states pair to zero") {
        CHECK(std::abs(trace_product(w0, w1)) < 1e-3);
    }
    SUBCASE("symmetry is exact") {
        CHECK(trace_product(w0, w1) == trace_product(w1, w0));
    }
    SUBCASE("grid mismatch is an error") {
        WignerField small = wigner_transform(realize_kernel(VacuumSpec{}, kXGrid),
                                             Grid1D(-4.0, 4.0, 65), Grid1D(-4.0, 4.0, 65));
        CHECK_THROWS_AS(trace_product(w0, small), GridMismatch);
    }
}

TEST_CASE("characteristic function") {
    DensityKernel k = realize_kernel(VacuumSpec{}, kXGrid);
    Grid1D ug(-6.0, 6.0, 49), vg(-6.0, 6.0, 49);
    CharacteristicFunction cf = characteristic_function(k, ug, vg);

    SUBCASE("value at the origin is the trace") {
        CHECK(std::abs(cf.at(24, 24) - cxd(1.0, 0.0)) < 1e-6);
    }
    SUBCASE("vacuum characteristic function is Gaussian") {
        double worst = 0.0;
        for (int iu = 0; iu < ug.n; ++iu)
            for (int iv = 0; iv < vg.n; ++iv) {
                double u = ug.point(iu), v = vg.point(iv);
                worst = std::max(worst,
                                 std::abs(cf.at(iu, iv) - std::exp(-(u * u + v * v) / 4.0)));
            }
        CHECK(worst < 1e-3);
    }
    SUBCASE("Fourier inversion reproduces the Wigner transform") {
        Grid1D ug2(-12.0, 12.0, 97), vg2(-12.0, 12.0, 97);
        CharacteristicFunction c2 = characteristic_function(k, ug2, vg2);
        Grid1D out(-3.0, 3.0, 25);
        WignerField w = wigner_transform(k, out, out);
        double du = ug2.spacing(), dv = vg2.spacing();
        double worst = 0.0;
        for (int iq = 0; iq < out.n; ++iq)
            for (int ip = 0; ip < out.n; ++ip) {
                cxd acc(0.0);
                for (int iu = 0; iu < ug2.n; ++iu)
                    for (int iv = 0; iv < vg2.n; ++iv) {
                        double wu = (iu == 0 || iu == ug2.n - 1) ? 0.5 : 1.0;
                        double wv = (iv == 0 || iv == vg2.n - 1) ? 0.5 : 1.0;
                        acc += wu * wv * c2.at(iu, iv) *
                               std::exp(cxd(0.0, ug2.point(iu) * out.point(iq) +
                                                     vg2.point(iv) * out.point(ip)));
                    }
                acc *= du * dv / (2.0 * kPi);
                worst = std::max(worst, std::abs(acc.real() - w.at(ip, iq)));
            }
        CHECK(worst < 1e-3);
    }
}

TEST_CASE("quadrature distributions from the Wigner field") {
    WignerField w = wigner_transform(realize_kernel(VacuumSpec{}, kXGrid), kXGrid, kXGrid);
    Grid1D offs(-8.0, 8.0, 257);

    SUBCASE("vacuum marginal is the same Gaussian at every angle") {
        for (double theta : {0.1, 0.7, kPi / 2.0, 2.8}) {
            auto rho = quadrature_distribution(w, theta, offs);
            double worst = 0.0;
            for (int kk = 0; kk < offs.n; ++kk) {
                double x = offs.point(kk);
                worst = std::max(worst,
                                 std::abs(rho[kk] - std::exp(-x * x) / std::sqrt(kPi)));
            }
            CHECK(worst < 1e-3);
        }
    }
    SUBCASE("theta = 0 equals the kernel diagonal") {
        DensityKernel k = realize_kernel(MixedSpec{{{0.6, VacuumSpec{}}, {0.4, FockSpec{2}}}},
                                         kXGrid);
        WignerField wm = wigner_transform(k, kXGrid, kXGrid);
        auto rho = quadrature_distribution(wm, 0.0, kXGrid);
        double worst = 0.0;
        for (int i = 0; i < kXGrid.n; ++i)
            worst = std::max(worst, std::abs(rho[i] - k.at(i, i).real()));
        CHECK(worst < 1e-3);
    }
    SUBCASE("theta = pi/2 equals the momentum distribution") {
        DensityKernel k = realize_kernel(CoherentSpec{cxd(0.8, 0.4)}, kXGrid);
        WignerField wc = wigner_transform(k, kXGrid, kXGrid);
        auto rho = quadrature_distribution(wc, kPi / 2.0, kXGrid);
        double worst = 0.0;
        for (int i = 0; i < kXGrid.n; i += 8) {
            double p = kXGrid.point(i);
            double oracle = oracles::momentum_distribution(k.values, kXGrid.n, kXGrid.min,
                                                           kXGrid.spacing(), p);
            worst = std::max(worst, std::abs(rho[i] - oracle));
        }
        CHECK(worst < 1e-3);
    }
}

TEST_CASE("marginal over p recovers the position density") {
    DensityKernel k = realize_kernel(FockSpec{1}, kXGrid);
    WignerField w = wigner_transform(k, kXGrid, kXGrid);
    double dp = kXGrid.spacing();
    double worst = 0.0;
    for (int iq = 0; iq < kXGrid.n; iq += 4) {
        double acc = 0.0;
        for (int ip = 0; ip < kXGrid.n; ++ip) {
            double wt = (ip == 0 || ip == kXGrid.n - 1) ? 0.5 : 1.0;
            acc += wt * w.at(ip, iq);
        }
        acc *= dp / (2.0 * kPi);
        worst = std::max(worst, std::abs(acc - k.at(iq, iq).real()));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("projector Wigner transform rides the quadrature line") {
    double theta = kPi / 3.0, xp = 0.5;
    // smooth envelope keeps the finite-window realization from ringing
    std::vector<double> env(kXGrid.n);
    for (int i = 0; i < kXGrid.n; ++i)
        env[i] = std::exp(-std::pow(kXGrid.point(i) / 6.0, 8.0));
    auto M = build_projector_kernel(theta, xp, kXGrid, env);
    Grid1D qg(-4.0, 4.0, 33), pg(-8.0, 8.0, 129);
    WignerField w = wigner_transform_raw(kXGrid, M, qg, pg);

    SUBCASE("at least 95% of the mass is within 2 cells of the line") {
        double tot = 0.0, band = 0.0;
        for (int ip = 0; ip < pg.n; ++ip)
            for (int iq = 0; iq < qg.n; ++iq) {
                double dist = std::abs(xp - (qg.point(iq) * std::cos(theta) +
                                             pg.point(ip) * std::sin(theta)));
                tot += w.at(ip, iq);
                if (dist <= 2.0 * qg.spacing()) band += w.at(ip, iq);
            }
        CHECK(band / tot >= 0.95);
    }

    SUBCASE("ridge-line pairing equals the overlap law within 2%") {
        // Tr(P_{x',theta} P_x) via the p-column integral of W at q = x
        int iq = 16;  // q = 0, envelope = 1 there
        double acc = 0.0;
        for (int ip = 0; ip < pg.n; ++ip) {
            double wt = (ip == 0 || ip == pg.n - 1) ? 0.5 : 1.0;
            acc += wt * w.at(ip, iq);
        }
        acc *= pg.spacing() / (2.0 * kPi);
        CHECK(std::abs(acc - 1.0 / (2.0 * kPi * std::sin(theta))) <
              0.02 / (2.0 * kPi * std::sin(theta)));
    }
}

TEST_CASE("Wigner reconstruction from exact quadratures") {
    auto angles = uniform_angles(90);
    Grid1D offs(-8.0, 8.0, 257);
    Grid1D out(-6.0, 6.0, 97);

    SUBCASE("vacuum comes back within 3%") {
        Sinogram rows = exact_quadratures(VacuumSpec{}, angles, offs);
        WignerField w = reconstruct_wigner(rows, out, out);
        std::vector<double> truth(w.values.size());
        for (int ip = 0; ip < out.n; ++ip)
            for (int iq = 0; iq < out.n; ++iq)
                truth[static_cast<size_t>(ip) * out.n + iq] =
                    oracles::wigner_vacuum(out.point(iq), out.point(ip));
        CHECK(rel_l2(w.values, truth) < 0.03);
    }

    SUBCASE("Fock-1 negativity is recovered") {
        Sinogram rows = exact_quadratures(FockSpec{1}, angles, offs);
        WignerField w = reconstruct_wigner(rows, out, out);
        double w00 = w.at(48, 48);
        CHECK(w00 < -1.5);
        CHECK(w00 > -2.2);
    }

    SUBCASE("reconstruction is linear in the data") {
        Sinogram a = exact_quadratures(VacuumSpec{}, angles, offs);
        Sinogram b = exact_quadratures(FockSpec{1}, angles, offs);
        Sinogram m = a;
        for (size_t i = 0; i < m.values.size(); ++i)
            m.values[i] = 0.5 * (a.values[i] + b.values[i]);
        WignerField wa = reconstruct_wigner(a, out, out);
        WignerField wb = reconstruct_wigner(b, out, out);
        WignerField wm = reconstruct_wigner(m, out, out);
        double worst = 0.0;
        for (size_t i = 0; i < wm.values.size(); ++i)
            worst = std::max(worst, std::abs(wm.values[i] -
                                             0.5 * (wa.values[i] + wb.values[i])));
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("full tomography round trip stays within 5%") {
    // state -> kernel -> Wigner -> quadratures (via the field) -> Wigner again
    auto angles = uniform_angles(90);
    Grid1D offs(-8.0, 8.0, 257);
    Grid1D out(-6.0, 6.0, 97);
    std::vector<StateSpec> specs = {CoherentSpec{cxd(0.9, 0.5)}, ThermalSpec{1.0}};
    for (const StateSpec& spec : specs) {
        DensityKernel k = realize_kernel(spec, kXGrid);
        WignerField w = wigner_transform(k, kXGrid, kXGrid);
        Sinogram rows;
        rows.angles = angles;
        rows.offsets = offs;
        rows.measure = Measure::DqDpOver2Pi;
        rows.values.resize(angles.size() * static_cast<size_t>(offs.n));
        for (size_t a = 0; a < angles.size(); ++a) {
            auto r = quadrature_distribution(w, angles[a], offs);
            std::copy(r.begin(), r.end(), rows.values.begin() + a * offs.n);
        }
        WignerField rec = reconstruct_wigner(rows, out, out);
        WignerField truth = wigner_transform(k, out, out);
        CHECK(rel_l2(rec.values, truth.values) < 0.05);
    }
}
