#include "verify.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "tomokit/fractional.hpp"
#include "tomokit/io.hpp"
#include "tomokit/mub_continuous.hpp"
#include "tomokit/pv.hpp"
#include "tomokit/qudit.hpp"
#include "tomokit/radon.hpp"
#include "tomokit/states.hpp"
#include "tomokit/wigner.hpp"

using namespace tomokit;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Reporter {
    std::ostringstream log;
    int failures = 0;

    void check(const std::string& module, const std::string& name, bool ok,
               double value, double bound) {
        log << (ok ? "ok   " : "FAIL ") << module << ": " << name << " (value "
            << format17(value) << ", bound " << format17(bound) << ")\n";
        if (!ok) ++failures;
    }
    void leq(const std::string& module, const std::string& name, double value,
             double bound) {
        check(module, name, value <= bound, value, bound);
    }
};

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

void verify_numerics(Reporter& r) {
    Grid1D g(-8.0, 8.0, 257);
    PVKernel k(default_epsilon(g));
    double odd = 0.0;
    for (int i = 0; i < g.n; ++i) odd += pv_g(k, g.point(i) - 0.0);
    r.leq("numerics", "kernel oddness on a symmetric grid", std::abs(odd), 1e-12);

    std::vector<double> f(g.n);
    for (int i = 0; i < g.n; ++i) f[i] = std::exp(-g.point(i) * g.point(i));
    auto pv = pv_filter_profile(f, g, k);
    auto rp = ramp_filter(f, g);
    r.leq("numerics", "pv vs ramp filtering, relative L2", rel_l2(pv, rp), 0.01);

    double v = pv_convolve(f, g, k, 0.0);
    r.leq("numerics", "Gaussian at origin vs 4 sqrt(pi)",
          std::abs(v - 4.0 * std::sqrt(kPi)) / (4.0 * std::sqrt(kPi)), 5e-3);
}

void verify_radon(Reporter& r) {
    Grid1D g(-9.5, 9.5, 641);
    Density2D d;
    d.gx = g; d.gy = g;
    d.measure = Measure::PlainDxDy;
    d.classical = true;
    d.values.resize(static_cast<size_t>(g.n) * g.n);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            double x = g.point(ix), y = g.point(iy);
            d.at(iy, ix) = std::exp(-(x * x + y * y) / (2.0 * 1.44));
        }
    d.normalize();
    Grid1D offs(-14.0, 14.0, 257);
    Sinogram s = forward_radon(d, uniform_angles(16), offs);
    double peak = 0.0, dev = 0.0;
    for (double vv : s.values) peak = std::max(peak, std::abs(vv));
    for (size_t a = 1; a < s.angles.size(); ++a)
        for (int kk = 0; kk < offs.n; ++kk)
            dev = std::max(dev, std::abs(s.at(static_cast<int>(a), kk) - s.at(0, kk)));
    r.leq("radon", "isotropy: max relative row-to-row deviation", dev / peak, 1e-4);

    Grid1D out(-6.0, 6.0, 97);
    Density2D rec = inverse_radon(s, out, out);
    r.check("radon", "reconstructed center is positive", rec.at(48, 48) > 0.0,
            rec.at(48, 48), 0.0);
    r.leq("radon", "mass preservation |int R - int row|",
          std::abs(rec.integral() - s.row_integral(0)), 0.02);
}

void verify_wigner(Reporter& r) {
    Grid1D g(-8.0, 8.0, 257);
    DensityKernel k = realize_kernel(VacuumSpec{}, g);
    WignerField w = wigner_transform(k, g, g);
    r.leq("wigner", "vacuum W(0,0) vs 2", std::abs(w.at(128, 128) - 2.0), 1e-3);
    r.leq("wigner", "normalization residual", std::abs(w.integral() - 1.0), 1e-4);
    r.leq("wigner", "vacuum purity via trace product",
          std::abs(trace_product(w, w) - 1.0), 1e-3);
    double worst = 0.0;
    for (int iq = 0; iq < g.n; iq += 16) {
        double acc = 0.0;
        for (int ip = 0; ip < g.n; ++ip) {
            double wt = (ip == 0 || ip == g.n - 1) ? 0.5 : 1.0;
            acc += wt * w.at(ip, iq);
        }
        acc *= g.spacing() / (2.0 * kPi);
        worst = std::max(worst, std::abs(acc - k.at(iq, iq).real()));
    }
    r.leq("wigner", "p-marginal equals the kernel diagonal", worst, 1e-3);
}

void verify_fractional(Reporter& r) {
    double worst = 0.0;
    for (double theta : {0.4, 1.1, -0.9})
        for (double x : {-1.0, 0.5})
            for (double xp : {0.2, 1.7})
                worst = std::max(worst,
                                 std::abs(std::norm(quadrature_amplitude(theta, x, xp)) -
                                          1.0 / (2.0 * kPi * std::abs(std::sin(theta)))));
    r.leq("fractional", "modulus law residual", worst, 1e-12);

    worst = 0.0;
    for (double theta : {kPi / 6.0, kPi / 3.0, kPi / 2.0})
        for (double x : {-1.2, 0.7})
            worst = std::max(worst, std::abs(rotation_matrix_element(theta, x, -0.4, 200) -
                                             quadrature_amplitude(theta, x, -0.4)));
    r.leq("fractional", "series vs closed form at nmax = 200", worst, 1e-8);

    r.leq("fractional", "overlap law at (pi/2, 0)",
          std::abs(continuous_mub_overlap(kPi / 2.0, 0.0) - 1.0 / (2.0 * kPi)), 1e-15);
}

void verify_mub_continuous(Reporter& r) {
    Grid1D g(-8.0, 8.0, 257);
    Sinogram s = exact_quadratures(VacuumSpec{}, uniform_angles(90), g);
    auto rec = reconstruct_density_matrix(
        QuadratureDataset::from_sinogram(s, Provenance::Exact), g);
    DensityKernel truth = realize_kernel(VacuumSpec{}, g);
    double worst = 0.0, peak = 0.0;
    for (size_t i = 0; i < truth.values.size(); ++i) {
        worst = std::max(worst, std::abs(rec.kernel.values[i] - truth.values[i]));
        peak = std::max(peak, std::abs(truth.values[i]));
    }
    r.leq("mub-continuous", "vacuum kernel max-norm error", worst / peak, 0.03);
    r.leq("mub-continuous", "trace residual before renormalization", rec.trace_residual,
          0.02);
    r.leq("mub-continuous", "hermiticity residual", rec.hermiticity_residual, 0.05);
}

void verify_qudit(Reporter& r, int d) {
    PrimeDim dim(d);
    MubFamily fam = mub_family(dim);
    r.leq("qudit-mub", "basis orthonormality residual (d = " + std::to_string(d) + ")",
          fam.orthonormality_residual(), 1e-12);
    r.leq("qudit-mub", "flatness |<c;b|c';b'>|^2 - 1/d", fam.flatness_residual(), 1e-12);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        QuditState rho = random_mixed_state(dim, 9000 + t);
        auto rec = reconstruct_qudit(measurement_probabilities(rho, fam), fam);
        worst = std::max(worst, trace_norm_distance(rec.matrix, rho.matrix));
    }
    r.leq("qudit-mub", "exact round trip trace-norm error (10 states)", worst, 1e-10);
    bool all = true;
    for (int m = 1; m < d; ++m)
        for (int b = 0; b < d; ++b) all = all && power_identity_check(dim, m, b);
    r.check("qudit-mub", "power identity over all (m, b)", all, all ? 1.0 : 0.0, 1.0);
}

void verify_states(Reporter& r) {
    Grid1D g(-8.0, 8.0, 257);
    std::vector<StateSpec> lib = {VacuumSpec{}, FockSpec{1},
                                  CoherentSpec{std::complex<double>(0.9, 0.5)},
                                  ThermalSpec{1.0}, CatSpec{{1.3, 0.0}, +1}};
    double worst_trace = 0.0, worst_herm = 0.0, worst_eig = 0.0;
    for (const auto& spec : lib) {
        DensityKernel k = realize_kernel(spec, g);
        worst_trace = std::max(worst_trace, std::abs(k.trace() - 1.0));
        worst_herm = std::max(worst_herm, k.hermiticity_residual());
        worst_eig = std::min(worst_eig, k.min_eigenvalue());
    }
    r.leq("states", "library kernel trace residual", worst_trace, 1e-5);
    r.leq("states", "library kernel hermiticity residual", worst_herm, 1e-12);
    r.check("states", "library kernels positive semidefinite", worst_eig >= -1e-8,
            worst_eig, -1e-8);
}

}  // namespace

int run_verify(const std::string& module, int d, const std::string& out_path) {
    Reporter r;
    bool all = module == "all";
    if (all || module == "numerics") verify_numerics(r);
    if (all || module == "radon") verify_radon(r);
    if (all || module == "wigner") verify_wigner(r);
    if (all || module == "fractional") verify_fractional(r);
    if (all || module == "mub-continuous") verify_mub_continuous(r);
    if (all || module == "qudit-mub") verify_qudit(r, d);
    if (all || module == "states") verify_states(r);

    std::string text = r.log.str();
    if (text.empty()) {
        std::fprintf(stderr, "unknown module '%s'\n", module.c_str());
        return -1;
    }
    std::fputs(text.c_str(), stdout);
    std::printf("%s: %d check(s) failed\n", r.failures ? "FAIL" : "ok", r.failures);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << text << (r.failures ? "FAIL" : "ok") << ": " << r.failures
          << " check(s) failed\n";
    }
    return r.failures;
}
