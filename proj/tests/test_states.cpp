#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tomokit/states.hpp"
#include "oracles.hpp"

using namespace tomokit;

namespace {
constexpr double kPi = 3.14159265358979323846;
const Grid1D kXGrid(-8.0, 8.0, 257);
}

TEST_CASE("vacuum kernel is the analytic Gaussian") {
    DensityKernel k = realize_kernel(VacuumSpec{}, kXGrid);
    double worst = 0.0;
    for (int i = 0; i < kXGrid.n; i += 8)
        for (int j = 0; j < kXGrid.n; j += 8) {
            double x1 = kXGrid.point(i), x2 = kXGrid.point(j);
            double want = std::exp(-(x1 * x1 + x2 * x2) / 2.0) / std::sqrt(kPi);
            worst = std::max(worst, std::abs(k.at(i, j) - want));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("Fock-1 diagonal vanishes at the node") {
    DensityKernel k = realize_kernel(FockSpec{1}, kXGrid);
    int mid = (kXGrid.n - 1) / 2;  // x = 0
    CHECK(std::abs(k.at(mid, mid)) < 1e-14);
}

TEST_CASE("thermal truncation keeps the trace") {
    DensityKernel k = realize_kernel(ThermalSpec{1.0}, kXGrid);
    CHECK(std::abs(k.trace() - 1.0) < 1e-6);
}

TEST_CASE("library states satisfy the density-kernel invariants") {
    std::vector<StateSpec> lib = {VacuumSpec{},
                                  FockSpec{2},
                                  CoherentSpec{cxd(0.9, 0.5)},
                                  ThermalSpec{1.0},
                                  CatSpec{cxd(1.3, 0.0), +1},
                                  MixedSpec{{{0.5, VacuumSpec{}}, {0.5, FockSpec{1}}}}};
    for (const auto& spec : lib) {
        DensityKernel k = realize_kernel(spec, kXGrid);
        CHECK_NOTHROW(k.validate(1e-12, 1e-5, -1e-8));
    }
}

TEST_CASE("non-continuous specs are rejected by realize_kernel") {
    CHECK_THROWS_AS(realize_kernel(Phantom2DSpec{{{1, 0, 0, 1}}}, kXGrid), WrongKind);
    CHECK_THROWS_AS(realize_kernel(QuditRandomMixedSpec{3, 1}, kXGrid), WrongKind);
}

TEST_CASE("coherent quadrature mean follows the rotated displacement") {
    CoherentSpec spec{cxd(0.8, -0.6)};
    Grid1D offs(-10.0, 10.0, 401);
    for (double theta : {0.0, 0.5, 1.2, 2.4}) {
        double mean = 0.0;
        for (int k = 0; k < offs.n; ++k) {
            double w = (k == 0 || k == offs.n - 1) ? 0.5 : 1.0;
            mean += w * offs.point(k) * exact_quadrature_density(spec, theta, offs.point(k));
        }
        mean *= offs.spacing();
        double want = std::sqrt(2.0) * std::real(spec.alpha * std::exp(cxd(0.0, -theta)));
        CHECK(std::abs(mean - want) < 1e-3);
    }
}

TEST_CASE("closed-form quadratures match the kernel pipeline") {
    // grid route: kernel -> Wigner -> radon row; closed form must agree
    std::vector<StateSpec> lib = {VacuumSpec{}, FockSpec{1}, CoherentSpec{cxd(0.7, 0.3)},
                                  CatSpec{cxd(1.2, 0.0), +1}};
    Grid1D offs(-8.0, 8.0, 257);
    for (const auto& spec : lib) {
        DensityKernel k = realize_kernel(spec, kXGrid);
        WignerField w = wigner_transform(k, kXGrid, kXGrid);
        // fringe curvature of the cat field dominates the bilinear ray bias
        double tol = std::holds_alternative<CatSpec>(spec) ? 2.5e-3 : 1e-3;
        for (double theta : {0.35, 1.9}) {
            auto row = quadrature_distribution(w, theta, offs);
            double worst = 0.0;
            for (int i = 0; i < offs.n; ++i)
                worst = std::max(worst, std::abs(row[i] - exact_quadrature_density(
                                                              spec, theta, offs.point(i))));
            CHECK(worst < tol);
        }
    }
}

TEST_CASE("phantoms") {
    Grid1D g(-8.0, 8.0, 129);

    SUBCASE("single Gaussian blob is normalized") {
        Density2D d = realize_phantom(Phantom2DSpec{{{1.0, 0.0, 0.0, 1.0}}}, g, g);
        CHECK(std::abs(d.integral() - 1.0) < 1e-6);
    }
    SUBCASE("two well-separated blobs carry their weights") {
        Phantom2DSpec ph{{{0.6, -3.0, 0.0, 0.5}, {0.4, 3.0, 0.0, 0.5}}};
        Density2D d = realize_phantom(ph, g, g);
        double left = 0.0, right = 0.0;
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix)
                (g.point(ix) < 0 ? left : right) += d.at(iy, ix);
        CHECK(left / (left + right) == doctest::Approx(0.6).epsilon(1e-6));
    }
    SUBCASE("a 90-degree rotated blob equals the axis-swapped phantom") {
        // rotating (cx, cy) -> (-cy, cx) means b(x, y) = a(y, -x)
        Density2D a = realize_phantom(Phantom2DSpec{{{1.0, 1.5, 0.4, 0.7}}}, g, g);
        Density2D b = realize_phantom(Phantom2DSpec{{{1.0, -0.4, 1.5, 0.7}}}, g, g);
        double worst = 0.0;
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix)
                worst = std::max(worst, std::abs(b.at(iy, ix) - a.at(g.n - 1 - ix, iy)));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("sampled quadratures") {
    Grid1D offs(-8.0, 8.0, 257);
    auto angles = uniform_angles(4);

    SUBCASE("a million vacuum shots center at zero") {
        Sinogram s = sample_quadratures(VacuumSpec{}, {0.3}, offs, 1000000, 2024);
        double mean = 0.0;
        for (int k = 0; k < offs.n; ++k)
            mean += offs.point(k) * s.at(0, k) * offs.spacing();
        CHECK(std::abs(mean) < 3e-3);  // 3 sigma / sqrt(N) with sigma ~ 0.7
    }
    SUBCASE("rows are normalized densities") {
        Sinogram s = sample_quadratures(ThermalSpec{0.5}, angles, offs, 5000, 7);
        for (int a = 0; a < 4; ++a)
            CHECK(std::abs(s.row_integral(a) - 1.0) < 1e-9);
    }
    SUBCASE("zero shots are rejected") {
        CHECK_THROWS(sample_quadratures(VacuumSpec{}, angles, offs, 0, 1));
    }
    SUBCASE("seeded draws are bit-identical") {
        Sinogram a = sample_quadratures(FockSpec{1}, angles, offs, 2000, 99);
        Sinogram b = sample_quadratures(FockSpec{1}, angles, offs, 2000, 99);
        CHECK(a.values == b.values);
    }
}

TEST_CASE("state specs round trip through JSON") {
    std::vector<StateSpec> lib = {
        VacuumSpec{}, FockSpec{3}, CoherentSpec{cxd(0.5, -0.25)}, ThermalSpec{2.0},
        CatSpec{cxd(1.5, 0.0), -1},
        MixedSpec{{{0.25, VacuumSpec{}}, {0.75, FockSpec{1}}}},
        Phantom2DSpec{{{0.6, -2.0, -1.0, 1.1}, {0.4, 2.0, 1.5, 0.8}}},
        QuditRandomMixedSpec{5, 31}};
    for (const auto& spec : lib) {
        StateSpec back = parse_state_spec(state_spec_to_json(spec));
        CHECK(state_spec_to_json(back) == state_spec_to_json(spec));
    }
    // qudit pure with explicit amplitudes
    QuditPureSpec qp{3, Eigen::VectorXcd(3)};
    qp.amplitudes << cxd(1, 0), cxd(0, 1), cxd(-0.5, 0.5);
    StateSpec back = parse_state_spec(state_spec_to_json(StateSpec(qp)));
    CHECK(state_spec_to_json(back) == state_spec_to_json(StateSpec(qp)));
}

TEST_CASE("bad specs are rejected") {
    CHECK_THROWS_AS(parse_state_spec("{\"kind\":\"nope\"}"), WrongKind);
    CHECK_THROWS_AS(parse_state_spec("not json"), WrongKind);
    CHECK_THROWS_AS(parse_state_spec(
                        "{\"kind\":\"mixed\",\"parts\":[{\"weight\":0.5,"
                        "\"state\":{\"kind\":\"vacuum\"}}]}"),
                    WrongKind);  // weights must sum to 1
}

TEST_CASE("qudit fixtures validate") {
    QuditState rho = realize_qudit(QuditRandomMixedSpec{7, 123});
    CHECK_NOTHROW(rho.validate());
    QuditPureSpec qp{3, Eigen::VectorXcd(3)};
    qp.amplitudes << cxd(2, 0), cxd(0, 0), cxd(0, 0);  // normalized on realize
    QuditState pure = realize_qudit(qp);
    CHECK_NOTHROW(pure.validate());
    CHECK(std::abs(pure.matrix(0, 0).real() - 1.0) < 1e-14);
}
