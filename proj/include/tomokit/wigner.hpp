// Wigner transforms of density kernels, phase-space traces, quadrature
// marginals and tomographic reconstruction of the Wigner function.
// hbar = 1, dimensionless quadratures, measure dq dp / 2pi throughout.

#pragma once

#include <complex>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/radon.hpp"

namespace tomokit {

using cxd = std::complex<double>;

// <x_i| rho |x_j> sampled on a coordinate grid
struct DensityKernel {
    Grid1D grid;
    std::vector<cxd> values;  // row-major, values[i * grid.n + j]

    cxd& at(int i, int j) { return values[static_cast<size_t>(i) * grid.n + j]; }
    cxd at(int i, int j) const { return values[static_cast<size_t>(i) * grid.n + j]; }

    double trace() const;                  // sum_i K_ii * dx
    double hermiticity_residual() const;   // max |K_ij - conj(K_ji)|
    double min_eigenvalue() const;         // of the operator (K * dx)
    // Hermitian 1e-12, unit trace 1e-6, eigenvalues >= -1e-8
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-6,
                  double eig_floor = -1e-8) const;
};

struct WignerField {
    Grid1D qgrid, pgrid;
    std::vector<double> values;   // values[ip * qgrid.n + iq]
    double imag_residual = 0.0;   // max imaginary part discarded on construction

    double& at(int ip, int iq) { return values[static_cast<size_t>(ip) * qgrid.n + iq]; }
    double at(int ip, int iq) const { return values[static_cast<size_t>(ip) * qgrid.n + iq]; }
    double integral() const;      // under dq dp / 2pi
    Density2D as_density() const; // measure DqDpOver2Pi view for radon machinery
};

// W(q,p) = int e^{-ipy} <q+y/2| rho |q-y/2> dy. When the q-grid sits on
// kernel nodes the anti-diagonals are sampled exactly (y step = 2 dx);
// otherwise bilinear interpolation with y step = dx. Throws
// NyquistViolation when the p-grid exceeds the resolvable band.
WignerField wigner_transform(const DensityKernel& kernel, const Grid1D& qgrid,
                             const Grid1D& pgrid);

// Wigner transform of an arbitrary Hermitian-sampled kernel (same machinery,
// no state validation) - used for operator kernels such as projectors
WignerField wigner_transform_raw(const Grid1D& xgrid, const std::vector<cxd>& kernel,
                                 const Grid1D& qgrid, const Grid1D& pgrid);

// Tr(A B) = int wA wB dq dp / 2pi by 2D trapezoid; grids must match
double trace_product(const WignerField& wa, const WignerField& wb);

struct CharacteristicFunction {
    Grid1D ugrid, vgrid;
    std::vector<cxd> values;  // values[iu * vgrid.n + iv]
    cxd at(int iu, int iv) const { return values[static_cast<size_t>(iu) * vgrid.n + iv]; }
};

// W~(u,v) = Tr[rho e^{-i(u x + v p)}] via the shift-and-phase form
// e^{-iux} e^{-ivp} e^{iuv/2}; inverse Fourier transform reproduces
// wigner_transform
CharacteristicFunction characteristic_function(const DensityKernel& kernel,
                                               const Grid1D& ugrid, const Grid1D& vgrid);

// rho_theta(x') = int W delta(x' - (q cos + p sin)) dq dp / 2pi,
// evaluated as a forward Radon row of the field
std::vector<double> quadrature_distribution(const WignerField& w, double theta,
                                            const Grid1D& offsets);

// -1/pi PV inversion of quadrature data; result is a quasi-probability
WignerField reconstruct_wigner(const Sinogram& quadratures, const Grid1D& qgrid,
                               const Grid1D& pgrid,
                               InversionMethod method = InversionMethod::PvKernel,
                               double epsilon = -1.0);

}  // namespace tomokit
