// Density-operator expansion in the displacement operators
// Z(a,b) = e^{iax} e^{ibp} and reconstruction of <x1|rho|x2> directly from
// rotated-quadrature data. This is the second, Radon-free reconstruction
// route; it never touches the PV filter or the back-projector.

#pragma once

#include <complex>
#include <vector>

#include "tomokit/radon.hpp"
#include "tomokit/wigner.hpp"

namespace tomokit {

enum class Provenance { Exact, Sampled };

// rotated-quadrature probability rows (same shape as a Sinogram) plus the
// provenance of the values
struct QuadratureDataset {
    std::vector<double> angles;
    Grid1D offsets;
    std::vector<double> values;  // values[a * offsets.n + k]
    Provenance provenance = Provenance::Exact;
    long long shots = 0;  // per angle, when sampled

    double at(int a, int k) const { return values[static_cast<size_t>(a) * offsets.n + k]; }
    static QuadratureDataset from_sinogram(const Sinogram& s, Provenance prov,
                                           long long shots = 0);
    Sinogram to_sinogram() const;
    void validate(double norm_tol = 1e-3) const;
};

// c(a,b) = Tr[rho Z^dagger(a,b)] = int e^{-iax} <x| rho |x+b> dx; equals the
// characteristic function times the BCH phase e^{+iab/2}. Throws
// ShiftOutOfRange when |b| exceeds the kernel extent.
cxd displacement_coefficient(const DensityKernel& kernel, double a, double b);

struct DmReconstruction {
    DensityKernel kernel;
    double hermiticity_residual = 0.0;  // before symmetrization
    double trace_residual = 0.0;        // |trace - 1| before renormalization
};

// <x1|rho|x2> from quadrature data via the epsilon-regularized expansion:
// per angle the offset profile enters through its Fourier transform at
// k = (x1-x2)/sin(theta); the angle integral is taken in the u = cot(theta)
// variable (rows interpolated in theta) so the near-diagonal entries stay
// resolved. Result is Hermitian-symmetrized and trace-renormalized, with
// both corrections reported.
//
// Angles with |sin(theta)| <= angle_tol are rejected (SingularAngleInData);
// epsilon < 0 selects default_epsilon(offsets).
DmReconstruction reconstruct_density_matrix(const QuadratureDataset& data,
                                            const Grid1D& out_grid, double epsilon = -1.0,
                                            double angle_tol = 1e-3);

}  // namespace tomokit
