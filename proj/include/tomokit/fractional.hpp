// Rotated-quadrature eigenfunctions psi_{x',theta}(x), the oscillator-basis
// route to the same kernel, projector kernels, and the continuous
// mutually-unbiased-bases overlap law.
//
// Phase convention: psi_{x',theta}(x) =
//   e^{i[pi/4 sgn(sin th) - th/2]} / sqrt(2 pi |sin th|)
//   * exp(-i[(x^2+x'^2) cos th - 2 x x'] / (2 sin th)),
// which makes theta = pi/2 a bare plane wave e^{i x' x}/sqrt(2 pi).

#pragma once

#include <complex>
#include <vector>

#include "tomokit/grid.hpp"

namespace tomokit {

using cxd = std::complex<double>;

inline constexpr double kSinTolerance = 1e-8;

// psi_{x',theta}(x); throws SingularAngle for |sin theta| <= kSinTolerance
cxd quadrature_amplitude(double theta, double x, double xprime);

// |<x2;th2 | x1;th1>|^2 = 1/(2 pi |sin(th1 - th2)|)
double continuous_mub_overlap(double theta1, double theta2);

// harmonic oscillator wave functions psi_0..psi_nmax sampled on a grid,
// evaluated by the stable three-term recurrence (no factorials)
struct OscillatorBasis {
    int nmax;
    Grid1D grid;
    std::vector<double> values;  // values[n * grid.n + i] = psi_n(x_i)

    double at(int n, int i) const { return values[static_cast<size_t>(n) * grid.n + i]; }
    // max |<psi_m, psi_n> dx - delta_mn| over m,n <= upto
    double orthonormality_residual(int upto) const;
};

OscillatorBasis build_oscillator_basis(int nmax, const Grid1D& grid);

// psi_n(x) for a single point
double oscillator_psi(int n, double x);

// sum_{n<=nmax} psi_n(x) psi_n(x') e^{i n theta}, evaluated as the limit of
// the partial-sum sequence (epsilon-algorithm extrapolation; plain truncation
// of this conditionally convergent series stalls at O(nmax^{-1/2})).
// Throws TruncationInsufficient when the extrapolation does not settle
// below tail_tol.
cxd rotation_matrix_element(double theta, double x, double xprime, int nmax,
                            double tail_tol = 1e-8);

// M[i][j] = psi_{x',theta}(x_i) conj(psi_{x',theta}(x_j)) on the grid,
// row-major; optional smooth envelope w(x_i) w(x_j) for finite-window
// realizations (envelope empty = none)
std::vector<cxd> build_projector_kernel(double theta, double xprime, const Grid1D& grid,
                                        const std::vector<double>& envelope = {});

}  // namespace tomokit
