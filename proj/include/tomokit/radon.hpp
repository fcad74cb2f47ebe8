// Forward and inverse Radon transforms for 2D densities, in configuration
// space (plain dx dy) or phase space (dq dp / 2pi). The inversion is
// filtered back-projection with either the principal-value kernel or the
// FFT ramp; the two differ only in the 1D filter.

#pragma once

#include <cstdint>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/pv.hpp"

namespace tomokit {

struct Density2D {
    Grid1D gx, gy;                // values[iy * gx.n + ix]
    std::vector<double> values;
    Measure measure = Measure::PlainDxDy;
    bool classical = false;       // enforce values >= -tol on validate()

    double& at(int iy, int ix) { return values[static_cast<size_t>(iy) * gx.n + ix]; }
    double at(int iy, int ix) const { return values[static_cast<size_t>(iy) * gx.n + ix]; }

    double integral() const;      // under the declared measure
    void normalize();             // scale so integral() == 1
    // normalization within tol, classical positivity when flagged
    void validate(double norm_tol = 1e-6, double neg_tol = 1e-9) const;
};

struct Sinogram {
    std::vector<double> angles;   // radians, in [0, pi)
    Grid1D offsets;
    std::vector<double> values;   // values[a * offsets.n + k]
    Measure measure = Measure::PlainDxDy;  // convention of the source density

    double& at(int a, int k) { return values[static_cast<size_t>(a) * offsets.n + k]; }
    double at(int a, int k) const { return values[static_cast<size_t>(a) * offsets.n + k]; }
    std::span<const double> row(int a) const {
        return {values.data() + static_cast<size_t>(a) * offsets.n,
                static_cast<size_t>(offsets.n)};
    }
    double row_integral(int a) const;
    void validate(double norm_tol = 1e-4, double neg_tol = 1e-9) const;
};

enum class InversionMethod { PvKernel, RampFFT };

// uniform angle set on [0, pi), endpoint excluded, offset by half a step
// so sin(theta) never vanishes
std::vector<double> uniform_angles(int count, bool half_offset = true);

// line integrals along x' = x cos(theta) + y sin(theta), bilinear sampling,
// honoring the declared measure. Throws SupportClipped when the support of
// the density needs offsets outside the given range.
Sinogram forward_radon(const Density2D& density, const std::vector<double>& angles,
                       const Grid1D& offsets);

// filtered back-projection; epsilon < 0 selects default_epsilon(offsets).
// Prefactor 1/(2pi)^2 for PlainDxDy, 1/(2pi) for DqDpOver2Pi.
Density2D inverse_radon(const Sinogram& sino, const Grid1D& gx, const Grid1D& gy,
                        InversionMethod method = InversionMethod::PvKernel,
                        double epsilon = -1.0);

struct ConditionalFactors {
    std::vector<double> marginal;      // P(p), one entry per y-row
    std::vector<double> conditional;   // P(q|p), same layout as the density
    std::vector<uint8_t> defined;      // 0 where the fiber was empty
};

// rho * weight(measure) = P(q|p) P(p) on the supported rows; rows with
// P(p) <= threshold are flagged and left undefined
ConditionalFactors conditional_factorize(const Density2D& density,
                                         double threshold = 1e-12);

}  // namespace tomokit
