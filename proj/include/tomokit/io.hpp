// File formats for the CLI pipelines: CSV with explicit headers, JSON
// sidecars for metadata, PGM for human-viewable density images. All floats
// are printed with 17 significant digits so outputs are byte-reproducible.

#pragma once

#include <string>

#include "tomokit/mub_continuous.hpp"
#include "tomokit/qudit.hpp"
#include "tomokit/radon.hpp"
#include "tomokit/wigner.hpp"

namespace tomokit {

std::string format17(double v);

// sinogram / quadrature table: header "theta,xprime,value"
void write_sinogram_csv(const std::string& path, const Sinogram& s);
Sinogram read_sinogram_csv(const std::string& path);

// density: <base>.csv ("x,y,value") + <base>.json (grids, measure)
void write_density(const std::string& base, const Density2D& d);
Density2D read_density(const std::string& base);

// 16-bit PGM, min-max scaled; the scale goes into <base>.json
void write_density_pgm(const std::string& base, const Density2D& d);

// Wigner field: <base>.csv ("q,p,value") + <base>.json (grids, measure,
// normalization residual, imaginary residual)
void write_wigner(const std::string& base, const WignerField& w);
WignerField read_wigner(const std::string& base);

// density kernel: <base>.re.csv / <base>.im.csv (matrix rows) + <base>.json
// (grid, trace, hermiticity residual, extra diagnostics)
void write_kernel(const std::string& base, const DensityKernel& k,
                  const std::string& extra_json = "{}");
DensityKernel read_kernel(const std::string& base);

// probability table: header "basis,outcome,prob"
void write_probs_csv(const std::string& path, int d, const std::vector<double>& probs);
std::pair<int, std::vector<double>> read_probs_csv(const std::string& path);

// qudit state: <base>.re.csv / <base>.im.csv + <base>.json (d, provenance)
void write_qudit_state(const std::string& base, const QuditState& s,
                       const std::string& provenance);
QuditState read_qudit_state(const std::string& base);

}  // namespace tomokit
