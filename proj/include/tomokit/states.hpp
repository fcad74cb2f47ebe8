// Ground-truth states and phantoms with closed-form oracles: oscillator
// eigenstates, coherent/thermal/cat states, Gaussian-blob phantoms and
// qudit fixtures. Conventions: a = (x + i p)/sqrt(2), so a coherent state
// alpha has rotated-quadrature mean sqrt(2) Re(alpha e^{-i theta}).

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tomokit/qudit.hpp"
#include "tomokit/radon.hpp"
#include "tomokit/wigner.hpp"

namespace tomokit {

inline constexpr int kThermalTruncation = 60;

struct GaussBlob {
    double weight, cx, cy, sigma;
};

struct VacuumSpec {};
struct FockSpec { int n; };
struct CoherentSpec { cxd alpha; };
struct ThermalSpec { double nbar; };
struct CatSpec { cxd alpha; int parity; };  // parity +1 even, -1 odd
struct MixedSpec;                           // weighted list, defined below
struct Phantom2DSpec { std::vector<GaussBlob> blobs; };
struct QuditPureSpec { int d; Eigen::VectorXcd amplitudes; };
struct QuditRandomMixedSpec { int d; std::uint64_t seed; };

using StateSpec = std::variant<VacuumSpec, FockSpec, CoherentSpec, ThermalSpec,
                               CatSpec, MixedSpec, Phantom2DSpec, QuditPureSpec,
                               QuditRandomMixedSpec>;

struct MixedSpec {
    std::vector<std::pair<double, StateSpec>> parts;  // weights >= 0, sum 1
};

// parse from JSON text, e.g. {"kind":"fock","n":1} or
// {"kind":"mixed","parts":[{"weight":0.5,"state":{"kind":"vacuum"}}, ...]}
StateSpec parse_state_spec(const std::string& json_text);
std::string state_spec_to_json(const StateSpec& spec);

bool is_continuous(const StateSpec& spec);
bool is_phantom(const StateSpec& spec);
bool is_qudit(const StateSpec& spec);

// <x1| rho |x2> from the spec's eigendecomposition; WrongKind unless continuous
DensityKernel realize_kernel(const StateSpec& spec, const Grid1D& grid);

// normalized blob sum; WrongKind unless Phantom2D
Density2D realize_phantom(const StateSpec& spec, const Grid1D& gx, const Grid1D& gy,
                          Measure measure = Measure::PlainDxDy);

QuditState realize_qudit(const StateSpec& spec);

// closed-form rotated-quadrature density rho_theta(x')
double exact_quadrature_density(const StateSpec& spec, double theta, double xprime);

// rows of exact_quadrature_density on an angle x offset grid
Sinogram exact_quadratures(const StateSpec& spec, const std::vector<double>& angles,
                           const Grid1D& offsets);

// histogram frequencies of `shots` inverse-CDF draws per angle (seeded);
// rows are densities on the offset grid (sum * dx = 1)
Sinogram sample_quadratures(const StateSpec& spec, const std::vector<double>& angles,
                            const Grid1D& offsets, long long shots, std::uint64_t seed);

}  // namespace tomokit
