// Prime-dimension qudits: Schwinger clock/shift pair, modular arithmetic,
// the d+1 mutually unbiased bases, measurement simulation and exact state
// reconstruction from the (d+1) x d probability table.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "tomokit/errors.hpp"

namespace tomokit {

struct PrimeDim {
    int d;
    explicit PrimeDim(int dim);  // throws NotPrime unless 2 <= d <= 101 prime
};

struct QuditState {
    PrimeDim dim;
    Eigen::MatrixXcd matrix;  // d x d, Hermitian, unit trace

    // Hermitian 1e-12, trace 1e-12, eigenvalues >= -1e-10
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-12,
                  double eig_floor = -1e-10) const;
};

// bases[b] has the basis vectors as columns; b = 0..d-1 are the XZ^b
// eigenbases, bases[d] is the computational basis
struct MubFamily {
    PrimeDim dim;
    std::vector<Eigen::MatrixXcd> bases;

    double orthonormality_residual() const;
    // max | |<c;b|c';b'>|^2 - 1/d | over distinct basis pairs
    double flatness_residual() const;
};

// m^{-1} mod d for m not divisible by d (Fermat; d prime)
int mod_inverse(int m, const PrimeDim& d);

struct SchwingerOps {
    Eigen::MatrixXcd X;  // shift  X|n> = |n+1 mod d>
    Eigen::MatrixXcd Z;  // clock  Z|n> = w^n |n>
};
SchwingerOps schwinger_ops(const PrimeDim& d);

// X^m Z^l == w^{-m(m-1)b/2} (X Z^b)^m with l = m b mod d, entrywise 1e-12
bool power_identity_check(const PrimeDim& d, int m, int b);

// |c;b> = d^{-1/2} sum_n w^{b n(n-1)/2 - c n} |n> for odd d. For d = 2 that
// phase degenerates (n(n-1)/2 = 0 on {0,1}) and cannot produce a third
// basis, so b = 1 is completed with the standard i-phase basis
// (|0> + i(-1)^c |1>)/sqrt(2), whose XZ eigenvalue carries a -i factor.
MubFamily mub_family(const PrimeDim& d);

// row-major (d+1) x d table, p[b * d + c] = <c;b| rho |c;b>
std::vector<double> measurement_probabilities(const QuditState& rho, const MubFamily& fam);

// rho = sum_{b,c} |c;b> p[b][c] <c;b| + sum_n |n> p_comp[n] <n| - I; exact
// on exact probabilities. Throws RowNotNormalized / NegativeProbability.
QuditState reconstruct_qudit(const std::vector<double>& probs, const MubFamily& fam,
                             double row_tol = 1e-6);

// empirical frequencies from `shots` draws per basis; deterministic for a
// fixed seed (mt19937_64, 53-bit uniforms, inverse-CDF walk)
std::vector<double> sample_measurements(const QuditState& rho, const MubFamily& fam,
                                        long long shots_per_basis, std::uint64_t seed);

// sum of singular values of (a - b); standard state-error metric
double trace_norm_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Ginibre-sampled random mixed state, deterministic per seed
QuditState random_mixed_state(const PrimeDim& d, std::uint64_t seed);

}  // namespace tomokit
