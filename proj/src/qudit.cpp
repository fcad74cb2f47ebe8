#include "tomokit/qudit.hpp"

#include <cmath>
#include <random>
#include <string>

namespace tomokit {

namespace {
constexpr double kPi = 3.14159265358979323846;
using cxd = std::complex<double>;

// w^e for w = e^{2 pi i / d}, exponent reduced mod d first
cxd omega_pow(int d, long long e) {
    long long r = e % d;
    if (r < 0) r += d;
    return std::exp(cxd(0.0, 2.0 * kPi * static_cast<double>(r) / d));
}

// uniform double in [0,1) with exactly 53 random bits; pinned so that the
// seed -> stream contract is stable across platforms
double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace

PrimeDim::PrimeDim(int dim) : d(dim) {
    if (dim < 2 || dim > 101) throw NotPrime("d must be a prime in [2, 101]");
    for (int f = 2; f * f <= dim; ++f)
        if (dim % f == 0) throw NotPrime(std::to_string(dim) + " is not prime");
}

void QuditState::validate(double herm_tol, double trace_tol, double eig_floor) const {
    const int d = dim.d;
    if (matrix.rows() != d || matrix.cols() != d)
        throw GridMismatch("state matrix is not d x d");
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw BadGrid("qudit state is not Hermitian");
    if (std::abs(matrix.trace().real() - 1.0) > trace_tol ||
        std::abs(matrix.trace().imag()) > trace_tol)
        throw BadGrid("qudit state trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < eig_floor)
        throw BadGrid("qudit state has a negative eigenvalue");
}

int mod_inverse(int m, const PrimeDim& dim) {
    int d = dim.d;
    int r = m % d;
    if (r < 0) r += d;
    if (r == 0) throw NotInvertible("0 has no inverse mod " + std::to_string(d));
    // Fermat: m^{d-2} mod d
    long long base = r, acc = 1;
    int e = d - 2;
    while (e > 0) {
        if (e & 1) acc = acc * base % d;
        base = base * base % d;
        e >>= 1;
    }
    return static_cast<int>(acc);
}

SchwingerOps schwinger_ops(const PrimeDim& dim) {
    const int d = dim.d;
    SchwingerOps ops;
    ops.X = Eigen::MatrixXcd::Zero(d, d);
    ops.Z = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        ops.X((n + 1) % d, n) = 1.0;
        ops.Z(n, n) = omega_pow(d, n);
    }
    return ops;
}

bool power_identity_check(const PrimeDim& dim, int m, int b) {
    const int d = dim.d;
    if (m < 1 || m > d - 1) throw BadGrid("power_identity_check needs 1 <= m <= d-1");
    auto ops = schwinger_ops(dim);
    int l = static_cast<int>((static_cast<long long>(m) * b) % d);

    Eigen::MatrixXcd Xm = Eigen::MatrixXcd::Identity(d, d);
    for (int i = 0; i < m; ++i) Xm = ops.X * Xm;
    Eigen::MatrixXcd Zl = Eigen::MatrixXcd::Identity(d, d);
    for (int i = 0; i < l; ++i) Zl = ops.Z * Zl;
    Eigen::MatrixXcd lhs = Xm * Zl;

    Eigen::MatrixXcd Zb = Eigen::MatrixXcd::Identity(d, d);
    for (int i = 0; i < b; ++i) Zb = ops.Z * Zb;
    Eigen::MatrixXcd XZb = ops.X * Zb;
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Identity(d, d);
    for (int i = 0; i < m; ++i) rhs = XZb * rhs;
    rhs *= omega_pow(d, -static_cast<long long>(m) * (m - 1) / 2 * b);

    return (lhs - rhs).cwiseAbs().maxCoeff() < 1e-12;
}

MubFamily mub_family(const PrimeDim& dim) {
    const int d = dim.d;
    MubFamily fam{dim, {}};
    fam.bases.reserve(d + 1);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int b = 0; b < d; ++b) {
        Eigen::MatrixXcd B(d, d);
        for (int c = 0; c < d; ++c)
            for (int n = 0; n < d; ++n) {
                cxd ph;
                if (d == 2 && b == 1) {
                    // i-phase completion; see header
                    ph = (n == 0) ? cxd(1.0)
                                  : cxd(0.0, 1.0) * omega_pow(2, -static_cast<long long>(c));
                } else {
                    long long e = static_cast<long long>(b) * n * (n - 1) / 2 -
                                  static_cast<long long>(c) * n;
                    ph = omega_pow(d, e);
                }
                B(n, c) = ph * norm;
            }
        fam.bases.push_back(std::move(B));
    }
    fam.bases.push_back(Eigen::MatrixXcd::Identity(d, d));
    return fam;
}

double MubFamily::orthonormality_residual() const {
    double worst = 0.0;
    const int d = dim.d;
    for (const auto& B : bases) {
        Eigen::MatrixXcd G = B.adjoint() * B - Eigen::MatrixXcd::Identity(d, d);
        worst = std::max(worst, G.cwiseAbs().maxCoeff());
    }
    return worst;
}

double MubFamily::flatness_residual() const {
    double worst = 0.0;
    const int d = dim.d;
    for (size_t b1 = 0; b1 < bases.size(); ++b1)
        for (size_t b2 = b1 + 1; b2 < bases.size(); ++b2) {
            Eigen::MatrixXcd O = bases[b1].adjoint() * bases[b2];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    worst = std::max(worst, std::abs(std::norm(O(i, j)) - 1.0 / d));
        }
    return worst;
}

std::vector<double> measurement_probabilities(const QuditState& rho, const MubFamily& fam) {
    const int d = rho.dim.d;
    if (fam.dim.d != d) throw GridMismatch("state and family dimensions differ");
    std::vector<double> p(static_cast<size_t>(d + 1) * d, 0.0);
    for (int b = 0; b <= d; ++b)
        for (int c = 0; c < d; ++c) {
            Eigen::VectorXcd v = fam.bases[b].col(c);
            p[static_cast<size_t>(b) * d + c] = (v.adjoint() * rho.matrix * v)(0, 0).real();
        }
    return p;
}

QuditState reconstruct_qudit(const std::vector<double>& probs, const MubFamily& fam,
                             double row_tol) {
    const int d = fam.dim.d;
    if (probs.size() != static_cast<size_t>(d + 1) * d)
        throw GridMismatch("probability table is not (d+1) x d");
    for (int b = 0; b <= d; ++b) {
        double s = 0.0;
        for (int c = 0; c < d; ++c) {
            double v = probs[static_cast<size_t>(b) * d + c];
            if (v < -1e-12) throw NegativeProbability("p[" + std::to_string(b) + "][" +
                                                      std::to_string(c) + "] < 0");
            s += v;
        }
        if (std::abs(s - 1.0) > row_tol)
            throw RowNotNormalized("basis row " + std::to_string(b) + " sums to " +
                                   std::to_string(s));
    }
    Eigen::MatrixXcd out = -Eigen::MatrixXcd::Identity(d, d);
    for (int b = 0; b <= d; ++b)
        for (int c = 0; c < d; ++c) {
            Eigen::VectorXcd v = fam.bases[b].col(c);
            out += probs[static_cast<size_t>(b) * d + c] * (v * v.adjoint());
        }
    return QuditState{fam.dim, std::move(out)};
}

std::vector<double> sample_measurements(const QuditState& rho, const MubFamily& fam,
                                        long long shots_per_basis, std::uint64_t seed) {
    if (shots_per_basis < 1) throw BadGrid("shots_per_basis must be >= 1");
    const int d = rho.dim.d;
    auto exact = measurement_probabilities(rho, fam);
    std::mt19937_64 rng(seed);
    std::vector<double> freq(exact.size(), 0.0);
    for (int b = 0; b <= d; ++b) {
        // per-basis CDF walk
        std::vector<double> cdf(d);
        double acc = 0.0;
        for (int c = 0; c < d; ++c) {
            acc += std::max(0.0, exact[static_cast<size_t>(b) * d + c]);
            cdf[c] = acc;
        }
        for (long long s = 0; s < shots_per_basis; ++s) {
            double u = uniform53(rng) * acc;
            int c = 0;
            while (c < d - 1 && u >= cdf[c]) ++c;
            freq[static_cast<size_t>(b) * d + c] += 1.0;
        }
        for (int c = 0; c < d; ++c)
            freq[static_cast<size_t>(b) * d + c] /= static_cast<double>(shots_per_basis);
    }
    return freq;
}

double trace_norm_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a - b);
    return svd.singularValues().sum();
}

QuditState random_mixed_state(const PrimeDim& dim, std::uint64_t seed) {
    const int d = dim.d;
    std::mt19937_64 rng(seed);
    // Box-Muller on pinned 53-bit uniforms keeps the stream reproducible
    auto gauss = [&rng]() {
        double u1 = uniform53(rng), u2 = uniform53(rng);
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };
    Eigen::MatrixXcd G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = cxd(gauss(), gauss());
    Eigen::MatrixXcd rho = G * G.adjoint();
    rho /= rho.trace().real();
    return QuditState{dim, std::move(rho)};
}

}  // namespace tomokit
