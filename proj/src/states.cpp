#include "tomokit/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "tomokit/fractional.hpp"
#include <nlohmann/json.hpp>

namespace tomokit {

namespace {
constexpr double kPi = 3.14159265358979323846;

// <x|alpha> for complex alpha; a|alpha> = alpha|alpha>
cxd coherent_psi(cxd alpha, double x) {
    cxd e = -x * x / 2.0 + std::sqrt(2.0) * alpha * x - alpha * alpha / 2.0 -
            std::norm(alpha) / 2.0;
    return std::pow(kPi, -0.25) * std::exp(e);
}

double cat_norm2(cxd alpha, int parity) {
    double s = parity >= 0 ? 1.0 : -1.0;
    return 1.0 / (2.0 * (1.0 + s * std::exp(-2.0 * std::norm(alpha))));
}

std::vector<double> thermal_weights(double nbar) {
    std::vector<double> w(kThermalTruncation + 1);
    for (int n = 0; n <= kThermalTruncation; ++n)
        w[n] = std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1);
    return w;
}
}  // namespace

bool is_continuous(const StateSpec& spec) {
    if (std::holds_alternative<MixedSpec>(spec)) {
        for (const auto& [w, s] : std::get<MixedSpec>(spec).parts)
            if (!is_continuous(s)) return false;
        return true;
    }
    return std::holds_alternative<VacuumSpec>(spec) || std::holds_alternative<FockSpec>(spec) ||
           std::holds_alternative<CoherentSpec>(spec) ||
           std::holds_alternative<ThermalSpec>(spec) || std::holds_alternative<CatSpec>(spec);
}

bool is_phantom(const StateSpec& spec) { return std::holds_alternative<Phantom2DSpec>(spec); }

bool is_qudit(const StateSpec& spec) {
    return std::holds_alternative<QuditPureSpec>(spec) ||
           std::holds_alternative<QuditRandomMixedSpec>(spec);
}

DensityKernel realize_kernel(const StateSpec& spec, const Grid1D& grid) {
    if (!is_continuous(spec)) throw WrongKind("realize_kernel needs a continuous state");
    DensityKernel k;
    k.grid = grid;
    k.values.assign(static_cast<size_t>(grid.n) * grid.n, cxd(0.0));

    auto add_pure = [&](const std::vector<cxd>& psi, double weight) {
        for (int i = 0; i < grid.n; ++i)
            for (int j = 0; j < grid.n; ++j)
                k.at(i, j) += weight * psi[i] * std::conj(psi[j]);
    };

    std::function<void(const StateSpec&, double)> add = [&](const StateSpec& s, double w) {
        if (std::holds_alternative<VacuumSpec>(s)) {
            std::vector<cxd> psi(grid.n);
            for (int i = 0; i < grid.n; ++i) psi[i] = oscillator_psi(0, grid.point(i));
            add_pure(psi, w);
        } else if (auto* f = std::get_if<FockSpec>(&s)) {
            std::vector<cxd> psi(grid.n);
            for (int i = 0; i < grid.n; ++i) psi[i] = oscillator_psi(f->n, grid.point(i));
            add_pure(psi, w);
        } else if (auto* c = std::get_if<CoherentSpec>(&s)) {
            std::vector<cxd> psi(grid.n);
            for (int i = 0; i < grid.n; ++i) psi[i] = coherent_psi(c->alpha, grid.point(i));
            add_pure(psi, w);
        } else if (auto* t = std::get_if<ThermalSpec>(&s)) {
            auto wn = thermal_weights(t->nbar);
            OscillatorBasis basis = build_oscillator_basis(kThermalTruncation, grid);
            for (int n = 0; n <= kThermalTruncation; ++n) {
                std::vector<cxd> psi(grid.n);
                for (int i = 0; i < grid.n; ++i) psi[i] = basis.at(n, i);
                add_pure(psi, w * wn[n]);
            }
        } else if (auto* cat = std::get_if<CatSpec>(&s)) {
            double sign = cat->parity >= 0 ? 1.0 : -1.0;
            double n2 = cat_norm2(cat->alpha, cat->parity);
            std::vector<cxd> psi(grid.n);
            for (int i = 0; i < grid.n; ++i) {
                double x = grid.point(i);
                psi[i] = coherent_psi(cat->alpha, x) + sign * coherent_psi(-cat->alpha, x);
            }
            add_pure(psi, w * n2);
        } else if (auto* mx = std::get_if<MixedSpec>(&s)) {
            for (const auto& [pw, ps] : mx->parts) add(ps, w * pw);
        }
    };
    add(spec, 1.0);
    return k;
}

Density2D realize_phantom(const StateSpec& spec, const Grid1D& gx, const Grid1D& gy,
                          Measure measure) {
    auto* ph = std::get_if<Phantom2DSpec>(&spec);
    if (!ph) throw WrongKind("realize_phantom needs a Phantom2D spec");
    Density2D d;
    d.gx = gx;
    d.gy = gy;
    d.measure = measure;
    d.classical = true;
    d.values.assign(static_cast<size_t>(gx.n) * gy.n, 0.0);
    for (const auto& b : ph->blobs) {
        double inv2s2 = 1.0 / (2.0 * b.sigma * b.sigma);
        double amp = b.weight / (2.0 * kPi * b.sigma * b.sigma);
        for (int iy = 0; iy < gy.n; ++iy)
            for (int ix = 0; ix < gx.n; ++ix) {
                double dx = gx.point(ix) - b.cx, dy = gy.point(iy) - b.cy;
                d.at(iy, ix) += amp * std::exp(-(dx * dx + dy * dy) * inv2s2);
            }
    }
    d.normalize();
    return d;
}

QuditState realize_qudit(const StateSpec& spec) {
    if (auto* p = std::get_if<QuditPureSpec>(&spec)) {
        PrimeDim dim(p->d);
        Eigen::VectorXcd v = p->amplitudes;
        if (v.size() != p->d) throw WrongKind("qudit amplitude count != d");
        double n = v.norm();
        if (n == 0.0) throw WrongKind("zero qudit state vector");
        v /= n;
        return QuditState{dim, v * v.adjoint()};
    }
    if (auto* r = std::get_if<QuditRandomMixedSpec>(&spec)) {
        return random_mixed_state(PrimeDim(r->d), r->seed);
    }
    throw WrongKind("realize_qudit needs a qudit spec");
}

double exact_quadrature_density(const StateSpec& spec, double theta, double xprime) {
    if (std::holds_alternative<VacuumSpec>(spec)) {
        return std::exp(-xprime * xprime) / std::sqrt(kPi);
    }
    if (auto* f = std::get_if<FockSpec>(&spec)) {
        double p = oscillator_psi(f->n, xprime);  // Fock states are isotropic
        return p * p;
    }
    if (auto* c = std::get_if<CoherentSpec>(&spec)) {
        double mu = std::sqrt(2.0) * std::real(c->alpha * std::exp(cxd(0.0, -theta)));
        double u = xprime - mu;
        return std::exp(-u * u) / std::sqrt(kPi);
    }
    if (auto* t = std::get_if<ThermalSpec>(&spec)) {
        double s2 = t->nbar + 0.5;
        return std::exp(-xprime * xprime / (2.0 * s2)) / std::sqrt(2.0 * kPi * s2);
    }
    if (auto* cat = std::get_if<CatSpec>(&spec)) {
        double sign = cat->parity >= 0 ? 1.0 : -1.0;
        cxd ap = cat->alpha * std::exp(cxd(0.0, -theta));  // U(theta)|a> = |a e^{-i theta}>
        cxd amp = coherent_psi(ap, xprime) + sign * coherent_psi(-ap, xprime);
        return cat_norm2(cat->alpha, cat->parity) * std::norm(amp);
    }
    if (auto* mx = std::get_if<MixedSpec>(&spec)) {
        double s = 0.0;
        for (const auto& [w, ps] : mx->parts)
            s += w * exact_quadrature_density(ps, theta, xprime);
        return s;
    }
    throw WrongKind("no closed-form quadrature density for this spec");
}

Sinogram exact_quadratures(const StateSpec& spec, const std::vector<double>& angles,
                           const Grid1D& offsets) {
    Sinogram s;
    s.angles = angles;
    s.offsets = offsets;
    s.measure = Measure::DqDpOver2Pi;
    s.values.resize(angles.size() * static_cast<size_t>(offsets.n));
    for (size_t a = 0; a < angles.size(); ++a)
        for (int k = 0; k < offsets.n; ++k)
            s.at(static_cast<int>(a), k) =
                exact_quadrature_density(spec, angles[a], offsets.point(k));
    return s;
}

Sinogram sample_quadratures(const StateSpec& spec, const std::vector<double>& angles,
                            const Grid1D& offsets, long long shots, std::uint64_t seed) {
    if (shots < 1) throw BadGrid("shots must be >= 1");
    Sinogram s;
    s.angles = angles;
    s.offsets = offsets;
    s.measure = Measure::DqDpOver2Pi;
    s.values.assign(angles.size() * static_cast<size_t>(offsets.n), 0.0);

    const int fine = 8 * (offsets.n - 1) + 1;
    const double dx = offsets.spacing();
    std::mt19937_64 rng(seed);
    auto uniform53 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    for (size_t a = 0; a < angles.size(); ++a) {
        // cumulative trapezoid of the exact density on a refined grid
        Grid1D fg(offsets.min, offsets.max, fine);
        std::vector<double> cdf(fine, 0.0), x(fine);
        double prev = exact_quadrature_density(spec, angles[a], fg.point(0));
        x[0] = fg.point(0);
        for (int i = 1; i < fine; ++i) {
            double cur = exact_quadrature_density(spec, angles[a], fg.point(i));
            cdf[i] = cdf[i - 1] + 0.5 * (prev + cur) * fg.spacing();
            x[i] = fg.point(i);
            prev = cur;
        }
        double total = cdf.back();
        for (long long t = 0; t < shots; ++t) {
            double u = uniform53() * total;
            auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
            int hi = static_cast<int>(it - cdf.begin());
            double draw;
            if (hi <= 0) draw = x[0];
            else {
                double seg = cdf[hi] - cdf[hi - 1];
                double fr = seg > 0 ? (u - cdf[hi - 1]) / seg : 0.0;
                draw = x[hi - 1] + fr * fg.spacing();
            }
            int bin = static_cast<int>(std::lround(offsets.locate(draw)));
            bin = std::clamp(bin, 0, offsets.n - 1);
            s.at(static_cast<int>(a), bin) += 1.0;
        }
        for (int k = 0; k < offsets.n; ++k)
            s.at(static_cast<int>(a), k) /= static_cast<double>(shots) * dx;
    }
    return s;
}

// ---------------------------------------------------------------------------
// JSON round trip

namespace {
using nlohmann::json;

json spec_to_json_impl(const StateSpec& spec) {
    json j;
    if (std::holds_alternative<VacuumSpec>(spec)) {
        j["kind"] = "vacuum";
    } else if (auto* f = std::get_if<FockSpec>(&spec)) {
        j["kind"] = "fock";
        j["n"] = f->n;
    } else if (auto* c = std::get_if<CoherentSpec>(&spec)) {
        j["kind"] = "coherent";
        j["alpha"] = {c->alpha.real(), c->alpha.imag()};
    } else if (auto* t = std::get_if<ThermalSpec>(&spec)) {
        j["kind"] = "thermal";
        j["nbar"] = t->nbar;
    } else if (auto* cat = std::get_if<CatSpec>(&spec)) {
        j["kind"] = "cat";
        j["alpha"] = {cat->alpha.real(), cat->alpha.imag()};
        j["parity"] = cat->parity;
    } else if (auto* mx = std::get_if<MixedSpec>(&spec)) {
        j["kind"] = "mixed";
        j["parts"] = json::array();
        for (const auto& [w, s] : mx->parts)
            j["parts"].push_back({{"weight", w}, {"state", spec_to_json_impl(s)}});
    } else if (auto* ph = std::get_if<Phantom2DSpec>(&spec)) {
        j["kind"] = "phantom";
        j["blobs"] = json::array();
        for (const auto& b : ph->blobs)
            j["blobs"].push_back(
                {{"weight", b.weight}, {"cx", b.cx}, {"cy", b.cy}, {"sigma", b.sigma}});
    } else if (auto* qp = std::get_if<QuditPureSpec>(&spec)) {
        j["kind"] = "qudit-pure";
        j["d"] = qp->d;
        j["amplitudes"] = json::array();
        for (int i = 0; i < qp->amplitudes.size(); ++i)
            j["amplitudes"].push_back({qp->amplitudes[i].real(), qp->amplitudes[i].imag()});
    } else if (auto* qr = std::get_if<QuditRandomMixedSpec>(&spec)) {
        j["kind"] = "qudit-random";
        j["d"] = qr->d;
        j["seed"] = qr->seed;
    }
    return j;
}

StateSpec json_to_spec_impl(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "vacuum") return VacuumSpec{};
    if (kind == "fock") return FockSpec{j.at("n").get<int>()};
    if (kind == "coherent") {
        auto a = j.at("alpha");
        return CoherentSpec{cxd(a.at(0).get<double>(), a.at(1).get<double>())};
    }
    if (kind == "thermal") return ThermalSpec{j.at("nbar").get<double>()};
    if (kind == "cat") {
        auto a = j.at("alpha");
        return CatSpec{cxd(a.at(0).get<double>(), a.at(1).get<double>()),
                       j.at("parity").get<int>()};
    }
    if (kind == "mixed") {
        MixedSpec m;
        double wsum = 0.0;
        for (const auto& p : j.at("parts")) {
            double w = p.at("weight").get<double>();
            if (w < 0) throw WrongKind("mixture weight < 0");
            wsum += w;
            m.parts.emplace_back(w, json_to_spec_impl(p.at("state")));
        }
        if (std::abs(wsum - 1.0) > 1e-9) throw WrongKind("mixture weights must sum to 1");
        return m;
    }
    if (kind == "phantom") {
        Phantom2DSpec ph;
        for (const auto& b : j.at("blobs"))
            ph.blobs.push_back({b.at("weight").get<double>(), b.at("cx").get<double>(),
                                b.at("cy").get<double>(), b.at("sigma").get<double>()});
        return ph;
    }
    if (kind == "qudit-pure") {
        QuditPureSpec q;
        q.d = j.at("d").get<int>();
        auto amps = j.at("amplitudes");
        q.amplitudes.resize(amps.size());
        for (size_t i = 0; i < amps.size(); ++i)
            q.amplitudes[static_cast<int>(i)] =
                cxd(amps.at(i).at(0).get<double>(), amps.at(i).at(1).get<double>());
        return q;
    }
    if (kind == "qudit-random")
        return QuditRandomMixedSpec{j.at("d").get<int>(), j.at("seed").get<std::uint64_t>()};
    throw WrongKind("unknown state kind '" + kind + "'");
}
}  // namespace

StateSpec parse_state_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw WrongKind(std::string("bad state JSON: ") + e.what());
    }
    return json_to_spec_impl(j);
}

std::string state_spec_to_json(const StateSpec& spec) {
    return spec_to_json_impl(spec).dump();
}

}  // namespace tomokit
