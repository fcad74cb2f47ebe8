// tomokit command-line driver. Every subcommand reads and writes files
// (CSV + JSON sidecars, PGM for images); pipelines are chains of
// invocations. Exit codes: 0 success, 1 verification failure, 2 bad
// arguments, 3 numerical precondition failure.

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "tomokit/fractional.hpp"
#include "tomokit/io.hpp"
#include "tomokit/mub_continuous.hpp"
#include "tomokit/qudit.hpp"
#include "tomokit/radon.hpp"
#include "tomokit/states.hpp"
#include "tomokit/wigner.hpp"
#include "verify.hpp"

#include <nlohmann/json.hpp>

using namespace tomokit;
using nlohmann::json;

namespace {

struct GridArgs {
    double min = -8.0, max = 8.0;
    int n = 257;
    Grid1D grid() const { return Grid1D(min, max, n); }
};

struct OffsetArgs {
    double min = -8.0, max = 8.0;
    int n = 257;
    Grid1D grid() const { return Grid1D(min, max, n); }
};

void add_grid_opts(CLI::App* cmd, GridArgs& g) {
    cmd->add_option("--grid-min", g.min, "output grid minimum");
    cmd->add_option("--grid-max", g.max, "output grid maximum");
    cmd->add_option("--grid-n", g.n, "output grid point count");
}

void add_offset_opts(CLI::App* cmd, OffsetArgs& o) {
    cmd->add_option("--offset-min", o.min, "offset grid minimum");
    cmd->add_option("--offset-max", o.max, "offset grid maximum");
    cmd->add_option("--offsets", o.n, "offset grid point count");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// named presets plus arbitrary JSON via --spec
StateSpec resolve_spec(const std::string& spec_path, const std::string& kind) {
    if (!spec_path.empty()) return parse_state_spec(read_file(spec_path));
    if (kind == "vacuum") return VacuumSpec{};
    if (kind == "fock1") return FockSpec{1};
    if (kind == "fock2") return FockSpec{2};
    if (kind == "coherent") return CoherentSpec{{0.9, 0.5}};
    if (kind == "thermal") return ThermalSpec{1.0};
    if (kind == "cat") return CatSpec{{1.3, 0.0}, +1};
    if (kind == "mixed01") return MixedSpec{{{0.5, VacuumSpec{}}, {0.5, FockSpec{1}}}};
    if (kind == "gaussian") return Phantom2DSpec{{{1.0, 0.0, 0.0, 1.0}}};
    if (kind == "two-blob")
        return Phantom2DSpec{{{0.6, -2.0, -1.0, 1.1}, {0.4, 2.0, 1.5, 0.8}}};
    throw WrongKind("unknown --kind '" + kind + "' (and no --spec given)");
}

InversionMethod parse_method(const std::string& m) {
    if (m == "pv") return InversionMethod::PvKernel;
    if (m == "ramp") return InversionMethod::RampFFT;
    throw WrongKind("--method must be pv or ramp");
}

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

std::string artifact_type(const std::string& base) {
    json j = json::parse(read_file(base + ".json"));
    return j.value("type", "");
}

void emit_report(const json& j, const std::string& out) {
    std::string text = j.dump(2) + "\n";
    if (out.empty()) std::fputs(text.c_str(), stdout);
    else {
        std::ofstream f(out);
        f << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tomokit: classical and quantum state reconstruction toolkit"};
    app.require_subcommand(1);

    // ---- phantom ----------------------------------------------------------
    auto* cmd_phantom = app.add_subcommand("phantom", "realize a 2D phantom density");
    std::string ph_spec, ph_kind = "two-blob", ph_out = "phantom";
    bool ph_pgm = false;
    GridArgs ph_grid;
    cmd_phantom->add_option("--spec", ph_spec, "state spec JSON file");
    cmd_phantom->add_option("--kind", ph_kind, "preset phantom kind");
    add_grid_opts(cmd_phantom, ph_grid);
    cmd_phantom->add_option("--out", ph_out, "output base path");
    cmd_phantom->add_flag("--pgm", ph_pgm, "also write a 16-bit PGM image");

    // ---- radon ------------------------------------------------------------
    auto* cmd_radon = app.add_subcommand("radon", "forward Radon transform of a density");
    std::string rd_in = "phantom", rd_out = "sinogram.csv";
    int rd_angles = 180;
    OffsetArgs rd_offs{-12.0, 12.0, 257};
    cmd_radon->add_option("--in", rd_in, "input density base path");
    cmd_radon->add_option("--angles", rd_angles, "number of uniform angles in [0, pi)");
    add_offset_opts(cmd_radon, rd_offs);
    cmd_radon->add_option("--out", rd_out, "output sinogram CSV");

    // ---- iradon -----------------------------------------------------------
    auto* cmd_iradon = app.add_subcommand("iradon", "inverse Radon reconstruction");
    std::string ir_in = "sinogram.csv", ir_out = "reconstruction", ir_method = "pv";
    double ir_eps = -1.0;
    bool ir_pgm = false, ir_clip = false;
    GridArgs ir_grid;
    cmd_iradon->add_option("--in", ir_in, "input sinogram CSV");
    cmd_iradon->add_option("--method", ir_method, "pv | ramp");
    cmd_iradon->add_option("--epsilon", ir_eps, "PV regularization (default: spacing/16)");
    add_grid_opts(cmd_iradon, ir_grid);
    cmd_iradon->add_flag("--clip-negative", ir_clip, "clip negative values (classical)");
    cmd_iradon->add_flag("--pgm", ir_pgm, "also write a 16-bit PGM image");
    cmd_iradon->add_option("--out", ir_out, "output density base path");

    // ---- kernel -----------------------------------------------------------
    auto* cmd_kernel = app.add_subcommand("kernel", "realize a density kernel <x1|rho|x2>");
    std::string kn_spec, kn_kind = "vacuum", kn_out = "kernel";
    GridArgs kn_grid;
    cmd_kernel->add_option("--spec", kn_spec, "state spec JSON file");
    cmd_kernel->add_option("--kind", kn_kind, "preset state kind");
    add_grid_opts(cmd_kernel, kn_grid);
    cmd_kernel->add_option("--out", kn_out, "output kernel base path");

    // ---- wigner -----------------------------------------------------------
    auto* cmd_wigner = app.add_subcommand("wigner", "Wigner transform of a kernel");
    std::string wg_in = "kernel", wg_out = "wigner";
    GridArgs wg_grid;
    cmd_wigner->add_option("--in", wg_in, "input kernel base path");
    add_grid_opts(cmd_wigner, wg_grid);
    cmd_wigner->add_option("--out", wg_out, "output Wigner base path");

    // ---- quadratures ------------------------------------------------------
    auto* cmd_quad = app.add_subcommand("quadratures",
                                        "quadrature distributions of a Wigner field");
    std::string qd_in = "wigner", qd_out = "quadratures.csv";
    int qd_angles = 90;
    OffsetArgs qd_offs;
    cmd_quad->add_option("--in", qd_in, "input Wigner base path");
    cmd_quad->add_option("--angles", qd_angles, "number of angles (offset by half a step)");
    add_offset_opts(cmd_quad, qd_offs);
    cmd_quad->add_option("--out", qd_out, "output quadrature CSV");

    // ---- sample -----------------------------------------------------------
    auto* cmd_sample = app.add_subcommand("sample",
                                          "exact or finite-shot quadrature data for a state");
    std::string sm_spec, sm_kind = "vacuum", sm_out = "quadratures.csv", sm_shots = "exact";
    int sm_angles = 90;
    std::uint64_t sm_seed = 1;
    OffsetArgs sm_offs;
    cmd_sample->add_option("--spec", sm_spec, "state spec JSON file");
    cmd_sample->add_option("--kind", sm_kind, "preset state kind");
    cmd_sample->add_option("--angles", sm_angles, "number of angles");
    add_offset_opts(cmd_sample, sm_offs);
    cmd_sample->add_option("--shots", sm_shots, "'exact' or a shot count per angle");
    cmd_sample->add_option("--seed", sm_seed, "RNG seed");
    cmd_sample->add_option("--out", sm_out, "output quadrature CSV");

    // ---- reconstruct-wigner -------------------------------------------------
    auto* cmd_rw = app.add_subcommand("reconstruct-wigner",
                                      "Wigner function from quadrature data");
    std::string rw_in = "quadratures.csv", rw_out = "wigner_recon", rw_method = "pv";
    double rw_eps = -1.0;
    GridArgs rw_grid;
    cmd_rw->add_option("--in", rw_in, "input quadrature CSV");
    cmd_rw->add_option("--method", rw_method, "pv | ramp");
    cmd_rw->add_option("--epsilon", rw_eps, "PV regularization (default: spacing/16)");
    add_grid_opts(cmd_rw, rw_grid);
    cmd_rw->add_option("--out", rw_out, "output Wigner base path");

    // ---- reconstruct-dm -----------------------------------------------------
    auto* cmd_rdm = app.add_subcommand("reconstruct-dm",
                                       "density-matrix kernel from quadrature data");
    std::string rdm_in = "quadratures.csv", rdm_out = "kernel_recon";
    double rdm_eps = -1.0;
    GridArgs rdm_grid;
    cmd_rdm->add_option("--in", rdm_in, "input quadrature CSV");
    cmd_rdm->add_option("--epsilon", rdm_eps, "Fourier damping (default: spacing/16)");
    add_grid_opts(cmd_rdm, rdm_grid);
    cmd_rdm->add_option("--out", rdm_out, "output kernel base path");

    // ---- qudit-mub ----------------------------------------------------------
    auto* cmd_qm = app.add_subcommand("qudit-mub", "build the d+1 MUB family");
    int qm_d = 3;
    std::string qm_out = "mub";
    cmd_qm->add_option("--d", qm_d, "prime dimension");
    cmd_qm->add_option("--out", qm_out, "output base path");

    // ---- qudit-sim ----------------------------------------------------------
    auto* cmd_qs = app.add_subcommand("qudit-sim", "measurement probabilities for a qudit");
    int qs_d = 3;
    std::string qs_state = "e0", qs_shots = "exact", qs_out = "probs.csv", qs_spec;
    std::uint64_t qs_seed = 1;
    cmd_qs->add_option("--d", qs_d, "prime dimension");
    cmd_qs->add_option("--state", qs_state, "e0 | mixed | random:<seed>");
    cmd_qs->add_option("--spec", qs_spec, "qudit state spec JSON file");
    cmd_qs->add_option("--shots", qs_shots, "'exact' or shots per basis");
    cmd_qs->add_option("--seed", qs_seed, "sampling RNG seed");
    cmd_qs->add_option("--out", qs_out, "output probability CSV");

    // ---- qudit-recon ----------------------------------------------------------
    auto* cmd_qr = app.add_subcommand("qudit-recon",
                                      "reconstruct a qudit state from probabilities");
    std::string qr_in = "probs.csv", qr_out = "qudit_recon";
    cmd_qr->add_option("--in", qr_in, "input probability CSV");
    cmd_qr->add_option("--out", qr_out, "output state base path");

    // ---- verify ----------------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "run the invariant suite");
    std::string vf_module = "all", vf_out;
    int vf_d = 5;
    cmd_verify->add_option("--module", vf_module,
                           "all | numerics | radon | wigner | fractional | "
                           "mub-continuous | qudit-mub | states");
    cmd_verify->add_option("--d", vf_d, "qudit dimension for the qudit checks");
    cmd_verify->add_option("--out", vf_out, "also write the report to this file");

    // ---- report -----------------------------------------------------------------
    auto* cmd_report = app.add_subcommand("report",
                                          "compare a reconstruction against ground truth");
    std::string rp_in, rp_truth, rp_truth_spec, rp_truth_kind, rp_out;
    cmd_report->add_option("--in", rp_in, "reconstruction base path")->required();
    cmd_report->add_option("--truth", rp_truth, "ground-truth artifact base path");
    cmd_report->add_option("--truth-spec", rp_truth_spec, "ground-truth state spec JSON");
    cmd_report->add_option("--truth-kind", rp_truth_kind, "ground-truth preset kind");
    cmd_report->add_option("--out", rp_out, "write the JSON report here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_phantom) {
            StateSpec spec = resolve_spec(ph_spec, ph_kind);
            Density2D d = realize_phantom(spec, ph_grid.grid(), ph_grid.grid());
            write_density(ph_out, d);
            if (ph_pgm) write_density_pgm(ph_out + "_img", d);
            std::printf("wrote %s.csv\n", ph_out.c_str());
        } else if (*cmd_radon) {
            Density2D d = read_density(rd_in);
            Sinogram s = forward_radon(d, uniform_angles(rd_angles), rd_offs.grid());
            write_sinogram_csv(rd_out, s);
            std::printf("wrote %s\n", rd_out.c_str());
        } else if (*cmd_iradon) {
            Sinogram s = read_sinogram_csv(ir_in);
            s.measure = Measure::PlainDxDy;
            Density2D rec = inverse_radon(s, ir_grid.grid(), ir_grid.grid(),
                                          parse_method(ir_method), ir_eps);
            if (ir_clip)
                for (auto& v : rec.values) v = std::max(v, 0.0);
            write_density(ir_out, rec);
            if (ir_pgm) write_density_pgm(ir_out + "_img", rec);
            std::printf("wrote %s.csv\n", ir_out.c_str());
        } else if (*cmd_kernel) {
            StateSpec spec = resolve_spec(kn_spec, kn_kind);
            DensityKernel k = realize_kernel(spec, kn_grid.grid());
            write_kernel(kn_out, k);
            std::printf("wrote %s.{re,im}.csv\n", kn_out.c_str());
        } else if (*cmd_wigner) {
            DensityKernel k = read_kernel(wg_in);
            WignerField w = wigner_transform(k, wg_grid.grid(), wg_grid.grid());
            write_wigner(wg_out, w);
            std::printf("wrote %s.csv\n", wg_out.c_str());
        } else if (*cmd_quad) {
            WignerField w = read_wigner(qd_in);
            auto angles = uniform_angles(qd_angles);
            Sinogram s;
            s.angles = angles;
            s.offsets = qd_offs.grid();
            s.measure = Measure::DqDpOver2Pi;
            s.values.resize(angles.size() * static_cast<size_t>(s.offsets.n));
            for (size_t a = 0; a < angles.size(); ++a) {
                auto row = quadrature_distribution(w, angles[a], s.offsets);
                std::copy(row.begin(), row.end(),
                          s.values.begin() + a * static_cast<size_t>(s.offsets.n));
            }
            write_sinogram_csv(qd_out, s);
            std::printf("wrote %s\n", qd_out.c_str());
        } else if (*cmd_sample) {
            StateSpec spec = resolve_spec(sm_spec, sm_kind);
            auto angles = uniform_angles(sm_angles);
            Sinogram s = (sm_shots == "exact")
                             ? exact_quadratures(spec, angles, sm_offs.grid())
                             : sample_quadratures(spec, angles, sm_offs.grid(),
                                                  std::stoll(sm_shots), sm_seed);
            write_sinogram_csv(sm_out, s);
            std::printf("wrote %s\n", sm_out.c_str());
        } else if (*cmd_rw) {
            Sinogram s = read_sinogram_csv(rw_in);
            WignerField w = reconstruct_wigner(s, rw_grid.grid(), rw_grid.grid(),
                                               parse_method(rw_method), rw_eps);
            write_wigner(rw_out, w);
            std::printf("wrote %s.csv\n", rw_out.c_str());
        } else if (*cmd_rdm) {
            Sinogram s = read_sinogram_csv(rdm_in);
            auto data = QuadratureDataset::from_sinogram(s, Provenance::Exact);
            DmReconstruction rec = reconstruct_density_matrix(data, rdm_grid.grid(), rdm_eps);
            json diag{{"trace_residual", rec.trace_residual},
                      {"hermiticity_residual", rec.hermiticity_residual}};
            write_kernel(rdm_out, rec.kernel, diag.dump());
            std::printf("wrote %s.{re,im}.csv\n", rdm_out.c_str());
        } else if (*cmd_qm) {
            PrimeDim dim(qm_d);
            MubFamily fam = mub_family(dim);
            for (int b = 0; b <= qm_d; ++b) {
                QuditState basis_as_state{dim, fam.bases[b] * fam.bases[b].adjoint()};
                (void)basis_as_state;  // bases are unitary; store them directly
                std::string base = qm_out + "_b" + std::to_string(b);
                std::ofstream fre(base + ".re.csv"), fim(base + ".im.csv");
                for (int i = 0; i < qm_d; ++i) {
                    for (int j = 0; j < qm_d; ++j) {
                        fre << format17(fam.bases[b](i, j).real())
                            << (j + 1 == qm_d ? "\n" : ",");
                        fim << format17(fam.bases[b](i, j).imag())
                            << (j + 1 == qm_d ? "\n" : ",");
                    }
                }
            }
            json meta{{"type", "mub_family"},
                      {"d", qm_d},
                      {"bases", qm_d + 1},
                      {"orthonormality_residual", fam.orthonormality_residual()},
                      {"flatness_residual", fam.flatness_residual()}};
            std::ofstream f(qm_out + ".json");
            f << meta.dump(2) << "\n";
            std::printf("wrote %s_b*.{re,im}.csv\n", qm_out.c_str());
        } else if (*cmd_qs) {
            PrimeDim dim(qs_d);
            QuditState rho{dim, Eigen::MatrixXcd()};
            if (!qs_spec.empty()) {
                rho = realize_qudit(parse_state_spec(read_file(qs_spec)));
                if (rho.dim.d != qs_d) throw WrongKind("--d does not match the spec");
            } else if (qs_state == "e0") {
                rho.matrix = Eigen::MatrixXcd::Zero(qs_d, qs_d);
                rho.matrix(0, 0) = 1.0;
            } else if (qs_state == "mixed") {
                rho.matrix = Eigen::MatrixXcd::Identity(qs_d, qs_d) / qs_d;
            } else if (qs_state.rfind("random:", 0) == 0) {
                rho = random_mixed_state(dim, std::stoull(qs_state.substr(7)));
            } else {
                throw WrongKind("--state must be e0, mixed or random:<seed>");
            }
            MubFamily fam = mub_family(dim);
            std::vector<double> probs =
                (qs_shots == "exact")
                    ? measurement_probabilities(rho, fam)
                    : sample_measurements(rho, fam, std::stoll(qs_shots), qs_seed);
            write_probs_csv(qs_out, qs_d, probs);
            std::string truth_base = qs_out;
            if (auto dot = truth_base.rfind(".csv"); dot != std::string::npos)
                truth_base.resize(dot);
            write_qudit_state(truth_base + "_truth", rho,
                              qs_shots == "exact" ? "exact" : "sampled:" + qs_shots);
            std::printf("wrote %s\n", qs_out.c_str());
        } else if (*cmd_qr) {
            auto [d, probs] = read_probs_csv(qr_in);
            MubFamily fam = mub_family(PrimeDim(d));
            QuditState rec = reconstruct_qudit(probs, fam);
            write_qudit_state(qr_out, rec, "reconstructed");
            std::printf("wrote %s.{re,im}.csv\n", qr_out.c_str());
        } else if (*cmd_verify) {
            int failures = run_verify(vf_module, vf_d, vf_out);
            if (failures < 0) return 2;
            return failures == 0 ? 0 : 1;
        } else if (*cmd_report) {
            std::string type = artifact_type(rp_in);
            json rep{{"in", rp_in}, {"artifact_type", type}};
            if (type == "density2d") {
                Density2D got = read_density(rp_in);
                Density2D want = rp_truth.empty()
                                     ? realize_phantom(resolve_spec(rp_truth_spec,
                                                                    rp_truth_kind),
                                                       got.gx, got.gy, got.measure)
                                     : read_density(rp_truth);
                rep["rel_l2"] = rel_l2(got.values, want.values);
                double worst = 0.0, peak = 0.0;
                for (size_t i = 0; i < got.values.size(); ++i) {
                    worst = std::max(worst, std::abs(got.values[i] - want.values[i]));
                    peak = std::max(peak, std::abs(want.values[i]));
                }
                rep["max_norm"] = worst / peak;
            } else if (type == "wigner") {
                WignerField got = read_wigner(rp_in);
                WignerField want;
                if (!rp_truth.empty()) {
                    want = read_wigner(rp_truth);
                } else {
                    DensityKernel k = realize_kernel(
                        resolve_spec(rp_truth_spec, rp_truth_kind), Grid1D(-8.0, 8.0, 257));
                    want = wigner_transform(k, got.qgrid, got.pgrid);
                }
                rep["rel_l2"] = rel_l2(got.values, want.values);
            } else if (type == "density_kernel") {
                DensityKernel got = read_kernel(rp_in);
                DensityKernel want = rp_truth.empty()
                                         ? realize_kernel(resolve_spec(rp_truth_spec,
                                                                       rp_truth_kind),
                                                          got.grid)
                                         : read_kernel(rp_truth);
                double worst = 0.0, peak = 0.0;
                for (size_t i = 0; i < got.values.size(); ++i) {
                    worst = std::max(worst, std::abs(got.values[i] - want.values[i]));
                    peak = std::max(peak, std::abs(want.values[i]));
                }
                rep["max_norm"] = worst / peak;
                rep["trace_residual"] = std::abs(got.trace() - 1.0);
                rep["hermiticity_residual"] = got.hermiticity_residual();
            } else if (type == "qudit_state") {
                QuditState got = read_qudit_state(rp_in);
                QuditState want = rp_truth.empty()
                                      ? realize_qudit(resolve_spec(rp_truth_spec,
                                                                   rp_truth_kind))
                                      : read_qudit_state(rp_truth);
                rep["trace_norm_error"] = trace_norm_distance(got.matrix, want.matrix);
                rep["hermiticity_residual"] =
                    (got.matrix - got.matrix.adjoint()).cwiseAbs().maxCoeff();
                rep["trace_residual"] = std::abs(got.matrix.trace().real() - 1.0);
            } else {
                throw IoError("report does not understand artifact type '" + type + "'");
            }
            emit_report(rep, rp_out);
        }
    } catch (const IoError& e) {  // unreadable/missing artifacts are argument errors
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const WrongKind& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const TomoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
