#include "tomokit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tomokit {

using nlohmann::json;

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path + "' for reading");
    return f;
}

json grid_to_json(const Grid1D& g) {
    return json{{"min", g.min}, {"max", g.max}, {"n", g.n}};
}

Grid1D grid_from_json(const json& j) {
    return Grid1D(j.at("min").get<double>(), j.at("max").get<double>(), j.at("n").get<int>());
}

void write_json_file(const std::string& path, const json& j) {
    auto f = open_out(path);
    f << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
    auto f = open_in(path);
    json j;
    f >> j;
    return j;
}

void write_matrix_csv(const std::string& path, int rows, int cols,
                      const std::function<double(int, int)>& get) {
    auto f = open_out(path);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (j) f << ',';
            f << format17(get(i, j));
        }
        f << '\n';
    }
}

std::vector<std::vector<double>> read_matrix_csv(const std::string& path) {
    auto f = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

void write_sinogram_csv(const std::string& path, const Sinogram& s) {
    auto f = open_out(path);
    f << "theta,xprime,value\n";
    for (size_t a = 0; a < s.angles.size(); ++a)
        for (int k = 0; k < s.offsets.n; ++k)
            f << format17(s.angles[a]) << ',' << format17(s.offsets.point(k)) << ','
              << format17(s.at(static_cast<int>(a), k)) << '\n';
}

Sinogram read_sinogram_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line)) throw IoError("empty sinogram file " + path);
    std::vector<double> th, xp, val;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
            throw IoError("bad sinogram row: " + line);
        th.push_back(std::stod(a));
        xp.push_back(std::stod(b));
        val.push_back(std::stod(c));
    }
    if (th.empty()) throw IoError("sinogram has no data rows");
    // offsets repeat per angle block
    int n = 0;
    while (n < static_cast<int>(th.size()) && th[n] == th[0]) ++n;
    if (n < 2 || th.size() % n != 0)
        throw IoError("sinogram rows are not grouped by angle");
    Sinogram s;
    s.offsets = Grid1D(xp[0], xp[n - 1], n);
    for (int k = 0; k < n; ++k)
        if (std::abs(xp[k] - s.offsets.point(k)) > 1e-9 * (1.0 + std::abs(xp[k])))
            throw IoError("offset grid is not uniform");
    size_t na = th.size() / n;
    for (size_t a = 0; a < na; ++a) s.angles.push_back(th[a * n]);
    s.values = std::move(val);
    return s;
}

void write_density(const std::string& base, const Density2D& d) {
    {
        auto f = open_out(base + ".csv");
        f << "x,y,value\n";
        for (int iy = 0; iy < d.gy.n; ++iy)
            for (int ix = 0; ix < d.gx.n; ++ix)
                f << format17(d.gx.point(ix)) << ',' << format17(d.gy.point(iy)) << ','
                  << format17(d.at(iy, ix)) << '\n';
    }
    write_json_file(base + ".json",
                    json{{"type", "density2d"},
                         {"gx", grid_to_json(d.gx)},
                         {"gy", grid_to_json(d.gy)},
                         {"measure", d.measure == Measure::DqDpOver2Pi ? "dqdp_over_2pi"
                                                                       : "plain_dxdy"},
                         {"classical", d.classical},
                         {"integral", d.integral()}});
}

Density2D read_density(const std::string& base) {
    json meta = read_json_file(base + ".json");
    Density2D d;
    d.gx = grid_from_json(meta.at("gx"));
    d.gy = grid_from_json(meta.at("gy"));
    d.measure = meta.at("measure").get<std::string>() == "dqdp_over_2pi"
                    ? Measure::DqDpOver2Pi
                    : Measure::PlainDxDy;
    d.classical = meta.value("classical", false);
    d.values.assign(static_cast<size_t>(d.gx.n) * d.gy.n, 0.0);
    auto f = open_in(base + ".csv");
    std::string line;
    std::getline(f, line);  // header
    size_t i = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (i >= d.values.size()) throw IoError("density csv has too many rows");
        auto last = line.rfind(',');
        d.values[i++] = std::stod(line.substr(last + 1));
    }
    if (i != d.values.size()) throw IoError("density csv has too few rows");
    return d;
}

void write_density_pgm(const std::string& base, const Density2D& d) {
    double lo = d.values[0], hi = d.values[0];
    for (double v : d.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span = hi > lo ? hi - lo : 1.0;
    auto f = open_out(base + ".pgm");
    f << "P2\n" << d.gx.n << " " << d.gy.n << "\n65535\n";
    for (int iy = d.gy.n - 1; iy >= 0; --iy) {  // top row = max y
        for (int ix = 0; ix < d.gx.n; ++ix) {
            int v = static_cast<int>(std::lround((d.at(iy, ix) - lo) / span * 65535.0));
            f << v << (ix + 1 == d.gx.n ? '\n' : ' ');
        }
    }
    write_json_file(base + ".json",
                    json{{"type", "density2d_pgm"},
                         {"gx", grid_to_json(d.gx)},
                         {"gy", grid_to_json(d.gy)},
                         {"scale_min", lo},
                         {"scale_max", hi},
                         {"depth", 65535}});
}

void write_wigner(const std::string& base, const WignerField& w) {
    {
        auto f = open_out(base + ".csv");
        f << "q,p,value\n";
        for (int ip = 0; ip < w.pgrid.n; ++ip)
            for (int iq = 0; iq < w.qgrid.n; ++iq)
                f << format17(w.qgrid.point(iq)) << ',' << format17(w.pgrid.point(ip)) << ','
                  << format17(w.at(ip, iq)) << '\n';
    }
    write_json_file(base + ".json",
                    json{{"type", "wigner"},
                         {"qgrid", grid_to_json(w.qgrid)},
                         {"pgrid", grid_to_json(w.pgrid)},
                         {"measure", "dqdp_over_2pi"},
                         {"normalization_residual", w.integral() - 1.0},
                         {"imag_residual", w.imag_residual}});
}

WignerField read_wigner(const std::string& base) {
    json meta = read_json_file(base + ".json");
    WignerField w;
    w.qgrid = grid_from_json(meta.at("qgrid"));
    w.pgrid = grid_from_json(meta.at("pgrid"));
    w.imag_residual = meta.value("imag_residual", 0.0);
    w.values.assign(static_cast<size_t>(w.qgrid.n) * w.pgrid.n, 0.0);
    auto f = open_in(base + ".csv");
    std::string line;
    std::getline(f, line);
    size_t i = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (i >= w.values.size()) throw IoError("wigner csv has too many rows");
        auto last = line.rfind(',');
        w.values[i++] = std::stod(line.substr(last + 1));
    }
    if (i != w.values.size()) throw IoError("wigner csv has too few rows");
    return w;
}

void write_kernel(const std::string& base, const DensityKernel& k,
                  const std::string& extra_json) {
    const int n = k.grid.n;
    write_matrix_csv(base + ".re.csv", n, n,
                     [&](int i, int j) { return k.at(i, j).real(); });
    write_matrix_csv(base + ".im.csv", n, n,
                     [&](int i, int j) { return k.at(i, j).imag(); });
    json extra = json::parse(extra_json);
    json meta{{"type", "density_kernel"},
              {"grid", grid_to_json(k.grid)},
              {"trace", k.trace()},
              {"hermiticity_residual", k.hermiticity_residual()}};
    meta.update(extra);
    write_json_file(base + ".json", meta);
}

DensityKernel read_kernel(const std::string& base) {
    json meta = read_json_file(base + ".json");
    DensityKernel k;
    k.grid = grid_from_json(meta.at("grid"));
    auto re = read_matrix_csv(base + ".re.csv");
    auto im = read_matrix_csv(base + ".im.csv");
    const int n = k.grid.n;
    if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n)
        throw IoError("kernel matrix size mismatch");
    k.values.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(re[i].size()) != n || static_cast<int>(im[i].size()) != n)
            throw IoError("kernel matrix row length mismatch");
        for (int j = 0; j < n; ++j) k.at(i, j) = cxd(re[i][j], im[i][j]);
    }
    return k;
}

void write_probs_csv(const std::string& path, int d, const std::vector<double>& probs) {
    if (probs.size() != static_cast<size_t>(d + 1) * d)
        throw IoError("probability table is not (d+1) x d");
    auto f = open_out(path);
    f << "basis,outcome,prob\n";
    for (int b = 0; b <= d; ++b)
        for (int c = 0; c < d; ++c)
            f << b << ',' << c << ',' << format17(probs[static_cast<size_t>(b) * d + c])
              << '\n';
}

std::pair<int, std::vector<double>> read_probs_csv(const std::string& path) {
    auto f = open_in(path);
    std::string line;
    std::getline(f, line);
    std::vector<std::tuple<int, int, double>> rows;
    int dmax = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, b, c;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        std::getline(ss, c);
        rows.emplace_back(std::stoi(a), std::stoi(b), std::stod(c));
        dmax = std::max(dmax, std::get<1>(rows.back()) + 1);
    }
    int d = dmax;
    if (rows.size() != static_cast<size_t>(d + 1) * d)
        throw IoError("probability table is not (d+1) x d");
    std::vector<double> probs(rows.size(), 0.0);
    for (auto& [b, c, v] : rows) probs[static_cast<size_t>(b) * d + c] = v;
    return {d, probs};
}

void write_qudit_state(const std::string& base, const QuditState& s,
                       const std::string& provenance) {
    const int d = s.dim.d;
    write_matrix_csv(base + ".re.csv", d, d,
                     [&](int i, int j) { return s.matrix(i, j).real(); });
    write_matrix_csv(base + ".im.csv", d, d,
                     [&](int i, int j) { return s.matrix(i, j).imag(); });
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.matrix, Eigen::EigenvaluesOnly);
    write_json_file(base + ".json",
                    json{{"type", "qudit_state"},
                         {"d", d},
                         {"provenance", provenance},
                         {"trace", s.matrix.trace().real()},
                         {"min_eigenvalue", es.eigenvalues().minCoeff()},
                         {"hermiticity_residual",
                          (s.matrix - s.matrix.adjoint()).cwiseAbs().maxCoeff()}});
}

QuditState read_qudit_state(const std::string& base) {
    json meta = read_json_file(base + ".json");
    int d = meta.at("d").get<int>();
    auto re = read_matrix_csv(base + ".re.csv");
    auto im = read_matrix_csv(base + ".im.csv");
    if (static_cast<int>(re.size()) != d) throw IoError("qudit state size mismatch");
    QuditState s{PrimeDim(d), Eigen::MatrixXcd::Zero(d, d)};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s.matrix(i, j) = cxd(re[i][j], im[i][j]);
    return s;
}

}  // namespace tomokit
