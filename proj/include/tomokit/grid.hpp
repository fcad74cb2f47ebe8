// Uniform 1D grids. All sampled fields in tomokit live on these; points are
// exactly min + i*spacing with spacing = (max-min)/(n-1).

#pragma once

#include <vector>

#include "tomokit/errors.hpp"

namespace tomokit {

struct Grid1D {
    double min = 0.0;
    double max = 1.0;
    int n = 2;

    Grid1D() = default;
    Grid1D(double mn, double mx, int count) : min(mn), max(mx), n(count) {
        if (n < 2) throw BadGrid("grid needs n >= 2");
        if (!(max > min)) throw BadGrid("grid needs max > min");
    }

    double spacing() const { return (max - min) / (n - 1); }
    double point(int i) const { return min + i * spacing(); }
    double extent() const { return max - min; }

    std::vector<double> points() const {
        std::vector<double> p(n);
        for (int i = 0; i < n; ++i) p[i] = point(i);
        return p;
    }

    // fractional index of x; callers clamp / range-check as needed
    double locate(double x) const { return (x - min) / spacing(); }

    bool operator==(const Grid1D& o) const {
        return min == o.min && max == o.max && n == o.n;
    }
};

enum class Measure { PlainDxDy, DqDpOver2Pi };

// weight of the declared measure: integrals are sum * dx * dy * weight
inline double measure_weight(Measure m) {
    return m == Measure::DqDpOver2Pi ? 1.0 / (2.0 * 3.14159265358979323846) : 1.0;
}

}  // namespace tomokit
