#include "tri_field.hpp"

#include <algorithm>
#include <cmath>

namespace backstep {

double TriField::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
}

double TriField::interpolate(double x, double y) const {
    x = std::clamp(x, 0.0, 1.0);
    y = std::clamp(y, 0.0, x);

    const double gx = x * n_;
    const double gy = y * n_;
    const int ci = std::min(static_cast<int>(gx), n_ - 1);
    const int cj = std::min(static_cast<int>(gy), n_ - 1);
    const double s = gx - ci;
    const double t = gy - cj;

    if (t <= s || cj >= ci) {
        // lower triangle of the cell: corners (ci,cj), (ci+1,cj), (ci+1,cj+1)
        const double f00 = at(ci, cj);
        const double f10 = at(ci + 1, cj);
        const double f11 = at(ci + 1, cj + 1);
        return f00 + s * (f10 - f00) + t * (f11 - f10);
    }
    // upper triangle: corners (ci,cj), (ci,cj+1), (ci+1,cj+1); cj+1 <= ci here
    const double f00 = at(ci, cj);
    const double f01 = at(ci, cj + 1);
    const double f11 = at(ci + 1, cj + 1);
    return f00 + t * (f01 - f00) + s * (f11 - f01);
}

TriField resample(const TriField& f, int m) {
    if (m == f.n()) return f;
    TriField g(m);
    const double hm = 1.0 / m;
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= i; ++j) g.at(i, j) = f.interpolate(i * hm, j * hm);
    return g;
}

} // namespace backstep
