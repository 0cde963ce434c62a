#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace backstep {

// Scalar samples on the closed triangle 0 <= y <= x <= 1, stored at the
// nodes (x_i, y_j) = (i/n, j/n) with 0 <= j <= i <= n. Row i holds i+1
// values, so the field carries (n+1)(n+2)/2 samples in total.
class TriField {
public:
    TriField() = default;
    explicit TriField(int n)
        : n_(n), v_(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 2) / 2, 0.0) {}

    int n() const { return n_; }
    double h() const { return 1.0 / n_; }
    std::size_t node_count() const { return v_.size(); }

    bool valid(int i, int j) const { return 0 <= j && j <= i && i <= n_; }

    double& at(int i, int j) {
        assert(valid(i, j));
        return v_[offset(i) + static_cast<std::size_t>(j)];
    }
    double at(int i, int j) const {
        assert(valid(i, j));
        return v_[offset(i) + static_cast<std::size_t>(j)];
    }

    double max_abs() const;

    // Piecewise-linear interpolation. Each grid square is split along its
    // main diagonal, so queries with y <= x never reference nodes outside
    // the triangle. Exact on functions linear in (x, y).
    double interpolate(double x, double y) const;

private:
    static std::size_t offset(int i) {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(i + 1) / 2;
    }

    int n_ = 0;
    std::vector<double> v_;
};

// Resample onto an m-interval triangle grid (identity copy when m == f.n()).
TriField resample(const TriField& f, int m);

} // namespace backstep
