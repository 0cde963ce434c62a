#include "goursat.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace backstep {
namespace {

// Uniform lattice over Xi = {0 <= xi <= 2, 0 <= eta <= min(xi, 2 - xi)}
// with spacing h = 1/n on both axes. Column p (xi = p h) holds eta indices
// q = 0..min(p, 2n - p). Even-parity nodes (p + q even) are exactly the
// images of the (x, y) triangle nodes under xi = x + y, eta = x - y.
class Lattice {
public:
    explicit Lattice(int n) : n_(n), off_(2 * n + 2, 0) {
        std::size_t acc = 0;
        for (int p = 0; p <= 2 * n_; ++p) {
            off_[p] = acc;
            acc += static_cast<std::size_t>(qmax(p)) + 1;
        }
        off_[2 * n_ + 1] = acc;
    }

    int n() const { return n_; }
    int pmax() const { return 2 * n_; }
    int qmax(int p) const { return std::min(p, 2 * n_ - p); }
    std::size_t size() const { return off_.back(); }
    std::size_t idx(int p, int q) const { return off_[p] + static_cast<std::size_t>(q); }

private:
    int n_;
    std::vector<std::size_t> off_;
};

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// Column prefix integrals S(p,q) = int_0^{q h} F(xi_p, s) ds by composite
// trapezoid along each lattice column.
void column_prefix(const Lattice& lat, double h, const std::vector<double>& f,
                   std::vector<double>& s) {
    for (int p = 0; p <= lat.pmax(); ++p) {
        const std::size_t base = lat.idx(p, 0);
        s[base] = 0.0;
        for (int q = 1; q <= lat.qmax(p); ++q)
            s[base + q] = s[base + q - 1] + 0.5 * h * (f[base + q - 1] + f[base + q]);
    }
}

// out = coef * (2 I2[f](eta) + I1[f](xi,eta))   (ReflectionNeumann)
// out = coef * I1[f](xi,eta)                    (ZeroDirichlet)
// where I1, I2 are the iterated integrals from the header. `s` is scratch
// for the column prefix integrals.
void apply_volterra(const Lattice& lat, double h, double coef, SideCondition side,
                    const std::vector<double>& f, std::vector<double>& s,
                    std::vector<double>& out) {
    column_prefix(lat, h, f, s);

    // I2 depends on eta only: trapezoid over tau of D(tau) = S(tau, tau).
    std::vector<double> i2(static_cast<std::size_t>(lat.n()) + 1, 0.0);
    if (side == SideCondition::ReflectionNeumann) {
        for (int q = 1; q <= lat.n(); ++q)
            i2[q] = i2[q - 1] + 0.5 * h * (s[lat.idx(q - 1, q - 1)] + s[lat.idx(q, q)]);
    }

    // I1(xi,eta) accumulates S(., q) over tau in [eta, xi]; march p upward
    // at fixed q. Valid columns for level q are p = q .. 2n - q.
    for (int p = 0; p <= lat.pmax(); ++p) out[lat.idx(p, 0)] = 0.0;
    for (int q = 1; q <= lat.n(); ++q) {
        out[lat.idx(q, q)] = 0.0;
        for (int p = q + 1; p <= lat.pmax() - q; ++p)
            out[lat.idx(p, q)] =
                out[lat.idx(p - 1, q)] + 0.5 * h * (s[lat.idx(p - 1, q)] + s[lat.idx(p, q)]);
    }

    if (side == SideCondition::ReflectionNeumann) {
        for (int p = 0; p <= lat.pmax(); ++p)
            for (int q = 0; q <= lat.qmax(p); ++q) {
                const std::size_t k = lat.idx(p, q);
                out[k] = coef * (2.0 * i2[q] + out[k]);
            }
    } else {
        for (std::size_t k = 0; k < lat.size(); ++k) out[k] *= coef;
    }
}

void validate(const KernelProblem& pr) {
    if (pr.n < 8) fail(Errc::InvalidArgument, "kernel problem: n must be >= 8, got " + std::to_string(pr.n));
    if (!(pr.tol > 0.0)) fail(Errc::InvalidArgument, "kernel problem: tol must be > 0");
    if (pr.max_iter < 1) fail(Errc::InvalidArgument, "kernel problem: max_iter must be >= 1");
    if (!std::isfinite(pr.a) || !std::isfinite(pr.b) || !std::isfinite(pr.cG) || !std::isfinite(pr.cH))
        fail(Errc::InvalidArgument, "kernel problem: coefficients must be finite");
}

} // namespace

double picard_bound_constant(const KernelProblem& pr) {
    return std::max({1.0, 3.0 * std::fabs(pr.a), 3.0 * std::fabs(pr.b),
                     std::sqrt(std::fabs(pr.cG) + std::fabs(pr.cH))});
}

PairSolution solve_pair(const KernelProblem& pr) {
    validate(pr);

    const Lattice lat(pr.n);
    const double h = 1.0 / pr.n;
    const std::size_t sz = lat.size();

    std::vector<double> accG(sz), accH(sz), dG(sz), dH(sz), nG(sz), nH(sz), scratch(sz);

    // Seed term Theta. The xi+eta form carries the reflection condition;
    // the xi-eta form vanishes on the side line as required.
    for (int p = 0; p <= lat.pmax(); ++p)
        for (int q = 0; q <= lat.qmax(p); ++q) {
            const std::size_t k = lat.idx(p, q);
            const double data = (pr.side == SideCondition::ReflectionNeumann)
                                    ? h * static_cast<double>(p + q)
                                    : h * static_cast<double>(p - q);
            dG[k] = pr.cG * data;
            dH[k] = pr.cH * data;
        }
    accG = dG;
    accH = dH;

    std::vector<double> history;
    double inc = std::max(sup_norm(dG), sup_norm(dH));
    history.push_back(inc);
    int used = 1;

    while (inc > pr.tol && used < pr.max_iter) {
        apply_volterra(lat, h, pr.a, pr.side, dH, scratch, nG);
        apply_volterra(lat, h, pr.b, pr.side, dG, scratch, nH);
        for (std::size_t k = 0; k < sz; ++k) {
            accG[k] += nG[k];
            accH[k] += nH[k];
        }
        dG.swap(nG);
        dH.swap(nH);
        inc = std::max(sup_norm(dG), sup_norm(dH));
        history.push_back(inc);
        ++used;
    }

    if (inc > pr.tol)
        fail(Errc::IterationLimit,
             "successive approximation hit max_iter=" + std::to_string(pr.max_iter) +
                 " with increment " + std::to_string(inc) + " > tol");

    PairSolution sol;
    sol.G = TriField(pr.n);
    sol.H = TriField(pr.n);
    for (int i = 0; i <= pr.n; ++i)
        for (int j = 0; j <= i; ++j) {
            const std::size_t k = lat.idx(i + j, i - j);
            sol.G.at(i, j) = accG[k];
            sol.H.at(i, j) = accH[k];
        }
    sol.iterations_used = used;
    sol.final_increment = inc;
    sol.increment_history = std::move(history);
    return sol;
}

} // namespace backstep
