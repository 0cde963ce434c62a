#include "kernel_families.hpp"

#include "errors.hpp"

#include <utility>

namespace backstep {
namespace {

KernelProblem base_problem(const KernelOptions& opt) {
    KernelProblem pr;
    pr.n = opt.n;
    pr.tol = opt.tol;
    pr.max_iter = opt.max_iter;
    return pr;
}

SolveMeta take_meta(PairSolution& s) {
    return SolveMeta{s.iterations_used, s.final_increment, std::move(s.increment_history)};
}

TriField reflected(const TriField& f) {
    const int n = f.n();
    TriField g(n);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j) g.at(i, j) = f.at(n - j, n - i);
    return g;
}

} // namespace

const TriField& KernelField::component(int c) const {
    switch (c) {
        case 0: return Kuu;
        case 1: return Kuv;
        case 2: return Kvu;
        default: return Kvv;
    }
}

double KernelField::value_at(int c, int xi, int yi) const {
    if (family == KernelFamily::ObserverCollocated) std::swap(xi, yi);
    return component(c).at(xi, yi);
}

KernelField control_kernel(double lambda1, double lambda2, const KernelOptions& opt) {
    KernelProblem pr = base_problem(opt);
    pr.side = SideCondition::ReflectionNeumann;

    pr.a = lambda2 / 4.0;
    pr.b = lambda1 / 4.0;
    pr.cH = -lambda1 / 4.0;
    PairSolution uu_uv = solve_pair(pr);

    pr.a = lambda1 / 4.0;
    pr.b = lambda2 / 4.0;
    pr.cH = -lambda2 / 4.0;
    PairSolution vv_vu = solve_pair(pr);

    KernelField kf;
    kf.family = KernelFamily::Control;
    kf.lambda1 = lambda1;
    kf.lambda2 = lambda2;
    kf.n = opt.n;
    kf.Kuu = std::move(uu_uv.G);
    kf.Kuv = std::move(uu_uv.H);
    kf.Kvv = std::move(vv_vu.G);
    kf.Kvu = std::move(vv_vu.H);
    kf.meta = {take_meta(uu_uv), take_meta(vv_vu)};
    return kf;
}

KernelField inverse_kernel(double lambda1, double lambda2, const KernelOptions& opt) {
    KernelProblem pr = base_problem(opt);
    pr.side = SideCondition::ReflectionNeumann;

    pr.a = -lambda1 / 4.0;
    pr.b = -lambda2 / 4.0;
    pr.cH = -lambda2 / 4.0;
    PairSolution aa_ba = solve_pair(pr);

    pr.a = -lambda2 / 4.0;
    pr.b = -lambda1 / 4.0;
    pr.cH = -lambda1 / 4.0;
    PairSolution bb_ab = solve_pair(pr);

    KernelField kf;
    kf.family = KernelFamily::Inverse;
    kf.lambda1 = lambda1;
    kf.lambda2 = lambda2;
    kf.n = opt.n;
    kf.Kuu = std::move(aa_ba.G); // L^aa
    kf.Kvu = std::move(aa_ba.H); // L^ba
    kf.Kvv = std::move(bb_ab.G); // L^bb
    kf.Kuv = std::move(bb_ab.H); // L^ab
    kf.meta = {take_meta(aa_ba), take_meta(bb_ab)};
    return kf;
}

KernelField observer_kernel_anticollocated(double lambda1, double lambda2,
                                           const KernelOptions& opt) {
    // Reflection (1-y, 1-x) flips the coupling sign and turns the diagonal
    // data lambda (1-x)/2 into +lambda x/2 slopes.
    KernelProblem pr = base_problem(opt);
    pr.side = SideCondition::ZeroDirichlet;

    pr.a = lambda1 / 4.0;
    pr.b = lambda2 / 4.0;
    pr.cH = lambda2 / 4.0;
    PairSolution uu_vu = solve_pair(pr);

    pr.a = lambda2 / 4.0;
    pr.b = lambda1 / 4.0;
    pr.cH = lambda1 / 4.0;
    PairSolution vv_uv = solve_pair(pr);

    KernelField kf;
    kf.family = KernelFamily::ObserverAntiCollocated;
    kf.lambda1 = lambda1;
    kf.lambda2 = lambda2;
    kf.n = opt.n;
    kf.Kuu = reflected(uu_vu.G);
    kf.Kvu = reflected(uu_vu.H);
    kf.Kvv = reflected(vv_uv.G);
    kf.Kuv = reflected(vv_uv.H);
    kf.meta = {take_meta(uu_vu), take_meta(vv_uv)};
    return kf;
}

KernelField observer_kernel_collocated(double lambda1, double lambda2,
                                       const KernelOptions& opt) {
    // Argument swap flips the coupling sign; diagonal data keeps the
    // -lambda x/2 slopes and the x = 0 Neumann edge becomes y = 0.
    KernelProblem pr = base_problem(opt);
    pr.side = SideCondition::ReflectionNeumann;

    pr.a = lambda1 / 4.0;
    pr.b = lambda2 / 4.0;
    pr.cH = -lambda2 / 4.0;
    PairSolution uu_vu = solve_pair(pr);

    pr.a = lambda2 / 4.0;
    pr.b = lambda1 / 4.0;
    pr.cH = -lambda1 / 4.0;
    PairSolution vv_uv = solve_pair(pr);

    KernelField kf;
    kf.family = KernelFamily::ObserverCollocated;
    kf.lambda1 = lambda1;
    kf.lambda2 = lambda2;
    kf.n = opt.n;
    kf.Kuu = std::move(uu_vu.G);
    kf.Kvu = std::move(uu_vu.H);
    kf.Kvv = std::move(vv_uv.G);
    kf.Kuv = std::move(vv_uv.H);
    kf.meta = {take_meta(uu_vu), take_meta(vv_uv)};
    return kf;
}

GainSet extract_gains(const KernelField& kf, ObserverSetup setup) {
    GainSet g;
    g.setup = setup;
    g.n = kf.n;
    const int n = kf.n;

    if (kf.family == KernelFamily::Control) {
        g.fb_uu.resize(n + 1);
        g.fb_uv.resize(n + 1);
        g.fb_vu.resize(n + 1);
        g.fb_vv.resize(n + 1);
        for (int j = 0; j <= n; ++j) {
            g.fb_uu[j] = kf.Kuu.at(n, j);
            g.fb_uv[j] = kf.Kuv.at(n, j);
            g.fb_vu[j] = kf.Kvu.at(n, j);
            g.fb_vv[j] = kf.Kvv.at(n, j);
        }
        return g;
    }

    if (kf.family == KernelFamily::ObserverAntiCollocated &&
        setup == ObserverSetup::AntiCollocated) {
        // The transform identity ties the sign of the injection gains to the
        // sign of the kernel's diagonal data: for data +lambda (1-x)/2 the
        // stabilizing gains are minus the y-derivative of the first kernel
        // column (the +P_y choice renders the error system unstable).
        const double h = 1.0 / n;
        auto edge_dy = [&](const TriField& f) {
            std::vector<double> p(n + 1);
            for (int i = 2; i <= n; ++i)
                p[i] = -(-3.0 * f.at(i, 0) + 4.0 * f.at(i, 1) - f.at(i, 2)) / (2.0 * h);
            // nodes x_0, x_1 lack room for the y-stencil; extrapolate along x
            p[1] = 3.0 * p[3] - 3.0 * p[5] + p[7];
            p[0] = 3.0 * p[2] - 3.0 * p[4] + p[6];
            return p;
        };
        g.p1 = edge_dy(kf.Kuu);
        g.p2 = edge_dy(kf.Kvu);
        return g;
    }

    if (kf.family == KernelFamily::ObserverCollocated && setup == ObserverSetup::Collocated) {
        g.p1.resize(n + 1);
        g.p2.resize(n + 1);
        for (int j = 0; j <= n; ++j) {
            g.p1[j] = kf.Kuu.at(n, j); // P^uu(x_j, 1)
            g.p2[j] = kf.Kvu.at(n, j);
        }
        return g;
    }

    fail(Errc::FamilyMismatch, "extract_gains: kernel family does not provide gains for the requested setup");
}

} // namespace backstep
