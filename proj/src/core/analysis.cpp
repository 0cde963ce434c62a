#include "analysis.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace backstep {
namespace {

double trapezoid(const std::vector<double>& f) {
    const int nx = static_cast<int>(f.size()) - 1;
    double s = 0.5 * (f.front() + f.back());
    for (int j = 1; j < nx; ++j) s += f[j];
    return s / nx;
}

} // namespace

double l2_norm_line(const std::vector<double>& f) {
    std::vector<double> sq(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) sq[j] = f[j] * f[j];
    return std::sqrt(trapezoid(sq));
}

double l2_norm(const FieldPair& state) {
    const int nx = state.nx();
    std::vector<double> sq(nx + 1);
    for (int j = 0; j <= nx; ++j) sq[j] = state.u[j] * state.u[j] + state.v[j] * state.v[j];
    return std::sqrt(trapezoid(sq));
}

DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& norms,
                   double t_start, double t_end) {
    if (times.size() != norms.size())
        fail(Errc::InvalidArgument, "fit_decay: times and norms length mismatch");
    if (!(t_start < t_end)) fail(Errc::InvalidArgument, "fit_decay: empty window");

    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0, syy = 0.0;
    int m = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        if (t < t_start || t > t_end) continue;
        if (!(norms[k] > 0.0))
            fail(Errc::NonPositiveNorm, "fit_decay: non-positive norm at t = " + std::to_string(t));
        const double y = std::log(norms[k]);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        syy += y * y;
        ++m;
    }
    if (m < 10) fail(Errc::InvalidArgument, "fit_decay: need at least 10 samples in the window, got " + std::to_string(m));

    const double denom = m * stt - st * st;
    const double slope = (m * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / m;

    const double ss_tot = syy - sy * sy / m;
    const double ss_res = ss_tot - slope * (sty - st * sy / m);
    DecayFit fit;
    fit.rate = -slope;
    fit.intercept = intercept;
    fit.t_start = t_start;
    fit.t_end = t_end;
    fit.samples = m;
    fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double modal_rate_oracle(double lambda1, double lambda2) {
    const double prod = lambda1 * lambda2;
    if (prod < 0.0)
        fail(Errc::ComplexSpectrum, "modal_rate_oracle: lambda1*lambda2 < 0 gives a complex reaction spectrum");
    return std::sqrt(prod) - 0.25 * std::numbers::pi * std::numbers::pi;
}

double reciprocity_residual(const KernelField& K, const KernelField& L) {
    if (K.n != L.n) fail(Errc::GridMismatch, "reciprocity_residual: kernel grids differ");
    const int n = K.n;
    const double h = 1.0 / n;

    double worst = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j) {
            // composition (K o L)(x_i, y_j) = int_{y_j}^{x_i} K(x_i,s) L(s,y_j) ds
            double cuu = 0.0, cuv = 0.0, cvu = 0.0, cvv = 0.0;
            for (int m = j; i > j && m <= i; ++m) {
                const double wq = (m == j || m == i) ? 0.5 * h : h;
                const double kuu = K.Kuu.at(i, m), kuv = K.Kuv.at(i, m);
                const double kvu = K.Kvu.at(i, m), kvv = K.Kvv.at(i, m);
                const double luu = L.Kuu.at(m, j), luv = L.Kuv.at(m, j);
                const double lvu = L.Kvu.at(m, j), lvv = L.Kvv.at(m, j);
                cuu += wq * (kuu * luu + kuv * lvu);
                cuv += wq * (kuu * luv + kuv * lvv);
                cvu += wq * (kvu * luu + kvv * lvu);
                cvv += wq * (kvu * luv + kvv * lvv);
            }
            worst = std::max({worst,
                              std::fabs(L.Kuu.at(i, j) - K.Kuu.at(i, j) - cuu),
                              std::fabs(L.Kuv.at(i, j) - K.Kuv.at(i, j) - cuv),
                              std::fabs(L.Kvu.at(i, j) - K.Kvu.at(i, j) - cvu),
                              std::fabs(L.Kvv.at(i, j) - K.Kvv.at(i, j) - cvv)});
        }
    return worst;
}

double kernel_pde_residual(const KernelField& kf) {
    if (kf.n < 32) fail(Errc::InvalidArgument, "kernel_pde_residual: n must be >= 32");
    const int n = kf.n;
    const double h2 = 1.0 / (static_cast<double>(n) * n);

    // wave operator by centered differences; the +-2 f(i,j) terms cancel
    auto wave = [&](const TriField& f, int i, int j) {
        return (f.at(i + 1, j) + f.at(i - 1, j) - f.at(i, j + 1) - f.at(i, j - 1)) / h2;
    };

    // coupling sign: +Lambda for the control system, -Psi for the inverse
    // and anti-collocated families, +Psi for the swapped collocated family
    const double sgn = (kf.family == KernelFamily::Inverse ||
                        kf.family == KernelFamily::ObserverAntiCollocated)
                           ? -1.0
                           : 1.0;
    const double l1 = sgn * kf.lambda1, l2 = sgn * kf.lambda2;

    double worst = 0.0;
    for (int i = 2; i <= n - 1; ++i)
        for (int j = 1; j <= i - 1; ++j) {
            const double r1 = wave(kf.Kuu, i, j) - l2 * kf.Kuv.at(i, j);
            const double r2 = wave(kf.Kuv, i, j) - l1 * kf.Kuu.at(i, j);
            const double r3 = wave(kf.Kvu, i, j) - l2 * kf.Kvv.at(i, j);
            const double r4 = wave(kf.Kvv, i, j) - l1 * kf.Kvu.at(i, j);
            worst = std::max({worst, std::fabs(r1), std::fabs(r2), std::fabs(r3), std::fabs(r4)});
        }
    return worst;
}

LyapunovReport lyapunov_monitor(const Trajectory& traj, const KernelField& control,
                                const KernelField& observer, const GainSet& gains,
                                double tol_fit) {
    if (traj.cfg.scenario != Scenario::OutputFeedbackAntiCollocated || traj.observer.empty())
        fail(Errc::WrongScenario,
             "lyapunov_monitor: needs an anti-collocated output-feedback trajectory with observer snapshots");
    if (control.family != KernelFamily::Control ||
        observer.family != KernelFamily::ObserverAntiCollocated ||
        gains.setup != ObserverSetup::AntiCollocated || gains.p1.empty())
        fail(Errc::FamilyMismatch, "lyapunov_monitor: wrong kernels or gains");
    if (gains.n != control.n)
        fail(Errc::GridMismatch, "lyapunov_monitor: gains and control kernel grids differ");

    LyapunovReport rep;
    const int n = control.n;
    const double h = 1.0 / n;

    // Q(x) = int_0^x K(x,y) p(y) dy on the kernel grid
    rep.Q1.assign(n + 1, 0.0);
    rep.Q2.assign(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        double q1 = 0.0, q2 = 0.0;
        for (int j = 0; j <= i; ++j) {
            const double wq = (j == 0 || j == i) ? 0.5 * h : h;
            q1 += wq * (control.Kuu.at(i, j) * gains.p1[j] + control.Kuv.at(i, j) * gains.p2[j]);
            q2 += wq * (control.Kvu.at(i, j) * gains.p1[j] + control.Kvv.at(i, j) * gains.p2[j]);
        }
        rep.Q1[i] = q1;
        rep.Q2[i] = q2;
    }

    rep.C = gains.p1[0] - rep.Q1[0];
    rep.D = gains.p2[0] - rep.Q2[0];
    for (int i = 0; i <= n; ++i) {
        rep.C = std::max(rep.C, gains.p1[i] - rep.Q1[i]);
        rep.D = std::max(rep.D, gains.p2[i] - rep.Q2[i]);
    }
    rep.A = 2.0 * (rep.C * rep.C + rep.D * rep.D);

    const int nx = traj.cfg.nx;
    rep.t = traj.times;
    rep.V.resize(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const FieldPair& w = traj.plant[k];
        const FieldPair& wh = traj.observer[k];
        FieldPair werr(nx);
        for (int j = 0; j <= nx; ++j) {
            werr.u[j] = w.u[j] - wh.u[j];
            werr.v[j] = w.v[j] - wh.v[j];
        }
        const FieldPair ghat = apply_transform(wh, control, TransformDirection::Forward);
        const FieldPair gerr =
            apply_transform(werr, observer, TransformDirection::ObserverErrorAntiCollocated);

        const double na = l2_norm_line(ghat.u), nb = l2_norm_line(ghat.v);
        const double ea = l2_norm_line(gerr.u), eb = l2_norm_line(gerr.v);
        rep.V[k] = 0.5 * rep.A * ea * ea + 0.5 * na * na + 0.5 * eb * eb + 0.5 * nb * nb;
    }

    rep.bound_ok = true;
    const double v0 = rep.V.front();
    for (std::size_t k = 0; k < rep.V.size(); ++k) {
        const double bound = v0 * std::exp(-0.25 * (rep.t[k] - rep.t.front())) * (1.0 + tol_fit);
        if (rep.V[k] > bound + 1e-300) {
            rep.bound_ok = false;
            break;
        }
    }
    return rep;
}

} // namespace backstep
