#include "pde_sim.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace backstep {
namespace {

struct Mat2 {
    double a11, a12, a21, a22;
};

Mat2 inverse(const Mat2& m) {
    const double det = m.a11 * m.a22 - m.a12 * m.a21;
    if (std::fabs(det) < 1e-300)
        fail(Errc::SingularSystem, "time-step operator block is singular");
    const double s = 1.0 / det;
    return {s * m.a22, -s * m.a12, -s * m.a21, s * m.a11};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

std::array<double, 4> pack(const Mat2& m) { return {m.a11, m.a12, m.a21, m.a22}; }
Mat2 unpack(const std::array<double, 4>& p) { return {p[0], p[1], p[2], p[3]}; }

// Composite trapezoid over [0, 1] on the uniform grid.
double trapezoid(const std::vector<double>& f) {
    const int nx = static_cast<int>(f.size()) - 1;
    double s = 0.5 * (f.front() + f.back());
    for (int j = 1; j < nx; ++j) s += f[j];
    return s / nx;
}

double one_sided_dx_at_right(const std::vector<double>& f, double h) {
    const std::size_t m = f.size() - 1;
    return (3.0 * f[m] - 4.0 * f[m - 1] + f[m - 2]) / (2.0 * h);
}

} // namespace

double IcPreset::eval(double x) const {
    switch (kind) {
        case Kind::CosHalfPi: return amplitude * std::cos(0.5 * std::numbers::pi * x);
        case Kind::Constant: return amplitude;
        case Kind::Bump: {
            if (width <= 0.0 || std::fabs(x - center) >= width) return 0.0;
            const double c = std::cos(0.5 * std::numbers::pi * (x - center) / width);
            return amplitude * c * c;
        }
    }
    return 0.0;
}

void SimConfig::validate() const {
    if (!(dt > 0.0)) fail(Errc::InvalidArgument, "sim config: dt must be > 0");
    if (!(t_final >= dt)) fail(Errc::InvalidArgument, "sim config: t_final must be >= dt");
    if (nx < 16) fail(Errc::InvalidArgument, "sim config: nx must be >= 16, got " + std::to_string(nx));
    if (!(theta >= 0.0 && theta <= 1.0)) fail(Errc::InvalidArgument, "sim config: theta must lie in [0, 1]");
    if (record_every < 1) fail(Errc::InvalidArgument, "sim config: record_every must be >= 1");
    if (!std::isfinite(lambda1) || !std::isfinite(lambda2))
        fail(Errc::InvalidArgument, "sim config: lambda1/lambda2 must be finite");
}

bool SimConfig::has_observer() const { return setup().has_value(); }

bool SimConfig::uses_feedback() const { return scenario != Scenario::OpenLoop; }

std::optional<ObserverSetup> SimConfig::setup() const {
    switch (scenario) {
        case Scenario::OutputFeedbackAntiCollocated:
        case Scenario::ObserverOnlyAntiCollocated: return ObserverSetup::AntiCollocated;
        case Scenario::OutputFeedbackCollocated:
        case Scenario::ObserverOnlyCollocated: return ObserverSetup::Collocated;
        default: return std::nullopt;
    }
}

long SimConfig::steps() const { return static_cast<long>(std::floor(t_final / dt + 1e-9)); }

ThetaStepper::ThetaStepper(double lambda1, double lambda2, int nx, double dt, double theta)
    : nx_(nx), dt_(dt), theta_(theta), h_(1.0 / nx), r_(dt / (h_ * h_)), l1_(lambda1), l2_(lambda2) {
    if (!(dt > 0.0)) fail(Errc::InvalidArgument, "stepper: dt must be > 0");

    // Implicit operator blocks: D_j = I - theta dt (Lap_j + Sigma) on PDE
    // rows, identity on the Dirichlet row j = nx. Off-diagonal blocks are
    // scalar multiples of I: C_0 = -2 theta r I, A_j = C_j = -theta r I.
    const double tr = theta_ * r_;
    const Mat2 diag{1.0 + 2.0 * tr, -theta_ * dt_ * l1_, -theta_ * dt_ * l2_, 1.0 + 2.0 * tr};

    dinv_.resize(nx_ + 1);
    lmul_.resize(nx_ + 1);

    auto c_of = [&](int j) { return (j == 0) ? -2.0 * tr : -tr; };

    Mat2 dcur = diag;
    dinv_[0] = pack(inverse(dcur));
    for (int j = 1; j <= nx_; ++j) {
        const double a = (j == nx_) ? 0.0 : -tr;
        const Mat2 dj = (j == nx_) ? Mat2{1.0, 0.0, 0.0, 1.0} : diag;
        const Mat2 linv = unpack(dinv_[j - 1]);
        const Mat2 l{a * linv.a11, a * linv.a12, a * linv.a21, a * linv.a22};
        lmul_[j] = pack(l);
        const double c = c_of(j - 1);
        Mat2 d = dj;
        d.a11 -= l.a11 * c;
        d.a12 -= l.a12 * c;
        d.a21 -= l.a21 * c;
        d.a22 -= l.a22 * c;
        dinv_[j] = pack(inverse(d));
    }
}

FieldPair ThetaStepper::step(const FieldPair& w, const std::array<double, 2>& u_boundary,
                             const std::vector<double>* inj_u,
                             const std::vector<double>* inj_v) const {
    if (w.nx() != nx_) fail(Errc::GridMismatch, "stepper: state grid does not match");

    const double er = (1.0 - theta_) * r_;
    const double ed = (1.0 - theta_) * dt_;
    std::vector<double> bu(nx_ + 1), bv(nx_ + 1);

    // explicit part (I + (1-theta) dt A) w plus explicit sources
    bu[0] = w.u[0] + er * (2.0 * w.u[1] - 2.0 * w.u[0]) + ed * l1_ * w.v[0];
    bv[0] = w.v[0] + er * (2.0 * w.v[1] - 2.0 * w.v[0]) + ed * l2_ * w.u[0];
    for (int j = 1; j < nx_; ++j) {
        bu[j] = w.u[j] + er * (w.u[j - 1] - 2.0 * w.u[j] + w.u[j + 1]) + ed * l1_ * w.v[j];
        bv[j] = w.v[j] + er * (w.v[j - 1] - 2.0 * w.v[j] + w.v[j + 1]) + ed * l2_ * w.u[j];
    }
    if (inj_u)
        for (int j = 0; j < nx_; ++j) bu[j] += dt_ * (*inj_u)[j];
    if (inj_v)
        for (int j = 0; j < nx_; ++j) bv[j] += dt_ * (*inj_v)[j];
    bu[nx_] = u_boundary[0];
    bv[nx_] = u_boundary[1];

    // forward elimination
    for (int j = 1; j <= nx_; ++j) {
        const Mat2 l = unpack(lmul_[j]);
        const double yu = bu[j - 1], yv = bv[j - 1];
        bu[j] -= l.a11 * yu + l.a12 * yv;
        bv[j] -= l.a21 * yu + l.a22 * yv;
    }

    // back substitution
    FieldPair out(nx_);
    {
        const Mat2 di = unpack(dinv_[nx_]);
        out.u[nx_] = di.a11 * bu[nx_] + di.a12 * bv[nx_];
        out.v[nx_] = di.a21 * bu[nx_] + di.a22 * bv[nx_];
    }
    for (int j = nx_ - 1; j >= 0; --j) {
        const double c = (j == 0) ? -2.0 * theta_ * r_ : -theta_ * r_;
        const double ru = bu[j] - c * out.u[j + 1];
        const double rv = bv[j] - c * out.v[j + 1];
        const Mat2 di = unpack(dinv_[j]);
        out.u[j] = di.a11 * ru + di.a12 * rv;
        out.v[j] = di.a21 * ru + di.a22 * rv;
    }
    return out;
}

namespace {

std::vector<double> resample_line(const std::vector<double>& f, int n_from, int n_to) {
    if (n_from == n_to) return f;
    std::vector<double> g(n_to + 1);
    for (int j = 0; j <= n_to; ++j) {
        const double x = static_cast<double>(j) / n_to * n_from;
        const int c = std::min(static_cast<int>(x), n_from - 1);
        const double t = x - c;
        g[j] = (1.0 - t) * f[c] + t * f[c + 1];
    }
    return g;
}

struct FeedbackRow {
    std::vector<double> uu, uv, vu, vv;

    std::array<double, 2> apply(const FieldPair& w) const {
        const int nx = w.nx();
        std::vector<double> f1(nx + 1), f2(nx + 1);
        for (int j = 0; j <= nx; ++j) {
            f1[j] = uu[j] * w.u[j] + uv[j] * w.v[j];
            f2[j] = vu[j] * w.u[j] + vv[j] * w.v[j];
        }
        return {trapezoid(f1), trapezoid(f2)};
    }
};

} // namespace

FieldPair step_observer(const ThetaStepper& stepper, const FieldPair& observer_state,
                        double measurement, const std::array<double, 2>& u_boundary,
                        const GainSet& gains) {
    const int nx = observer_state.nx();
    if (static_cast<int>(gains.p1.size()) != nx + 1)
        fail(Errc::GridMismatch, "step_observer: gains and state grids differ");
    const double h = 1.0 / nx;
    const double est = (gains.setup == ObserverSetup::Collocated)
                           ? one_sided_dx_at_right(observer_state.u, h)
                           : observer_state.u[0];
    const double e = measurement - est;
    std::vector<double> inj_u(nx + 1), inj_v(nx + 1);
    for (int j = 0; j <= nx; ++j) {
        inj_u[j] = gains.p1[j] * e;
        inj_v[j] = gains.p2[j] * e;
    }
    return stepper.step(observer_state, u_boundary, &inj_u, &inj_v);
}

Trajectory run_scenario(const SimConfig& cfg, const ScenarioKernels& kernels) {
    cfg.validate();

    const bool observer = cfg.has_observer();
    const bool feedback = cfg.uses_feedback();

    FeedbackRow fb;
    if (feedback) {
        if (!kernels.control || kernels.control->family != KernelFamily::Control)
            fail(Errc::MissingKernels, "scenario requires a control kernel");
        const GainSet cg = extract_gains(*kernels.control, ObserverSetup::AntiCollocated);
        fb.uu = resample_line(cg.fb_uu, cg.n, cfg.nx);
        fb.uv = resample_line(cg.fb_uv, cg.n, cfg.nx);
        fb.vu = resample_line(cg.fb_vu, cg.n, cfg.nx);
        fb.vv = resample_line(cg.fb_vv, cg.n, cfg.nx);
    }

    GainSet inj;
    if (observer) {
        if (!kernels.injection) fail(Errc::MissingKernels, "scenario requires observer injection gains");
        if (kernels.injection->setup != *cfg.setup())
            fail(Errc::MissingKernels, "observer gain setup does not match the scenario");
        if (kernels.injection->p1.empty())
            fail(Errc::MissingKernels, "gain set carries no injection gains");
        inj.setup = kernels.injection->setup;
        inj.n = cfg.nx;
        inj.p1 = resample_line(kernels.injection->p1, kernels.injection->n, cfg.nx);
        inj.p2 = resample_line(kernels.injection->p2, kernels.injection->n, cfg.nx);
    }

    const int nx = cfg.nx;
    const double h = 1.0 / nx;
    FieldPair w(nx), wh(nx);
    if (cfg.ic_override) {
        if (cfg.ic_override->nx() != nx) fail(Errc::GridMismatch, "ic_override grid mismatch");
        w = *cfg.ic_override;
    }
    if (observer && cfg.observer_ic_override) {
        if (cfg.observer_ic_override->nx() != nx)
            fail(Errc::GridMismatch, "observer_ic_override grid mismatch");
        wh = *cfg.observer_ic_override;
    }
    for (int j = 0; j <= nx; ++j) {
        const double x = j * h;
        if (!cfg.ic_override) {
            w.u[j] = cfg.ic_u.eval(x);
            w.v[j] = cfg.ic_v.eval(x);
        }
        if (observer && !cfg.observer_ic_override) {
            wh.u[j] = cfg.observer_ic_u.eval(x);
            wh.v[j] = cfg.observer_ic_v.eval(x);
        }
    }

    const bool collocated = cfg.setup() == ObserverSetup::Collocated;
    const ThetaStepper stepper(cfg.lambda1, cfg.lambda2, nx, cfg.dt, cfg.theta);

    auto control_of = [&](const FieldPair& plant, const FieldPair& obs) -> std::array<double, 2> {
        switch (cfg.scenario) {
            case Scenario::OpenLoop: return {0.0, 0.0};
            case Scenario::StateFeedback:
            case Scenario::ObserverOnlyAntiCollocated:
            case Scenario::ObserverOnlyCollocated: return fb.apply(plant);
            default: return fb.apply(obs);
        }
    };
    auto measure = [&](const FieldPair& plant) {
        return collocated ? one_sided_dx_at_right(plant.u, h) : plant.u[0];
    };

    Trajectory traj;
    traj.cfg = cfg;
    const long nsteps = cfg.steps();
    const long snaps = nsteps / cfg.record_every + 1;
    traj.times.reserve(snaps);
    traj.plant.reserve(snaps);
    if (observer) traj.observer.reserve(snaps);

    auto record = [&](long m) {
        traj.times.push_back(m * cfg.dt);
        traj.plant.push_back(w);
        if (observer) traj.observer.push_back(wh);
        traj.control.push_back(control_of(w, wh));
        traj.measurement.push_back(measure(w));
    };
    record(0);

    for (long m = 0; m < nsteps; ++m) {
        const std::array<double, 2> U = control_of(w, wh);
        FieldPair wn = stepper.step(w, U);
        if (observer) wh = step_observer(stepper, wh, measure(w), U, inj);
        w = std::move(wn);
        if ((m + 1) % cfg.record_every == 0) record(m + 1);
    }
    return traj;
}

FieldPair apply_transform(const FieldPair& state, const KernelField& kf, TransformDirection dir,
                          bool allow_resample) {
    const int nx = state.nx();
    const double h = 1.0 / nx;

    const KernelFamily want = (dir == TransformDirection::Forward) ? KernelFamily::Control
                              : (dir == TransformDirection::Inverse) ? KernelFamily::Inverse
                              : (dir == TransformDirection::ObserverErrorAntiCollocated)
                                  ? KernelFamily::ObserverAntiCollocated
                                  : KernelFamily::ObserverCollocated;
    if (kf.family != want)
        fail(Errc::FamilyMismatch, "apply_transform: kernel family does not match the direction");
    if (kf.n != nx && !allow_resample)
        fail(Errc::GridMismatch, "apply_transform: kernel and state grids differ");

    const TriField uu = resample(kf.Kuu, nx);
    const TriField uv = resample(kf.Kuv, nx);
    const TriField vu = resample(kf.Kvu, nx);
    const TriField vv = resample(kf.Kvv, nx);

    FieldPair out(nx);

    if (dir == TransformDirection::Forward || dir == TransformDirection::Inverse) {
        const double sign = (dir == TransformDirection::Forward) ? -1.0 : 1.0;
        for (int i = 0; i <= nx; ++i) {
            double su = 0.0, sv = 0.0;
            for (int j = 0; i > 0 && j <= i; ++j) {
                const double wq = (j == 0 || j == i) ? 0.5 * h : h;
                su += wq * (uu.at(i, j) * state.u[j] + uv.at(i, j) * state.v[j]);
                sv += wq * (vu.at(i, j) * state.u[j] + vv.at(i, j) * state.v[j]);
            }
            out.u[i] = state.u[i] + sign * su;
            out.v[i] = state.v[i] + sign * sv;
        }
        return out;
    }

    if (dir == TransformDirection::ObserverErrorAntiCollocated) {
        // forward-substitution solve of werr = gamma - int_0^x P gamma
        for (int i = 0; i <= nx; ++i) {
            double su = state.u[i], sv = state.v[i];
            for (int j = 0; j < i; ++j) {
                const double wq = (j == 0) ? 0.5 * h : h;
                su += wq * (uu.at(i, j) * out.u[j] + uv.at(i, j) * out.v[j]);
                sv += wq * (vu.at(i, j) * out.u[j] + vv.at(i, j) * out.v[j]);
            }
            if (i == 0) {
                out.u[i] = su;
                out.v[i] = sv;
                continue;
            }
            const double wd = 0.5 * h;
            const Mat2 m{1.0 - wd * uu.at(i, i), -wd * uv.at(i, i), -wd * vu.at(i, i),
                         1.0 - wd * vv.at(i, i)};
            const Mat2 mi = inverse(m);
            out.u[i] = mi.a11 * su + mi.a12 * sv;
            out.v[i] = mi.a21 * su + mi.a22 * sv;
        }
        return out;
    }

    // collocated: werr = gamma - int_x^1 P gamma, P stored argument-swapped;
    // march downward from x = 1
    for (int i = nx; i >= 0; --i) {
        double su = state.u[i], sv = state.v[i];
        for (int j = i + 1; j <= nx; ++j) {
            const double wq = (j == nx) ? 0.5 * h : h;
            su += wq * (uu.at(j, i) * out.u[j] + uv.at(j, i) * out.v[j]);
            sv += wq * (vu.at(j, i) * out.u[j] + vv.at(j, i) * out.v[j]);
        }
        if (i == nx) {
            out.u[i] = su;
            out.v[i] = sv;
            continue;
        }
        const double wd = 0.5 * h;
        const Mat2 m{1.0 - wd * uu.at(i, i), -wd * uv.at(i, i), -wd * vu.at(i, i),
                     1.0 - wd * vv.at(i, i)};
        const Mat2 mi = inverse(m);
        out.u[i] = mi.a11 * su + mi.a12 * sv;
        out.v[i] = mi.a21 * su + mi.a22 * sv;
    }
    return out;
}

double heat_benchmark_error(int nx, double dt, double t_final, double theta) {
    const double mu = 0.25 * std::numbers::pi * std::numbers::pi;
    SimConfig cfg;
    cfg.lambda1 = 0.0;
    cfg.lambda2 = 0.0;
    cfg.nx = nx;
    cfg.dt = dt;
    cfg.t_final = t_final;
    cfg.theta = theta;
    cfg.scenario = Scenario::OpenLoop;
    cfg.ic_u = {IcPreset::Kind::CosHalfPi, 1.0};
    cfg.ic_v = {IcPreset::Kind::Constant, 0.0};
    cfg.record_every = static_cast<int>(cfg.steps());

    const Trajectory traj = run_scenario(cfg, {});
    const FieldPair& w = traj.plant.back();
    const double t = traj.times.back();

    std::vector<double> err2(nx + 1);
    for (int j = 0; j <= nx; ++j) {
        const double x = static_cast<double>(j) / nx;
        const double exact = std::exp(-mu * t) * std::cos(0.5 * std::numbers::pi * x);
        err2[j] = (w.u[j] - exact) * (w.u[j] - exact);
    }
    return std::sqrt(trapezoid(err2));
}

} // namespace backstep
