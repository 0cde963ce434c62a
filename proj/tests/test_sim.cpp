#include "core/analysis.hpp"
#include "core/errors.hpp"
#include "core/pde_sim.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace backstep;

namespace {

constexpr double kHalfPiSq = 2.4674011002723395; // (pi/2)^2

SimConfig quick_cfg(double l1, double l2, Scenario sc) {
    SimConfig cfg;
    cfg.lambda1 = l1;
    cfg.lambda2 = l2;
    cfg.nx = 100;
    cfg.dt = 5e-4;
    cfg.t_final = 2.0;
    cfg.record_every = 10;
    cfg.scenario = sc;
    return cfg;
}

std::vector<double> plant_norms(const Trajectory& t) {
    std::vector<double> n(t.times.size());
    for (std::size_t k = 0; k < n.size(); ++k) n[k] = l2_norm(t.plant[k]);
    return n;
}

std::vector<double> error_norms(const Trajectory& t) {
    std::vector<double> n(t.times.size());
    for (std::size_t k = 0; k < n.size(); ++k) {
        FieldPair d(t.plant[k].nx());
        for (int j = 0; j <= d.nx(); ++j) {
            d.u[j] = t.plant[k].u[j] - t.observer[k].u[j];
            d.v[j] = t.plant[k].v[j] - t.observer[k].v[j];
        }
        n[k] = l2_norm(d);
    }
    return n;
}

KernelOptions kopts(int n) {
    KernelOptions o;
    o.n = n;
    return o;
}

} // namespace

TEST_CASE("heat decay matches separation of variables") {
    // lambda = 0, u0 = cos(pi x/2): u(t) = e^{-(pi/2)^2 t} cos(pi x/2)
    SimConfig cfg;
    cfg.nx = 200;
    cfg.dt = 1e-4;
    cfg.t_final = 0.5;
    cfg.record_every = 5000;
    cfg.ic_u = {IcPreset::Kind::CosHalfPi, 1.0};
    cfg.ic_v = {IcPreset::Kind::Constant, 0.0};
    const Trajectory traj = run_scenario(cfg, {});
    const FieldPair& w = traj.plant.back();

    double num = 0.0, den = 0.0;
    for (int j = 0; j <= cfg.nx; ++j) {
        const double x = static_cast<double>(j) / cfg.nx;
        const double exact = std::exp(-kHalfPiSq * 0.5) * std::cos(0.5 * std::numbers::pi * x);
        num += (w.u[j] - exact) * (w.u[j] - exact);
        den += exact * exact;
    }
    CHECK(std::sqrt(num / den) <= 1e-3);
    CHECK(l2_norm_line(w.v) <= 1e-14);
}

TEST_CASE("zero state stays zero") {
    SimConfig cfg = quick_cfg(7.0, 3.0, Scenario::OpenLoop);
    cfg.t_final = 0.05;
    cfg.ic_u = {IcPreset::Kind::Constant, 0.0};
    cfg.ic_v = {IcPreset::Kind::Constant, 0.0};
    const Trajectory traj = run_scenario(cfg, {});
    for (const FieldPair& w : traj.plant) CHECK(l2_norm(w) == 0.0);
}

TEST_CASE("open-loop growth matches the modal oracle") {
    SimConfig cfg = quick_cfg(20.0, 10.0, Scenario::OpenLoop);
    cfg.t_final = 1.0;
    const Trajectory traj = run_scenario(cfg, {});
    const DecayFit fit = fit_decay(traj.times, plant_norms(traj), 0.5, 1.0);
    const double oracle = modal_rate_oracle(20.0, 10.0);
    CHECK(std::fabs(-fit.rate - oracle) / oracle <= 0.03);
}

TEST_CASE("snapshot count follows floor(t_final/dt/record_every) + 1") {
    SimConfig cfg = quick_cfg(0.0, 0.0, Scenario::OpenLoop);
    cfg.dt = 1e-4;
    cfg.t_final = 2.0;
    cfg.record_every = 20;
    const Trajectory traj = run_scenario(cfg, {});
    CHECK(static_cast<long>(traj.times.size()) == 1001);
    CHECK(traj.times.back() == doctest::Approx(2.0));
}

TEST_CASE("state feedback stabilizes the unstable plant at the target rate") {
    const KernelField control = control_kernel(20.0, 10.0, kopts(128));
    SimConfig cfg = quick_cfg(20.0, 10.0, Scenario::StateFeedback);
    ScenarioKernels ker;
    ker.control = &control;
    const Trajectory traj = run_scenario(cfg, ker);
    const DecayFit fit = fit_decay(traj.times, plant_norms(traj), 1.0, 2.0);
    CHECK(std::fabs(fit.rate - kHalfPiSq) / kHalfPiSq <= 0.10);

    SUBCASE("recorded control equals the feedback quadrature of the snapshot") {
        const GainSet g = extract_gains(control, ObserverSetup::AntiCollocated);
        // resample the feedback row exactly as the simulator does
        const std::size_t k = traj.times.size() / 2;
        const FieldPair& w = traj.plant[k];
        std::vector<double> row_uu(cfg.nx + 1), row_uv(cfg.nx + 1);
        for (int j = 0; j <= cfg.nx; ++j) {
            const double pos = static_cast<double>(j) / cfg.nx * g.n;
            const int c = std::min(static_cast<int>(pos), g.n - 1);
            const double t = pos - c;
            row_uu[j] = (1 - t) * g.fb_uu[c] + t * g.fb_uu[c + 1];
            row_uv[j] = (1 - t) * g.fb_uv[c] + t * g.fb_uv[c + 1];
        }
        double quad = 0.0;
        for (int j = 0; j <= cfg.nx; ++j) {
            const double wq = (j == 0 || j == cfg.nx) ? 0.5 : 1.0;
            quad += wq * (row_uu[j] * w.u[j] + row_uv[j] * w.v[j]);
        }
        quad /= cfg.nx;
        CHECK(std::fabs(traj.control[k][0] - quad) <= 1e-12);
    }

    SUBCASE("transformed state vanishes at x = 1 once the boundary layer settles") {
        // the preset initial state is not compatible with the closed-loop
        // boundary value, so the first ~0.1 time units carry a boundary
        // layer; the acceptance suite runs this check from t = 0 with a
        // compatible initial state
        for (std::size_t k = 1; k < traj.times.size(); ++k) {
            if (traj.times[k] < 0.5) continue;
            const FieldPair g = apply_transform(traj.plant[k], control, TransformDirection::Forward);
            const double edge = std::max(std::fabs(g.u.back()), std::fabs(g.v.back()));
            CHECK(edge <= 5e-3 * l2_norm(g));
        }
    }
}

TEST_CASE("anti-collocated observer error decays and ignores the control signal") {
    const KernelField control = control_kernel(20.0, 10.0, kopts(128));
    const KernelField anti = observer_kernel_anticollocated(20.0, 10.0, kopts(128));
    const GainSet gains = extract_gains(anti, ObserverSetup::AntiCollocated);

    SimConfig cfg = quick_cfg(20.0, 10.0, Scenario::ObserverOnlyAntiCollocated);
    ScenarioKernels ker;
    ker.control = &control;
    ker.injection = &gains;
    const Trajectory a = run_scenario(cfg, ker);

    // the realized anti-collocated error system is exponentially stable but
    // carries complex dominant modes; assert the decay itself, not the
    // target rate (see the collocated test below for the exact-rate case)
    const std::vector<double> e = error_norms(a);
    CHECK(e.back() <= 1e-3 * e.front());
    const DecayFit fit = fit_decay(a.times, e, 0.5, 2.0);
    CHECK(fit.rate >= 2.0);

    SUBCASE("error trajectory is invariant under a different control signal") {
        cfg.scenario = Scenario::OutputFeedbackAntiCollocated;
        const Trajectory b = run_scenario(cfg, ker);
        const std::vector<double> ea = error_norms(a);
        const std::vector<double> eb = error_norms(b);
        for (std::size_t k = 0; k < ea.size(); ++k) CHECK(std::fabs(ea[k] - eb[k]) <= 1e-10);
    }

    SUBCASE("zero initial error stays zero") {
        cfg.observer_ic_u = cfg.ic_u;
        cfg.observer_ic_v = cfg.ic_v;
        cfg.t_final = 0.1;
        const Trajectory c = run_scenario(cfg, ker);
        for (const double e2 : error_norms(c)) CHECK(e2 <= 1e-12);
    }
}

TEST_CASE("collocated observer error decays at the target rate") {
    const KernelField control = control_kernel(20.0, 10.0, kopts(128));
    const KernelField col = observer_kernel_collocated(20.0, 10.0, kopts(128));
    const GainSet gains = extract_gains(col, ObserverSetup::Collocated);

    SimConfig cfg = quick_cfg(20.0, 10.0, Scenario::ObserverOnlyCollocated);
    ScenarioKernels ker;
    ker.control = &control;
    ker.injection = &gains;
    const Trajectory traj = run_scenario(cfg, ker);
    const DecayFit fit = fit_decay(traj.times, error_norms(traj), 1.0, 2.0);
    CHECK(std::fabs(fit.rate - kHalfPiSq) / kHalfPiSq <= 0.10);
    CHECK(fit.r_squared >= 0.999);
}

TEST_CASE("pure cascade observer error decays at the heat rate") {
    // lambda1 = 0 makes p vanish identically and the error a triangular
    // cascade; the driven component picks up a secular t e^{-mu t} factor
    // (equal eigenvalues), so the fitted rate approaches (pi/2)^2 only in a
    // late window
    const KernelField control = control_kernel(0.0, 10.0, kopts(64));
    const KernelField anti = observer_kernel_anticollocated(0.0, 10.0, kopts(64));
    const GainSet gains = extract_gains(anti, ObserverSetup::AntiCollocated);

    SimConfig cfg = quick_cfg(0.0, 10.0, Scenario::ObserverOnlyAntiCollocated);
    cfg.t_final = 6.0;
    ScenarioKernels ker;
    ker.control = &control;
    ker.injection = &gains;
    const Trajectory traj = run_scenario(cfg, ker);
    const DecayFit fit = fit_decay(traj.times, error_norms(traj), 4.0, 6.0);
    CHECK(std::fabs(fit.rate - kHalfPiSq) / kHalfPiSq <= 0.10);
}

TEST_CASE("zero injection reduces the observer step to the plant step") {
    // measurement equal to the observer's own estimate means no correction
    const int nx = 64;
    const ThetaStepper stepper(7.0, 3.0, nx, 1e-3, 0.5);
    FieldPair wh(nx);
    for (int j = 0; j <= nx; ++j) {
        const double x = static_cast<double>(j) / nx;
        wh.u[j] = std::cos(0.5 * std::numbers::pi * x);
        wh.v[j] = x * x * (1.0 - x);
    }
    GainSet g;
    g.setup = ObserverSetup::AntiCollocated;
    g.n = nx;
    g.p1.assign(nx + 1, 2.0);
    g.p2.assign(nx + 1, -3.0);

    const std::array<double, 2> U{0.4, -0.2};
    const FieldPair a = step_observer(stepper, wh, wh.u[0], U, g);
    const FieldPair b = stepper.step(wh, U);
    for (int j = 0; j <= nx; ++j) {
        CHECK(a.u[j] == b.u[j]);
        CHECK(a.v[j] == b.v[j]);
    }
}

TEST_CASE("recorded measurement matches the plant boundary trace") {
    const KernelField control = control_kernel(20.0, 10.0, kopts(64));
    const KernelField col = observer_kernel_collocated(20.0, 10.0, kopts(64));
    const GainSet gains = extract_gains(col, ObserverSetup::Collocated);
    SimConfig cfg = quick_cfg(20.0, 10.0, Scenario::ObserverOnlyCollocated);
    cfg.t_final = 0.05;
    ScenarioKernels ker;
    ker.control = &control;
    ker.injection = &gains;
    const Trajectory traj = run_scenario(cfg, ker);
    const double h = 1.0 / cfg.nx;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const auto& u = traj.plant[k].u;
        const double ux1 = (3.0 * u[cfg.nx] - 4.0 * u[cfg.nx - 1] + u[cfg.nx - 2]) / (2.0 * h);
        CHECK(traj.measurement[k] == doctest::Approx(ux1).epsilon(1e-14));
    }
}

TEST_CASE("missing kernels are reported") {
    SimConfig cfg = quick_cfg(1.0, 1.0, Scenario::StateFeedback);
    CHECK_THROWS_AS(run_scenario(cfg, {}), Error);

    const KernelField control = control_kernel(1.0, 1.0, kopts(32));
    ScenarioKernels ker;
    ker.control = &control;
    cfg.scenario = Scenario::ObserverOnlyCollocated;
    CHECK_THROWS_AS(run_scenario(cfg, ker), Error);
}

TEST_CASE("transforms") {
    SUBCASE("zero-coupling kernel gives the identity map") {
        const KernelField control = control_kernel(0.0, 0.0, kopts(32));
        FieldPair s(32);
        for (int j = 0; j <= 32; ++j) {
            s.u[j] = std::sin(j * 0.3);
            s.v[j] = std::cos(j * 0.2);
        }
        const FieldPair g = apply_transform(s, control, TransformDirection::Forward, false);
        for (int j = 0; j <= 32; ++j) {
            CHECK(g.u[j] == doctest::Approx(s.u[j]).epsilon(1e-14));
            CHECK(g.v[j] == doctest::Approx(s.v[j]).epsilon(1e-14));
        }
    }

    SUBCASE("forward then inverse returns the state to second order") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        double err[2];
        int k = 0;
        for (const int nx : {64, 128}) {
            const KernelField control = control_kernel(20.0, 10.0, kopts(nx));
            const KernelField inv = inverse_kernel(20.0, 10.0, kopts(nx));
            // smooth pseudo-random state: low-order Fourier mix
            const double a1 = dist(rng), a2 = dist(rng), a3 = dist(rng);
            FieldPair s(nx);
            for (int j = 0; j <= nx; ++j) {
                const double x = static_cast<double>(j) / nx;
                s.u[j] = a1 * std::cos(0.5 * std::numbers::pi * x) + a2 * x * x;
                s.v[j] = a3 * std::cos(1.5 * std::numbers::pi * x) + a1 * x;
            }
            const FieldPair g = apply_transform(s, control, TransformDirection::Forward, false);
            const FieldPair b = apply_transform(g, inv, TransformDirection::Inverse, false);
            double worst = 0.0;
            for (int j = 0; j <= nx; ++j)
                worst = std::max({worst, std::fabs(b.u[j] - s.u[j]), std::fabs(b.v[j] - s.v[j])});
            err[k++] = worst;
        }
        CHECK(err[0] / err[1] >= 3.5);
    }

    SUBCASE("observer-error transform inverts the kernel integral relation") {
        // apply (I - P) to a smooth gamma by direct quadrature, then recover
        // gamma with the transform solver
        const int nx = 128;
        const KernelField anti = observer_kernel_anticollocated(20.0, 10.0, kopts(nx));
        FieldPair gamma(nx);
        for (int j = 0; j <= nx; ++j) {
            const double x = static_cast<double>(j) / nx;
            gamma.u[j] = std::cos(0.5 * std::numbers::pi * x);
            gamma.v[j] = x * x - 1.0;
        }
        FieldPair w(nx);
        const double h = 1.0 / nx;
        for (int i = 0; i <= nx; ++i) {
            double su = 0.0, sv = 0.0;
            for (int j = 0; i > 0 && j <= i; ++j) {
                const double wq = (j == 0 || j == i) ? 0.5 * h : h;
                su += wq * (anti.Kuu.at(i, j) * gamma.u[j] + anti.Kuv.at(i, j) * gamma.v[j]);
                sv += wq * (anti.Kvu.at(i, j) * gamma.u[j] + anti.Kvv.at(i, j) * gamma.v[j]);
            }
            w.u[i] = gamma.u[i] - su;
            w.v[i] = gamma.v[i] - sv;
        }
        const FieldPair back =
            apply_transform(w, anti, TransformDirection::ObserverErrorAntiCollocated, false);
        for (int j = 0; j <= nx; ++j) {
            CHECK(back.u[j] == doctest::Approx(gamma.u[j]).epsilon(1e-10));
            CHECK(back.v[j] == doctest::Approx(gamma.v[j]).epsilon(1e-10));
        }
    }

    SUBCASE("grid mismatch is rejected when resampling is disabled") {
        const KernelField control = control_kernel(1.0, 1.0, kopts(32));
        FieldPair s(48);
        CHECK_THROWS_AS(apply_transform(s, control, TransformDirection::Forward, false), Error);
        CHECK_NOTHROW(apply_transform(s, control, TransformDirection::Forward, true));
    }

    SUBCASE("direction and family must agree") {
        const KernelField control = control_kernel(1.0, 1.0, kopts(32));
        FieldPair s(32);
        CHECK_THROWS_AS(apply_transform(s, control, TransformDirection::Inverse, false), Error);
    }
}

TEST_CASE("scheme order: error drops by >= 3.5 when nx and 1/dt double") {
    const double coarse = heat_benchmark_error(50, 4e-3);
    const double fine = heat_benchmark_error(100, 2e-3);
    CHECK(coarse / fine >= 3.5);
}

TEST_CASE("implicit Euler option remains stable and first-order accurate") {
    const double cn = heat_benchmark_error(100, 2e-3, 0.5, 0.5);
    const double ie = heat_benchmark_error(100, 2e-3, 0.5, 1.0);
    CHECK(std::isfinite(ie));
    CHECK(ie > cn); // first order in time loses accuracy at the same dt
}

TEST_CASE("config validation rejects bad parameters") {
    SimConfig cfg;
    cfg.nx = 8;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.nx = 32;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.dt = 1e-3;
    cfg.theta = 1.5;
    CHECK_THROWS_AS(cfg.validate(), Error);
}
