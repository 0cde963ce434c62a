#include "backstep.h"

#include "core/analysis.hpp"
#include "core/commands.hpp"
#include "core/config.hpp"
#include "core/csv_io.hpp"
#include "core/errors.hpp"
#include "core/version.hpp"

#include <cstring>
#include <string>

using namespace backstep;

namespace {

thread_local std::string g_last_error;

bstp_status to_status(Errc c) {
    switch (c) {
        case Errc::InvalidArgument: return BSTP_ERR_INVALID_ARGUMENT;
        case Errc::Parse: return BSTP_ERR_PARSE;
        case Errc::IterationLimit: return BSTP_ERR_ITERATION_LIMIT;
        case Errc::FamilyMismatch: return BSTP_ERR_FAMILY_MISMATCH;
        case Errc::GridMismatch: return BSTP_ERR_GRID_MISMATCH;
        case Errc::MissingKernels: return BSTP_ERR_MISSING_KERNELS;
        case Errc::NonPositiveNorm: return BSTP_ERR_NONPOSITIVE_NORM;
        case Errc::ComplexSpectrum: return BSTP_ERR_COMPLEX_SPECTRUM;
        case Errc::WrongScenario: return BSTP_ERR_WRONG_SCENARIO;
        case Errc::SingularSystem: return BSTP_ERR_SINGULAR_SYSTEM;
        case Errc::Io: return BSTP_ERR_IO;
        case Errc::Verification: return BSTP_ERR_VERIFICATION;
        case Errc::Internal: return BSTP_ERR_INTERNAL;
    }
    return BSTP_ERR_INTERNAL;
}

bstp_status set_error(bstp_status s, const char* msg) {
    g_last_error = msg ? msg : "";
    return s;
}

template <typename Fn>
bstp_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return BSTP_OK;
    } catch (const Error& e) {
        return set_error(to_status(e.code()), e.what());
    } catch (const std::exception& e) {
        return set_error(BSTP_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(BSTP_ERR_INTERNAL, "unknown error");
    }
}

bstp_status require(bool ok, const char* msg) {
    return ok ? BSTP_OK : set_error(BSTP_ERR_INVALID_ARGUMENT, msg);
}

} // namespace

struct bstp_config {
    ToolkitConfig cfg;
};

struct bstp_kernel {
    KernelField kf;
};

struct bstp_gains {
    GainSet g;
};

struct bstp_trajectory {
    Trajectory traj;
};

extern "C" {

const char* bstp_version(void) { return BACKSTEP_VERSION; }

const char* bstp_status_name(bstp_status status) {
    switch (status) {
        case BSTP_OK: return "ok";
        case BSTP_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case BSTP_ERR_PARSE: return "parse_error";
        case BSTP_ERR_ITERATION_LIMIT: return "iteration_limit";
        case BSTP_ERR_FAMILY_MISMATCH: return "family_mismatch";
        case BSTP_ERR_GRID_MISMATCH: return "grid_mismatch";
        case BSTP_ERR_MISSING_KERNELS: return "missing_kernels";
        case BSTP_ERR_NONPOSITIVE_NORM: return "nonpositive_norm";
        case BSTP_ERR_COMPLEX_SPECTRUM: return "complex_spectrum";
        case BSTP_ERR_WRONG_SCENARIO: return "wrong_scenario";
        case BSTP_ERR_SINGULAR_SYSTEM: return "singular_system";
        case BSTP_ERR_IO: return "io_error";
        case BSTP_ERR_VERIFICATION: return "verification_failed";
        case BSTP_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* bstp_last_error(void) { return g_last_error.c_str(); }

/* ---------------------------------------------------------------- config */

bstp_status bstp_config_create(bstp_config** out) {
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] {
        auto* c = new bstp_config{};
        c->cfg.sim.lambda1 = 20.0;
        c->cfg.sim.lambda2 = 10.0;
        c->cfg.lambda1_set = c->cfg.lambda2_set = c->cfg.scenario_set = true;
        *out = c;
    });
}

bstp_status bstp_config_load(const char* path, bstp_config** out) {
    if (auto s = require(out && path, "path and out must not be null")) return s;
    return guarded([&] { *out = new bstp_config{parse_config_file(path)}; });
}

bstp_status bstp_config_set(bstp_config* cfg, const char* key, const char* value) {
    if (auto s = require(cfg && key && value, "cfg, key and value must not be null")) return s;
    return guarded([&] { config_apply(cfg->cfg, key, value); });
}

bstp_status bstp_config_get(const bstp_config* cfg, const char* key, char* buf, size_t buflen) {
    if (auto s = require(cfg && key && buf && buflen > 0, "cfg, key and buf must not be null")) return s;
    return guarded([&] {
        const auto kv = cfg->cfg.echo();
        const auto it = kv.find(key);
        if (it == kv.end()) fail(Errc::Parse, "unknown key '" + std::string(key) + "'");
        if (it->second.size() + 1 > buflen)
            fail(Errc::InvalidArgument, "buffer too small for value of '" + std::string(key) + "'");
        std::memcpy(buf, it->second.c_str(), it->second.size() + 1);
    });
}

void bstp_config_free(bstp_config* cfg) { delete cfg; }

/* --------------------------------------------------------------- kernels */

bstp_status bstp_kernel_solve(bstp_family family, double lambda1, double lambda2, int n,
                              double tol, int max_iter, bstp_kernel** out) {
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] {
        KernelOptions opt;
        opt.n = n;
        if (tol > 0.0) opt.tol = tol;
        if (max_iter > 0) opt.max_iter = max_iter;
        KernelField kf;
        switch (family) {
            case BSTP_KERNEL_CONTROL: kf = control_kernel(lambda1, lambda2, opt); break;
            case BSTP_KERNEL_INVERSE: kf = inverse_kernel(lambda1, lambda2, opt); break;
            case BSTP_KERNEL_OBSERVER_ANTICOLLOCATED:
                kf = observer_kernel_anticollocated(lambda1, lambda2, opt);
                break;
            case BSTP_KERNEL_OBSERVER_COLLOCATED:
                kf = observer_kernel_collocated(lambda1, lambda2, opt);
                break;
            default: fail(Errc::InvalidArgument, "unknown kernel family");
        }
        *out = new bstp_kernel{std::move(kf)};
    });
}

int bstp_kernel_resolution(const bstp_kernel* k) { return k ? k->kf.n : -1; }

bstp_status bstp_kernel_value(const bstp_kernel* k, int component, int i, int j, double* out) {
    if (auto s = require(k && out, "kernel and out must not be null")) return s;
    if (auto s = require(component >= 0 && component <= 3, "component must be 0..3")) return s;
    if (auto s = require(k->kf.Kuu.valid(i, j), "node indices must satisfy 0 <= j <= i <= n")) return s;
    *out = k->kf.component(component).at(i, j);
    g_last_error.clear();
    return BSTP_OK;
}

bstp_status bstp_kernel_iterations(const bstp_kernel* k, int pair, int* iterations,
                                   double* final_increment) {
    if (auto s = require(k != nullptr, "kernel must not be null")) return s;
    if (auto s = require(pair == 0 || pair == 1, "pair must be 0 or 1")) return s;
    if (iterations) *iterations = k->kf.meta[pair].iterations_used;
    if (final_increment) *final_increment = k->kf.meta[pair].final_increment;
    g_last_error.clear();
    return BSTP_OK;
}

bstp_status bstp_kernel_write_csv(const bstp_kernel* k, const char* path) {
    if (auto s = require(k && path, "kernel and path must not be null")) return s;
    return guarded([&] { write_kernel_csv(path, k->kf); });
}

void bstp_kernel_free(bstp_kernel* k) { delete k; }

/* ----------------------------------------------------------------- gains */

bstp_status bstp_gains_extract(const bstp_kernel* k, bstp_setup setup, bstp_gains** out) {
    if (auto s = require(k && out, "kernel and out must not be null")) return s;
    return guarded([&] {
        const ObserverSetup su = (setup == BSTP_SETUP_COLLOCATED) ? ObserverSetup::Collocated
                                                                  : ObserverSetup::AntiCollocated;
        *out = new bstp_gains{extract_gains(k->kf, su)};
    });
}

int bstp_gains_resolution(const bstp_gains* g) { return g ? g->g.n : -1; }

bstp_status bstp_gains_feedback(const bstp_gains* g, int component, int j, double* out) {
    if (auto s = require(g && out, "gains and out must not be null")) return s;
    if (auto s = require(!g->g.fb_uu.empty(), "gain set carries no feedback row")) return s;
    if (auto s = require(component >= 0 && component <= 3 && j >= 0 && j <= g->g.n,
                         "component must be 0..3 and j within the grid"))
        return s;
    const std::vector<double>* row[4] = {&g->g.fb_uu, &g->g.fb_uv, &g->g.fb_vu, &g->g.fb_vv};
    *out = (*row[component])[j];
    g_last_error.clear();
    return BSTP_OK;
}

bstp_status bstp_gains_injection(const bstp_gains* g, int which, int i, double* out) {
    if (auto s = require(g && out, "gains and out must not be null")) return s;
    if (auto s = require(!g->g.p1.empty(), "gain set carries no injection gains")) return s;
    if (auto s = require((which == 1 || which == 2) && i >= 0 && i <= g->g.n,
                         "which must be 1 or 2 and i within the grid"))
        return s;
    *out = (which == 1) ? g->g.p1[i] : g->g.p2[i];
    g_last_error.clear();
    return BSTP_OK;
}

void bstp_gains_free(bstp_gains* g) { delete g; }

/* ------------------------------------------------------------ simulation */

bstp_status bstp_simulate(const bstp_config* cfg, bstp_trajectory** out) {
    if (auto s = require(cfg && out, "cfg and out must not be null")) return s;
    return guarded([&] {
        const SimConfig& sim = cfg->cfg.sim;
        sim.validate();

        KernelField control, observer;
        GainSet gains;
        ScenarioKernels ker;
        if (sim.uses_feedback()) {
            control = control_kernel(sim.lambda1, sim.lambda2, cfg->cfg.kernel);
            ker.control = &control;
        }
        if (sim.has_observer()) {
            if (*sim.setup() == ObserverSetup::AntiCollocated) {
                observer = observer_kernel_anticollocated(sim.lambda1, sim.lambda2, cfg->cfg.kernel);
                gains = extract_gains(observer, ObserverSetup::AntiCollocated);
            } else {
                observer = observer_kernel_collocated(sim.lambda1, sim.lambda2, cfg->cfg.kernel);
                gains = extract_gains(observer, ObserverSetup::Collocated);
            }
            ker.injection = &gains;
        }
        *out = new bstp_trajectory{run_scenario(sim, ker)};
    });
}

long bstp_trajectory_snapshots(const bstp_trajectory* t) {
    return t ? static_cast<long>(t->traj.times.size()) : -1;
}

bstp_status bstp_trajectory_time(const bstp_trajectory* t, long k, double* out) {
    if (auto s = require(t && out, "trajectory and out must not be null")) return s;
    if (auto s = require(k >= 0 && k < bstp_trajectory_snapshots(t), "snapshot index out of range"))
        return s;
    *out = t->traj.times[k];
    g_last_error.clear();
    return BSTP_OK;
}

bstp_status bstp_trajectory_norm(const bstp_trajectory* t, long k, int which, double* out) {
    if (auto s = require(t && out, "trajectory and out must not be null")) return s;
    if (auto s = require(k >= 0 && k < bstp_trajectory_snapshots(t), "snapshot index out of range"))
        return s;
    if (which == 0) {
        *out = l2_norm(t->traj.plant[k]);
    } else if (which == 1) {
        if (auto s = require(!t->traj.observer.empty(), "trajectory has no observer snapshots"))
            return s;
        const FieldPair& w = t->traj.plant[k];
        const FieldPair& wh = t->traj.observer[k];
        FieldPair d(w.nx());
        for (int j = 0; j <= w.nx(); ++j) {
            d.u[j] = w.u[j] - wh.u[j];
            d.v[j] = w.v[j] - wh.v[j];
        }
        *out = l2_norm(d);
    } else {
        return set_error(BSTP_ERR_INVALID_ARGUMENT, "which must be 0 (plant) or 1 (error)");
    }
    g_last_error.clear();
    return BSTP_OK;
}

bstp_status bstp_trajectory_state(const bstp_trajectory* t, long k, int j, double* u, double* v,
                                  double* uhat, double* vhat) {
    if (auto s = require(t != nullptr, "trajectory must not be null")) return s;
    if (auto s = require(k >= 0 && k < bstp_trajectory_snapshots(t), "snapshot index out of range"))
        return s;
    if (auto s = require(j >= 0 && j <= t->traj.cfg.nx, "node index out of range")) return s;
    if (u) *u = t->traj.plant[k].u[j];
    if (v) *v = t->traj.plant[k].v[j];
    const bool obs = !t->traj.observer.empty();
    if (uhat) *uhat = obs ? t->traj.observer[k].u[j] : 0.0;
    if (vhat) *vhat = obs ? t->traj.observer[k].v[j] : 0.0;
    g_last_error.clear();
    return BSTP_OK;
}

bstp_status bstp_trajectory_write_snapshots_csv(const bstp_trajectory* t, const char* path) {
    if (auto s = require(t && path, "trajectory and path must not be null")) return s;
    return guarded([&] { write_snapshots_csv(path, t->traj); });
}

bstp_status bstp_trajectory_write_norms_csv(const bstp_trajectory* t, const char* path) {
    if (auto s = require(t && path, "trajectory and path must not be null")) return s;
    return guarded([&] { write_norms_csv(path, t->traj); });
}

void bstp_trajectory_free(bstp_trajectory* t) { delete t; }

/* -------------------------------------------------------------- analysis */

bstp_status bstp_modal_rate(double lambda1, double lambda2, double* out) {
    if (auto s = require(out != nullptr, "out must not be null")) return s;
    return guarded([&] { *out = modal_rate_oracle(lambda1, lambda2); });
}

bstp_status bstp_fit_decay(const bstp_trajectory* t, int which, double t_start, double t_end,
                           double* rate, double* r_squared) {
    if (auto s = require(t && rate, "trajectory and rate must not be null")) return s;
    return guarded([&] {
        std::vector<double> norms(t->traj.times.size());
        for (std::size_t k = 0; k < norms.size(); ++k) {
            double v = 0.0;
            const bstp_status s = bstp_trajectory_norm(t, static_cast<long>(k), which, &v);
            if (s != BSTP_OK) fail(Errc::InvalidArgument, bstp_last_error());
            norms[k] = v;
        }
        const DecayFit fit = fit_decay(t->traj.times, norms, t_start, t_end);
        *rate = fit.rate;
        if (r_squared) *r_squared = fit.r_squared;
    });
}

/* -------------------------------------------------------------- commands */

bstp_status bstp_cmd_kernels(const bstp_config* cfg, const char* out_dir) {
    if (auto s = require(cfg && out_dir, "cfg and out_dir must not be null")) return s;
    return guarded([&] { cmd_kernels(cfg->cfg, out_dir); });
}

bstp_status bstp_cmd_simulate(const bstp_config* cfg, const char* out_dir) {
    if (auto s = require(cfg && out_dir, "cfg and out_dir must not be null")) return s;
    return guarded([&] { cmd_simulate(cfg->cfg, out_dir); });
}

bstp_status bstp_cmd_verify(const bstp_config* cfg, const char* out_dir, int* n_failed) {
    if (auto s = require(cfg && out_dir, "cfg and out_dir must not be null")) return s;
    int failed = 0;
    const bstp_status s = guarded([&] { failed = cmd_verify(cfg->cfg, out_dir); });
    if (n_failed) *n_failed = failed;
    if (s != BSTP_OK) return s;
    if (failed > 0)
        return set_error(BSTP_ERR_VERIFICATION,
                         ("verification failed: " + std::to_string(failed) + " check(s)").c_str());
    return BSTP_OK;
}

} // extern "C"
