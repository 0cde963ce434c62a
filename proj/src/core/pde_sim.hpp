#pragma once

#include "kernel_families.hpp"

#include <array>
#include <optional>
#include <vector>

namespace backstep {

// Two-component state (u, v) sampled on the uniform grid x_j = j/nx.
struct FieldPair {
    std::vector<double> u, v;

    FieldPair() = default;
    explicit FieldPair(int nx) : u(nx + 1, 0.0), v(nx + 1, 0.0) {}
    int nx() const { return static_cast<int>(u.size()) - 1; }
};

enum class Scenario {
    OpenLoop,
    StateFeedback,
    OutputFeedbackAntiCollocated,
    OutputFeedbackCollocated,
    ObserverOnlyAntiCollocated,
    ObserverOnlyCollocated,
};

struct IcPreset {
    enum class Kind { CosHalfPi, Constant, Bump };
    Kind kind = Kind::CosHalfPi;
    double amplitude = 1.0;
    // bump parameters: amplitude * cos^2(pi (x-center) / (2 width)) on
    // |x - center| <= width, zero elsewhere
    double center = 0.5;
    double width = 0.2;

    double eval(double x) const;
};

struct SimConfig {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    int nx = 200;
    double dt = 1e-4;
    double t_final = 2.0;
    double theta = 0.5; // time-scheme weight; 1/2 = Crank-Nicolson, 1 = implicit Euler
    Scenario scenario = Scenario::OpenLoop;
    IcPreset ic_u{IcPreset::Kind::CosHalfPi, 1.0};
    IcPreset ic_v{IcPreset::Kind::CosHalfPi, 0.5};
    IcPreset observer_ic_u{IcPreset::Kind::Constant, 0.0};
    IcPreset observer_ic_v{IcPreset::Kind::Constant, 0.0};
    int record_every = 20;
    // explicit initial states (length nx+1 each); preset fields are ignored
    // when set. Not reachable from config files; used to build initial data
    // compatible with the closed-loop boundary condition.
    std::optional<FieldPair> ic_override;
    std::optional<FieldPair> observer_ic_override;

    void validate() const; // throws Errc::InvalidArgument
    bool has_observer() const;
    bool uses_feedback() const; // any scenario whose control law reads a state
    std::optional<ObserverSetup> setup() const;
    long steps() const;
};

struct Trajectory {
    SimConfig cfg;
    std::vector<double> times;
    std::vector<FieldPair> plant;
    std::vector<FieldPair> observer; // empty when the scenario has none
    // control recomputed from the snapshot state (the applied value lags by
    // one step; see ThetaStepper)
    std::vector<std::array<double, 2>> control;
    std::vector<double> measurement; // u(0,t), or u_x(1,t) for collocated setups
};

// One theta-weighted implicit step of w_t = w_xx + Sigma w with
// w_x(0) = 0 (ghost node) and w(1) = U imposed at the new time level.
// The reaction matrix Sigma = (0 lambda1; lambda2 0) sits inside the
// implicit operator; the constant block-tridiagonal factorization is cached.
class ThetaStepper {
public:
    ThetaStepper(double lambda1, double lambda2, int nx, double dt, double theta);

    // inj_u/inj_v, when present, are explicit per-node sources added as
    // dt * inj on the PDE rows (used for observer output injection).
    FieldPair step(const FieldPair& w, const std::array<double, 2>& u_boundary,
                   const std::vector<double>* inj_u = nullptr,
                   const std::vector<double>* inj_v = nullptr) const;

private:
    int nx_;
    double dt_, theta_, h_, r_, l1_, l2_;
    // cached block LU: inverted pivot blocks and subdiagonal multipliers
    std::vector<std::array<double, 4>> dinv_;
    std::vector<std::array<double, 4>> lmul_;
};

// One observer step: the plant step plus the explicit output-injection
// term p(x) (measurement - estimate), where the estimate is the observer's
// own boundary trace (value at x = 0 for the anti-collocated setup, the
// one-sided u_x(1) stencil for the collocated one). `gains` must live on
// the observer grid (resample beforehand when solved at another n).
FieldPair step_observer(const ThetaStepper& stepper, const FieldPair& observer_state,
                        double measurement, const std::array<double, 2>& u_boundary,
                        const GainSet& gains);

// Kernels a scenario needs. Feedback scenarios read `control`; observer
// scenarios additionally read `injection` (setup must match).
struct ScenarioKernels {
    const KernelField* control = nullptr;
    const GainSet* injection = nullptr;
};

// Step the scenario from t = 0 to t_final, recording every record_every
// steps. Control laws: OpenLoop applies U = 0, StateFeedback and
// ObserverOnly* integrate K(1,y) against the plant state, OutputFeedback*
// against the observer state. Throws Errc::MissingKernels when a required
// kernel is absent.
Trajectory run_scenario(const SimConfig& cfg, const ScenarioKernels& kernels);

enum class TransformDirection {
    Forward,                      // gamma = w - int_0^x K(x,y) w(y) dy      (control kernel)
    Inverse,                      // w = gamma + int_0^x L(x,y) gamma(y) dy  (inverse kernel)
    ObserverErrorAntiCollocated,  // solve werr = gamma - int_0^x P gamma for gamma
    ObserverErrorCollocated,      // solve werr = gamma - int_x^1 P gamma for gamma
};

// Apply (or invert, for the observer-error directions) the Volterra state
// transformation. The kernel is resampled to the state grid when
// resolutions differ; pass allow_resample = false to get
// Errc::GridMismatch instead.
FieldPair apply_transform(const FieldPair& state, const KernelField& kf,
                          TransformDirection dir, bool allow_resample = true);

// L2 error at t_final of the theta scheme against the separable
// heat-equation solution e^{-(pi/2)^2 t} cos(pi x / 2) (lambda = 0, U = 0).
double heat_benchmark_error(int nx, double dt, double t_final = 0.5, double theta = 0.5);

} // namespace backstep
