#pragma once

#include "kernel_families.hpp"
#include "pde_sim.hpp"

#include <vector>

namespace backstep {

// sqrt of the trapezoid integral of u^2 + v^2 over [0, 1].
double l2_norm(const FieldPair& state);
double l2_norm_line(const std::vector<double>& f);

struct DecayFit {
    double rate = 0.0;      // decay rate (positive = decaying), 1/time
    double intercept = 0.0; // fitted ln-norm at t = 0
    double t_start = 0.0, t_end = 0.0;
    double r_squared = 0.0;
    int samples = 0;
};

// Least-squares fit of ln(norm) vs t over [t_start, t_end], sign-flipped so
// a decaying series yields a positive rate. Requires at least 10 samples in
// the window and positive norms (Errc::NonPositiveNorm otherwise).
DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& norms,
                   double t_start, double t_end);

// Dominant open-loop growth rate sqrt(lambda1 lambda2) - (pi/2)^2 of the
// plant under U = 0: the reaction matrix has eigenvalues +-sqrt(l1 l2) and
// the slowest Neumann-Dirichlet Laplacian mode is (pi/2)^2. Refuses
// lambda1 lambda2 < 0 (Errc::ComplexSpectrum).
double modal_rate_oracle(double lambda1, double lambda2);

// Max node-wise entry of R = L - K - int_y^x K(x,s) L(s,y) ds; vanishes to
// O(h^2) when L is the inverse kernel of K. Throws Errc::GridMismatch when
// resolutions differ.
double reciprocity_residual(const KernelField& K, const KernelField& L);

// Max interior second-difference residual of the family's kernel PDE.
// Requires n >= 32.
double kernel_pde_residual(const KernelField& kf);

struct LyapunovReport {
    std::vector<double> Q1, Q2; // gain correction int_0^x K(x,y) p(y) dy on the kernel grid
    double C = 0.0, D = 0.0;    // grid maxima of p1 - Q1 and p2 - Q2
    double A = 0.0;             // weight 2 (C^2 + D^2)
    std::vector<double> t, V;
    bool bound_ok = false;      // V(t) <= V(0) e^{-t/4} (1 + tol) at every snapshot
};

// Lyapunov certificate for the anti-collocated output-feedback loop:
// evaluates V = A/2 |a_err|^2 + 1/2 |a_hat|^2 + 1/2 |b_err|^2 + 1/2 |b_hat|^2
// on the transformed states (hat states through the control kernel, error
// states through the observer-error kernel). Throws Errc::WrongScenario
// unless the trajectory is an anti-collocated run with observer snapshots.
LyapunovReport lyapunov_monitor(const Trajectory& traj, const KernelField& control,
                                const KernelField& observer, const GainSet& gains,
                                double tol_fit = 0.01);

} // namespace backstep
