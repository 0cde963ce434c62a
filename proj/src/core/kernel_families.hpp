#pragma once

#include "goursat.hpp"
#include "tri_field.hpp"

#include <array>
#include <vector>

namespace backstep {

enum class KernelFamily { Control, Inverse, ObserverAntiCollocated, ObserverCollocated };
enum class ObserverSetup { AntiCollocated, Collocated };

struct SolveMeta {
    int iterations_used = 0;
    double final_increment = 0.0;
    std::vector<double> increment_history;
};

// Matrix-valued kernel of one transformation, sampled on the standard
// triangle 0 <= y <= x <= 1. Component slots follow the 2x2 matrix layout
// (uu uv; vu vv); for the inverse kernel they hold (aa ab; ba bb).
//
// Orientation: Control/Inverse/ObserverAntiCollocated fields are stored in
// problem coordinates. The collocated observer kernel natively lives on
// 0 <= x <= y <= 1, so its samples are stored argument-swapped,
// stored(x, y) = P(y, x); value_at() undoes the swap.
struct KernelField {
    KernelFamily family = KernelFamily::Control;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    int n = 0;
    TriField Kuu, Kuv, Kvu, Kvv;
    std::array<SolveMeta, 2> meta; // one entry per solved Goursat pair

    const TriField& component(int c) const;

    // Sample component c at problem-coordinate node indices; for the
    // collocated family the arguments satisfy xi <= yi and are swapped
    // into storage order internally.
    double value_at(int c, int xi, int yi) const;
};

struct KernelOptions {
    int n = 256;
    double tol = 1e-12;
    int max_iter = 200;
};

// Feedback and output-injection gains read off a kernel field. A control
// kernel fills the feedback row K(1, y_j); an observer kernel fills the
// injection gains p1(x_i), p2(x_i). The boundary-value injection gain L
// is identically zero for this plant family.
struct GainSet {
    ObserverSetup setup = ObserverSetup::AntiCollocated;
    int n = 0;
    std::vector<double> fb_uu, fb_uv, fb_vu, fb_vv;
    std::vector<double> p1, p2;
    double L_gain = 0.0;
};

// Gain kernel of the state-feedback transformation: two ReflectionNeumann
// pairs (K^uu, K^uv) and (K^vv, K^vu) with diagonal data
// K^uv(x,x) = -lambda1 x / 2, K^vu(x,x) = -lambda2 x / 2.
KernelField control_kernel(double lambda1, double lambda2, const KernelOptions& opt = {});

// Kernel of the inverse transformation (coupling sign flipped, same data).
KernelField inverse_kernel(double lambda1, double lambda2, const KernelOptions& opt = {});

// Observer kernel for a sensor at x = 0: diagonal data lambda (1-x)/2 and
// P(1, y) = 0. Solved after the reflection (1-y, 1-x), which turns the
// x = 1 edge condition into a ZeroDirichlet side condition; samples are
// stored un-reflected.
KernelField observer_kernel_anticollocated(double lambda1, double lambda2,
                                           const KernelOptions& opt = {});

// Observer kernel for a sensor at x = 1: lives on 0 <= x <= y <= 1 with
// P_x(0, y) = 0; solved and stored argument-swapped, which maps the side
// condition to ReflectionNeumann.
KernelField observer_kernel_collocated(double lambda1, double lambda2,
                                       const KernelOptions& opt = {});

// Read gains from a kernel field. Control kernels yield the feedback row;
// observer kernels must match `setup` and yield p1, p2 (anti-collocated via
// a second-order one-sided y-derivative at y = 0, collocated from the
// swapped x = 1 edge). Throws Errc::FamilyMismatch otherwise.
GainSet extract_gains(const KernelField& kf, ObserverSetup setup);

} // namespace backstep
