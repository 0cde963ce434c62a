#pragma once

#include "tri_field.hpp"

#include <vector>

namespace backstep {

// Condition imposed on the characteristic line xi = eta (the y = 0 edge of
// the (x, y) triangle): ReflectionNeumann encodes K_y(x, 0) = 0, i.e.
// G_xi = G_eta on xi = eta; ZeroDirichlet encodes K(x, 0) = 0.
enum class SideCondition { ReflectionNeumann, ZeroDirichlet };

// One coupled pair of wave-type Goursat problems, written in characteristic
// coordinates xi = x + y, eta = x - y over the triangle 0 <= y <= x <= 1:
//
//   G_{xi eta} = a H,   G(xi, 0) = cG xi,
//   H_{xi eta} = b G,   H(xi, 0) = cH xi,
//
// closed by the side condition above. The solver works on the equivalent
// Volterra integral system; for ReflectionNeumann
//
//   G(xi,eta) = cG (xi+eta) + 2a I2[H](eta) + a I1[H](xi,eta)
//
// with I2[F](eta)    = int_0^eta int_0^tau F(tau,s) ds dtau and
//      I1[F](xi,eta) = int_eta^xi int_0^eta F(tau,s) ds dtau,
//
// and for ZeroDirichlet
//
//   G(xi,eta) = cG (xi-eta) + a I1[H](xi,eta),
//
// symmetrically for H with (b, cH).
struct KernelProblem {
    double a = 0.0;  // coupling constant multiplying H in the G-equation
    double b = 0.0;  // coupling constant multiplying G in the H-equation
    double cG = 0.0; // slope of the diagonal data for G
    double cH = 0.0; // slope of the diagonal data for H
    SideCondition side = SideCondition::ReflectionNeumann;
    int n = 256;         // intervals per unit of x
    double tol = 1e-12;  // sup-norm stop threshold for the Picard increments
    int max_iter = 200;
};

struct PairSolution {
    // G(x+y, x-y) and H(x+y, x-y) sampled on the (x, y) triangle grid.
    TriField G;
    TriField H;
    int iterations_used = 0;
    double final_increment = 0.0;
    // sup-norm of each added Picard term; entry k holds |Delta J^{k+1}|_inf
    std::vector<double> increment_history;
};

// Picard (successive approximation) solution of the integral system.
// Throws Errc::InvalidArgument for violated preconditions and
// Errc::IterationLimit when max_iter is hit before the tolerance.
PairSolution solve_pair(const KernelProblem& problem);

// Constant M = max(1, 3|a|, 3|b|, sqrt(|cG| + |cH|)) governing both the
// factorial increment bound |Delta J^k|_inf <= M^{k+1} 2^k / k! and the
// a-priori solution bound max(|G|, |H|) <= M e^{2M}.
double picard_bound_constant(const KernelProblem& problem);

} // namespace backstep
