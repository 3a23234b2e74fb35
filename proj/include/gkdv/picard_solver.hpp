#pragma once

#include <functional>
#include <optional>

#include "gkdv/function_spaces.hpp"
#include "gkdv/nonlinearity.hpp"

namespace gkdv {

struct PicardConfig {
    double T = 0.02;
    std::size_t n_time_steps = 64;
    std::size_t max_iterations = 12;
    double tolerance = 1e-10;
    std::optional<double> ball_radius; // empty = auto, M = 2 * c1 * delta
    double c1 = 1.0;
    DegeneracyGuard::Policy guard_policy = DegeneracyGuard::Policy::warn;

    void validate() const;
};

/// Two-sided check of the proximity conclusion:
///   sup_t ||<x>^m (u(t) - u0)||_{L^inf} <= lambda/2
/// and its consequence lambda/2 <= <x>^m |u(x,t)| <= <x>^m |u0(x)| + lambda/2.
struct ProximityReport {
    double sup_deviation = 0.0;
    bool within_half_lambda = false;
    double floor_min = 0.0;
    bool floor_ok = false;
    bool ceiling_ok = false;
};

struct IterationReport {
    std::vector<double> distances; // d_n = d_{X_T}(u^{n+1}, u^n)
    std::vector<double> ratios;    // d_{n+1}/d_n where d_n > 0
    bool converged = false;
    double final_residual = 0.0; // ||Phi(u*) - u*||_{X_T}
    double delta = 0.0;
    double lambda = 0.0;
    double ball_radius = 0.0;
    double solution_xt_norm = 0.0;
    bool within_ball = false;
    ProximityReport proximity;
    std::size_t guard_violations = 0;
    double guard_worst_min = 0.0;
};

/// Left-hand sides of the smallness conditions (4.11), (4.12), (4.20) with the
/// supplied stand-in for the unknowable absolute constant C.
struct BallConditions {
    double c_constant = 1.0;
    double cond_4_11 = 0.0; // threshold 1
    double cond_4_12 = 0.0; // threshold lambda/2
    double cond_4_20 = 0.0; // threshold 1/2
    double lambda = 0.0;
    bool all_satisfied = false;
};

/// w(t_n) = int_0^{t_n} U_j(t_n - s) g(s) ds by composite trapezoid on the
/// shared time grid, accumulated in spectral space.
Trajectory propagated_time_integral(const Trajectory& integrand, int j);

/// The Duhamel map Phi(u)(t) = U_j(t) u0 - int_0^t U_j(t-s) F(u(s)) ds,
/// where F carries the equation's sign. Snapshot 0 of the result is u0.
/// `nonlinearity` replaces evaluate_F when provided (test hook).
Trajectory duhamel_apply(
    const Trajectory& traj, const Field& u0, const Params& params,
    const DegeneracyGuard& guard,
    const std::function<Field(const Field&)>& nonlinearity = nullptr);

/// Fixed-point iteration u^{n+1} = Phi(u^n) started from the free evolution
/// u^0(t) = U_j(t) u0. Successive corrections are evaluated in difference
/// form (evaluate_F_difference), so the measured distances stay meaningful
/// far below the cancellation floor of subtracting whole iterates.
std::pair<Trajectory, IterationReport> picard_solve(const Field& u0, const Params& params,
                                                    const PicardConfig& config);

/// Independent oracle: fourth-order exponential Runge-Kutta integrator with
/// the stiff linear part handled exactly by the U_j multiplier and the phi
/// coefficients evaluated series-safe near 0. Records every
/// `snapshot_stride`-th step. Aborts with BlowUpError when the L^2 norm
/// exceeds 1e6 times its initial value.
Trajectory reference_solve(const Field& u0, const Params& params, double T,
                           std::size_t n_steps, std::size_t snapshot_stride = 1);

BallConditions ball_conditions(double delta, double lambda, const Params& params, double T,
                               double c_constant);

ProximityReport check_proximity(const Trajectory& traj, const Field& u0, int m, double lambda);

} // namespace gkdv
