#pragma once

#include <vector>

#include "gkdv/spectral_core.hpp"

namespace gkdv {

/// Time-indexed snapshots of u on [0, T], all on one grid.
struct Trajectory {
    Params params;
    GridSpec grid;
    std::vector<double> times;    // strictly increasing, times[0] == 0
    std::vector<Field> snapshots; // one per time, same grid

    void validate() const;
    double duration() const { return times.empty() ? 0.0 : times.back(); }
    std::size_t size() const { return times.size(); }
};

/// All components of the X_T norm:
///   ||u||_{X_T} = ||u||_{L_T^inf H^s} + ||<x>^m u||_{L_T^inf L_x^inf}
///               + sum_{gamma=1}^{2j+2} ||<x>^m d_x^gamma u||_{L_T^inf L_x^2}
///               + sum_{l=0}^{j-1} ||d_x^{s+j-l} u||_{L_x^inf L_T^2}.
struct NormBundle {
    double h_s = 0.0;
    double weighted_sup = 0.0;
    std::vector<double> weighted_deriv; // gamma = 1 .. 2j+2
    std::vector<double> smoothing;      // l = 0 .. j-1
    double x_t_norm = 0.0;
};

/// The data size delta of (1.6) and the non-degeneracy level lambda of (1.7).
struct DataQuantities {
    double delta = 0.0;
    double lambda = 0.0;
    int m = 0;
};

/// Bessel-potential Sobolev norm ||<xi>^s f^||_{L^2}; s = 0 gives plain L^2.
double sobolev_norm(const Field& f, double s);

double l2_norm(const Field& f);

/// ||<x>^p f||_{L^2} with uniform-grid (trapezoid) quadrature weight dx.
double weighted_l2(const Field& f, double p);

/// ||<x>^p f||_{L^inf} as the grid max of the weighted modulus.
double weighted_sup(const Field& f, double p);

/// lambda = min over grid points of <x>^m |f(x)|. Zero means the
/// non-degeneracy hypothesis fails.
double lambda_of(const Field& f, int m);

/// delta = ||f||_{H^s} + ||<x>^m f||_{L^inf}
///       + sum_{gamma=1}^{2j+2} ||<x>^m d_x^gamma f||_{L^2}.
/// Throws ResolutionError when the top-decade spectral mass exceeds 1e-4.
double delta_of(const Field& f, const Params& params);

DataQuantities data_quantities(const Field& f, const Params& params);

NormBundle xt_norm(const Trajectory& traj);

/// d_{X_T}(a, b): the X_T norm of the snapshot-wise difference.
double xt_distance(const Trajectory& a, const Trajectory& b);

Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b);

/// Composite trapezoid of samples g(t_i) on the trajectory time grid.
double time_trapezoid(const std::vector<double>& times, const std::vector<double>& samples);

/// Mixed norm ||f||_{L_x^p L_T^2}: time-trapezoid of |f(x,.)|^2 inside, then
/// the spatial p-norm (p = inf supported via p <= 0 sentinel is not used;
/// pass std::numeric_limits<double>::infinity() for the sup norm).
double mixed_lp_lt2(const Trajectory& traj, double p);

} // namespace gkdv
