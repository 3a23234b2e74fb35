#include "gkdv/function_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace gkdv {

void Trajectory::validate() const {
    if (times.empty() || snapshots.size() != times.size()) {
        throw IncompatibleTrajectoriesError("trajectory: snapshot/time count mismatch");
    }
    if (times.front() != 0.0) {
        throw IncompatibleTrajectoriesError("trajectory: times must start at 0");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw IncompatibleTrajectoriesError("trajectory: times must be strictly increasing");
        }
    }
    for (const Field& f : snapshots) {
        if (!(f.grid == grid)) {
            throw IncompatibleTrajectoriesError("trajectory: snapshot grid mismatch");
        }
    }
}

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (const Complex& v : f.values) acc += std::norm(v);
    return std::sqrt(f.grid.dx * acc);
}

double sobolev_norm(const Field& f, double s) {
    if (s == 0.0) return l2_norm(f);
    const std::vector<Complex> c = to_spectrum(f);
    const std::size_t n = c.size();
    // Parseval: ||f||_{L^2}^2 = (dx/n) sum |fhat|^2 with fhat = n*c.
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = f.grid.wavenumber(i);
        acc += std::pow(1.0 + xi * xi, s) * std::norm(c[i]);
    }
    return std::sqrt(2.0 * f.grid.half_width * acc);
}

double weighted_l2(const Field& f, double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f.grid.x(i);
        acc += std::pow(1.0 + x * x, p) * std::norm(f.values[i]);
    }
    return std::sqrt(f.grid.dx * acc);
}

double weighted_sup(const Field& f, double p) {
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f.grid.x(i);
        best = std::max(best, std::pow(1.0 + x * x, 0.5 * p) * std::abs(f.values[i]));
    }
    return best;
}

double lambda_of(const Field& f, int m) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f.grid.x(i);
        best = std::min(best, std::pow(1.0 + x * x, 0.5 * m) * std::abs(f.values[i]));
    }
    return best;
}

double delta_of(const Field& f, const Params& params) {
    const double top_mass = top_mode_mass_fraction(f);
    if (top_mass > 1e-4) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "delta_of: top-decade spectral mass %.3e exceeds 1e-4; "
                      "grid under-resolves the data", top_mass);
        throw ResolutionError(buf);
    }
    double delta = sobolev_norm(f, params.s) + weighted_sup(f, params.m);
    for (int gamma = 1; gamma <= 2 * params.j + 2; ++gamma) {
        delta += weighted_l2(spectral_derivative(f, gamma), params.m);
    }
    return delta;
}

DataQuantities data_quantities(const Field& f, const Params& params) {
    DataQuantities q;
    q.m = params.m;
    q.lambda = lambda_of(f, params.m);
    q.delta = delta_of(f, params);
    return q;
}

double time_trapezoid(const std::vector<double>& times, const std::vector<double>& samples) {
    double acc = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        acc += 0.5 * (times[i] - times[i - 1]) * (samples[i] + samples[i - 1]);
    }
    return acc;
}

namespace {

// ||d_x^order u||_{L_x^inf L_T^2}: per grid point, the time-trapezoid of the
// squared modulus, then the max over points.
double smoothing_norm(const Trajectory& traj, int order) {
    const std::size_t n = traj.grid.n_points;
    const std::size_t nt = traj.times.size();
    std::vector<std::vector<double>> sq(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        const Field d = spectral_derivative(traj.snapshots[t], order);
        sq[t].resize(n);
        for (std::size_t i = 0; i < n; ++i) sq[t][i] = std::norm(d.values[i]);
    }
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t t = 1; t < nt; ++t) {
            acc += 0.5 * (traj.times[t] - traj.times[t - 1]) * (sq[t][i] + sq[t - 1][i]);
        }
        best = std::max(best, acc);
    }
    return std::sqrt(best);
}

} // namespace

NormBundle xt_norm(const Trajectory& traj) {
    traj.validate();
    const Params& p = traj.params;
    NormBundle b;
    for (const Field& u : traj.snapshots) {
        b.h_s = std::max(b.h_s, sobolev_norm(u, p.s));
        b.weighted_sup = std::max(b.weighted_sup, gkdv::weighted_sup(u, p.m));
    }
    b.weighted_deriv.assign(2 * p.j + 2, 0.0);
    for (int gamma = 1; gamma <= 2 * p.j + 2; ++gamma) {
        double comp = 0.0;
        for (const Field& u : traj.snapshots) {
            comp = std::max(comp, weighted_l2(spectral_derivative(u, gamma), p.m));
        }
        b.weighted_deriv[gamma - 1] = comp;
    }
    b.smoothing.assign(p.j, 0.0);
    for (int l = 0; l < p.j; ++l) {
        b.smoothing[l] = smoothing_norm(traj, p.s + p.j - l);
    }
    b.x_t_norm = b.h_s + b.weighted_sup;
    for (double v : b.weighted_deriv) b.x_t_norm += v;
    for (double v : b.smoothing) b.x_t_norm += v;
    return b;
}

Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b) {
    if (!(a.grid == b.grid) || a.times != b.times) {
        throw IncompatibleTrajectoriesError(
            "xt_distance: trajectories must share grid and time grid");
    }
    Trajectory d;
    d.params = a.params;
    d.grid = a.grid;
    d.times = a.times;
    d.snapshots.reserve(a.snapshots.size());
    for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
        d.snapshots.push_back(a.snapshots[i] - b.snapshots[i]);
        d.snapshots.back().time_tag = a.times[i];
    }
    return d;
}

double xt_distance(const Trajectory& a, const Trajectory& b) {
    return xt_norm(trajectory_difference(a, b)).x_t_norm;
}

double mixed_lp_lt2(const Trajectory& traj, double p) {
    const std::size_t n = traj.grid.n_points;
    const std::size_t nt = traj.times.size();
    std::vector<double> inner(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t t = 1; t < nt; ++t) {
            const double a = std::norm(traj.snapshots[t - 1].values[i]);
            const double b = std::norm(traj.snapshots[t].values[i]);
            acc += 0.5 * (traj.times[t] - traj.times[t - 1]) * (a + b);
        }
        inner[i] = std::sqrt(acc);
    }
    if (std::isinf(p)) {
        return *std::max_element(inner.begin(), inner.end());
    }
    double acc = 0.0;
    for (double v : inner) acc += std::pow(v, p);
    return std::pow(traj.grid.dx * acc, 1.0 / p);
}

} // namespace gkdv
