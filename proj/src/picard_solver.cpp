#include "gkdv/picard_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gkdv {

namespace {

std::vector<Complex> phase_multiplier(const GridSpec& grid, double t, int j) {
    std::vector<Complex> m(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double ph = propagator_phase(grid.mode_index(i), grid.half_width, t, j);
        m[i] = Complex(std::cos(ph), std::sin(ph));
    }
    return m;
}

Trajectory scaled(double c, const Trajectory& t) {
    Trajectory out = t;
    for (Field& f : out.snapshots) {
        for (Complex& v : f.values) v *= c;
    }
    return out;
}

Trajectory shifted(const Trajectory& base, const Trajectory& delta) {
    Trajectory out = base;
    for (std::size_t i = 0; i < out.snapshots.size(); ++i) {
        for (std::size_t p = 0; p < out.snapshots[i].values.size(); ++p) {
            out.snapshots[i].values[p] += delta.snapshots[i].values[p];
        }
    }
    return out;
}

} // namespace

void PicardConfig::validate() const {
    if (!(T > 0.0)) throw ParamError("picard config: T must be positive");
    if (n_time_steps < 4) throw ParamError("picard config: n_time_steps must be >= 4");
    if (!(tolerance > 0.0)) throw ParamError("picard config: tolerance must be positive");
    if (max_iterations < 1) throw ParamError("picard config: max_iterations must be >= 1");
    if (!(c1 > 0.0)) throw ParamError("picard config: c1 must be positive");
}

Trajectory propagated_time_integral(const Trajectory& integrand, int j) {
    integrand.validate();
    const GridSpec& grid = integrand.grid;
    const std::size_t nt = integrand.times.size();

    // Rotate each sample into the U_j(-t_m) frame once; the running trapezoid
    // sum then needs a single forward rotation per output time.
    std::vector<std::vector<Complex>> rotated(nt);
    for (std::size_t m = 0; m < nt; ++m) {
        rotated[m] = to_spectrum(integrand.snapshots[m]);
        const std::vector<Complex> back = phase_multiplier(grid, -integrand.times[m], j);
        for (std::size_t i = 0; i < rotated[m].size(); ++i) rotated[m][i] *= back[i];
    }

    Trajectory out;
    out.params = integrand.params;
    out.grid = grid;
    out.times = integrand.times;
    out.snapshots.reserve(nt);
    out.snapshots.push_back(Field::zero(grid, integrand.times[0]));

    std::vector<Complex> running(grid.n_points, Complex(0.0, 0.0));
    for (std::size_t n = 1; n < nt; ++n) {
        const double half_dt = 0.5 * (integrand.times[n] - integrand.times[n - 1]);
        for (std::size_t i = 0; i < running.size(); ++i) {
            running[i] += half_dt * (rotated[n - 1][i] + rotated[n][i]);
        }
        std::vector<Complex> q = running;
        const std::vector<Complex> fwd = phase_multiplier(grid, integrand.times[n], j);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] *= fwd[i];
        out.snapshots.push_back(from_spectrum(grid, q, integrand.times[n]));
    }
    return out;
}

Trajectory duhamel_apply(const Trajectory& traj, const Field& u0, const Params& params,
                         const DegeneracyGuard& guard,
                         const std::function<Field(const Field&)>& nonlinearity) {
    traj.validate();
    if (!(traj.grid == u0.grid)) {
        throw IncompatibleTrajectoriesError("duhamel_apply: u0 grid mismatch");
    }
    double dev = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < u0.size(); ++i) {
        dev = std::max(dev, std::abs(traj.snapshots[0].values[i] - u0.values[i]));
        scale = std::max(scale, std::abs(u0.values[i]));
    }
    if (dev > 1e-12 * (1.0 + scale)) {
        throw IncompatibleTrajectoriesError("duhamel_apply: snapshot 0 must equal u0");
    }

    Trajectory f_traj;
    f_traj.params = params;
    f_traj.grid = traj.grid;
    f_traj.times = traj.times;
    f_traj.snapshots.reserve(traj.size());
    for (const Field& u : traj.snapshots) {
        f_traj.snapshots.push_back(nonlinearity ? nonlinearity(u)
                                                : evaluate_F(u, params, guard));
        f_traj.snapshots.back().time_tag = u.time_tag;
    }
    const Trajectory q = propagated_time_integral(f_traj, params.j);

    Trajectory out;
    out.params = params;
    out.grid = traj.grid;
    out.times = traj.times;
    out.snapshots.reserve(traj.size());
    Field first = u0;
    first.time_tag = 0.0;
    out.snapshots.push_back(std::move(first));
    for (std::size_t n = 1; n < traj.size(); ++n) {
        Field step = propagate(u0, traj.times[n], params.j) - q.snapshots[n];
        step.time_tag = traj.times[n];
        out.snapshots.push_back(std::move(step));
    }
    return out;
}

std::pair<Trajectory, IterationReport> picard_solve(const Field& u0, const Params& params,
                                                    const PicardConfig& config) {
    params.validate();
    config.validate();
    if (!u0.finite()) throw DataError("picard: initial data must be finite");

    IterationReport report;
    report.lambda = lambda_of(u0, params.m);
    if (!(report.lambda > 0.0)) {
        throw DataError("picard: non-degeneracy (1.7) fails, lambda = 0");
    }
    report.delta = delta_of(u0, params);
    report.ball_radius = config.ball_radius.value_or(2.0 * config.c1 * report.delta);

    DegeneracyGuard guard = DegeneracyGuard::for_lambda(report.lambda, config.guard_policy);

    const std::size_t nt = config.n_time_steps;
    Trajectory current; // u^k
    current.params = params;
    current.grid = u0.grid;
    current.times.resize(nt + 1);
    current.snapshots.reserve(nt + 1);
    for (std::size_t i = 0; i <= nt; ++i) {
        current.times[i] =
            config.T * (static_cast<double>(i) / static_cast<double>(nt));
        Field snap = propagate(u0, current.times[i], params.j);
        snap.time_tag = current.times[i];
        current.snapshots.push_back(std::move(snap));
    }

    // First correction uses the Duhamel term directly; later corrections use
    // the difference form so that distances keep relative accuracy.
    Trajectory f_traj = current;
    for (std::size_t m = 0; m <= nt; ++m) {
        f_traj.snapshots[m] = evaluate_F(current.snapshots[m], params, guard);
        f_traj.snapshots[m].time_tag = current.times[m];
    }
    Trajectory delta = scaled(-1.0, propagated_time_integral(f_traj, params.j));
    report.distances.push_back(xt_norm(delta).x_t_norm);

    Trajectory previous = current;
    current = shifted(current, delta);

    auto next_increment = [&]() {
        Trajectory g = current;
        for (std::size_t m = 0; m <= nt; ++m) {
            g.snapshots[m] = evaluate_F_difference(current.snapshots[m], previous.snapshots[m],
                                                   delta.snapshots[m], params, guard);
            g.snapshots[m].time_tag = current.times[m];
        }
        return scaled(-1.0, propagated_time_integral(g, params.j));
    };

    while (report.distances.back() >= config.tolerance &&
           report.distances.size() < config.max_iterations) {
        Trajectory inc = next_increment();
        report.distances.push_back(xt_norm(inc).x_t_norm);
        previous = current;
        current = shifted(current, inc);
        delta = std::move(inc);
    }

    report.converged = report.distances.back() < config.tolerance;
    for (std::size_t i = 1; i < report.distances.size(); ++i) {
        if (report.distances[i - 1] > 0.0) {
            report.ratios.push_back(report.distances[i] / report.distances[i - 1]);
        }
    }
    // One extra application measures ||Phi(u*) - u*|| at the returned iterate.
    report.final_residual = xt_norm(next_increment()).x_t_norm;

    report.solution_xt_norm = xt_norm(current).x_t_norm;
    report.within_ball = report.solution_xt_norm <= report.ball_radius;
    report.proximity = check_proximity(current, u0, params.m, report.lambda);
    report.guard_violations = guard.violations;
    report.guard_worst_min = guard.worst_min;
    return {std::move(current), std::move(report)};
}

namespace {

constexpr double kPhiSeriesRadius = 0.5;

Complex phi_series(Complex z, int shift) {
    // sum_{k>=0} z^k / (k + shift)!
    Complex term(1.0, 0.0);
    double fact = 1.0;
    for (int i = 1; i <= shift; ++i) fact *= i;
    term /= fact;
    Complex acc = term;
    for (int k = 1; k <= 18; ++k) {
        term *= z / static_cast<double>(k + shift);
        acc += term;
    }
    return acc;
}

Complex phi1(Complex z) {
    if (std::abs(z) < kPhiSeriesRadius) return phi_series(z, 1);
    return (std::exp(z) - 1.0) / z;
}
Complex phi2(Complex z) {
    if (std::abs(z) < kPhiSeriesRadius) return phi_series(z, 2);
    return (std::exp(z) - 1.0 - z) / (z * z);
}
Complex phi3(Complex z) {
    if (std::abs(z) < kPhiSeriesRadius) return phi_series(z, 3);
    return (std::exp(z) - 1.0 - z - 0.5 * z * z) / (z * z * z);
}

} // namespace

Trajectory reference_solve(const Field& u0, const Params& params, double T,
                           std::size_t n_steps, std::size_t snapshot_stride) {
    params.validate();
    if (!(T > 0.0) || n_steps == 0) throw ParamError("reference_solve: bad T or n_steps");
    if (snapshot_stride == 0 || n_steps % snapshot_stride != 0) {
        throw ParamError("reference_solve: snapshot_stride must divide n_steps");
    }

    const GridSpec& grid = u0.grid;
    const std::size_t n = grid.n_points;
    const double h = T / static_cast<double>(n_steps);

    std::vector<Complex> E(n), E2(n), Q(n), f1(n), f2(n), f3(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long k = grid.mode_index(i);
        const double ph = propagator_phase(k, grid.half_width, h, params.j);
        const double ph2 = propagator_phase(k, grid.half_width, 0.5 * h, params.j);
        E[i] = Complex(std::cos(ph), std::sin(ph));
        E2[i] = Complex(std::cos(ph2), std::sin(ph2));
        // z = h * L_k is purely imaginary; the phi coefficients follow the
        // standard four-stage exponential RK tableau.
        const double xi = grid.wavenumber(i);
        const double rate = (params.j % 2 == 0 ? -1.0 : 1.0) * std::pow(xi, 2 * params.j + 1);
        const Complex z(0.0, h * rate);
        Q[i] = 0.5 * h * phi1(0.5 * z);
        const Complex p1 = phi1(z), p2 = phi2(z), p3 = phi3(z);
        f1[i] = h * (p1 - 3.0 * p2 + 4.0 * p3);
        f2[i] = h * (2.0 * p2 - 4.0 * p3);
        f3[i] = h * (4.0 * p3 - p2);
    }

    DegeneracyGuard guard;
    guard.policy = DegeneracyGuard::Policy::off;

    auto nonlinear_hat = [&](const std::vector<Complex>& state) {
        Field u = from_spectrum(grid, state);
        std::vector<Complex> out = to_spectrum(evaluate_F(u, params, guard));
        for (Complex& v : out) v = -v; // u_t = L u - F(u)
        return out;
    };

    const double initial_l2 = l2_norm(u0);
    const double blow_up_limit = 1e6 * std::max(initial_l2, 1e-30);

    Trajectory out;
    out.params = params;
    out.grid = grid;
    Field first = u0;
    first.time_tag = 0.0;
    out.times.push_back(0.0);
    out.snapshots.push_back(std::move(first));

    std::vector<Complex> v = to_spectrum(u0);
    std::vector<Complex> a(n), b(n), c(n);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        const std::vector<Complex> Nu = nonlinear_hat(v);
        for (std::size_t i = 0; i < n; ++i) a[i] = E2[i] * v[i] + Q[i] * Nu[i];
        const std::vector<Complex> Na = nonlinear_hat(a);
        for (std::size_t i = 0; i < n; ++i) b[i] = E2[i] * v[i] + Q[i] * Na[i];
        const std::vector<Complex> Nb = nonlinear_hat(b);
        for (std::size_t i = 0; i < n; ++i) c[i] = E2[i] * a[i] + Q[i] * (2.0 * Nb[i] - Nu[i]);
        const std::vector<Complex> Nc = nonlinear_hat(c);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = E[i] * v[i] + f1[i] * Nu[i] + f2[i] * (Na[i] + Nb[i]) + f3[i] * Nc[i];
        }

        double sumsq = 0.0;
        for (const Complex& x : v) sumsq += std::norm(x);
        const double l2 = std::sqrt(2.0 * grid.half_width * sumsq);
        if (!(l2 <= blow_up_limit)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "reference_solve: L2 norm %.3e exceeded 1e6 x initial (%.3e) at "
                          "step %zu of %zu; reduce the step size",
                          l2, initial_l2, step, n_steps);
            throw BlowUpError(buf);
        }

        if (step % snapshot_stride == 0) {
            const double t = T * (static_cast<double>(step) / static_cast<double>(n_steps));
            out.times.push_back(t);
            out.snapshots.push_back(from_spectrum(grid, v, t));
        }
    }
    return out;
}

BallConditions ball_conditions(double delta, double lambda, const Params& params, double T,
                               double c_constant) {
    if (!(delta > 0.0) || !(lambda > 0.0) || !(T > 0.0)) {
        throw DataError("ball_conditions: delta, lambda, T must be positive");
    }
    const double s = params.s, j = params.j, a = params.alpha;
    const double r1 = std::pow((1.0 + lambda) / lambda, s - j + 1.0 - a);
    const double r2 = std::pow((1.0 + lambda) / lambda, s - j + 2.0 - a);
    const double troot = std::pow(T, 1.0 / (2.0 * j));

    BallConditions bc;
    bc.c_constant = c_constant;
    bc.lambda = lambda;
    bc.cond_4_11 =
        c_constant * troot * r1 * (std::pow(delta, a) + std::pow(delta, s - j + 1.0));
    bc.cond_4_12 = c_constant * std::sqrt(T) * delta +
                   c_constant * std::sqrt(T) * r1 *
                       (std::pow(delta, a) + std::pow(delta, s - j + 1.0));
    bc.cond_4_20 =
        c_constant * troot * r2 * (std::pow(delta, a) + std::pow(delta, s - j + 2.0));
    bc.all_satisfied =
        bc.cond_4_11 <= 1.0 && bc.cond_4_12 <= 0.5 * lambda && bc.cond_4_20 <= 0.5;
    return bc;
}

ProximityReport check_proximity(const Trajectory& traj, const Field& u0, int m,
                                double lambda) {
    traj.validate();
    if (!(traj.grid == u0.grid)) {
        throw IncompatibleTrajectoriesError("check_proximity: grid mismatch");
    }
    const std::size_t n = u0.size();
    std::vector<double> w(n), wu0(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = u0.grid.x(i);
        w[i] = std::pow(1.0 + x * x, 0.5 * m);
        wu0[i] = w[i] * std::abs(u0.values[i]);
    }

    ProximityReport rep;
    rep.floor_min = std::numeric_limits<double>::infinity();
    bool ceiling_ok = true;
    const double slack = 1e-12 * std::max(lambda, 1.0);
    for (const Field& u : traj.snapshots) {
        for (std::size_t i = 0; i < n; ++i) {
            const double wu = w[i] * std::abs(u.values[i]);
            rep.sup_deviation =
                std::max(rep.sup_deviation, w[i] * std::abs(u.values[i] - u0.values[i]));
            rep.floor_min = std::min(rep.floor_min, wu);
            if (wu > wu0[i] + 0.5 * lambda + slack) ceiling_ok = false;
        }
    }
    rep.within_half_lambda = rep.sup_deviation <= 0.5 * lambda + slack;
    rep.floor_ok = rep.floor_min >= 0.5 * lambda - slack;
    rep.ceiling_ok = ceiling_ok;
    return rep;
}

} // namespace gkdv
