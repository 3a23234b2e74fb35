#include "gkdv/nonlinearity.hpp"

#include <cmath>
#include <cstdio>

namespace gkdv {

namespace {

// Zero-pad normalized coefficients from n to 2n modes. The unpaired Nyquist
// coefficient is split evenly between +n/2 and -n/2 so real fields stay real.
std::vector<Complex> upsample2(const std::vector<Complex>& c) {
    const std::size_t n = c.size();
    std::vector<Complex> out(2 * n, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < n / 2; ++k) out[k] = c[k];
    for (std::size_t k = n / 2 + 1; k < n; ++k) out[k + n] = c[k];
    out[n / 2] = 0.5 * c[n / 2];
    out[2 * n - n / 2] = 0.5 * c[n / 2];
    return out;
}

// Truncate normalized coefficients from 2n back to n modes, folding the two
// +-n/2 slots onto the coarse Nyquist mode.
std::vector<Complex> downsample2(const std::vector<Complex>& c2) {
    const std::size_t n = c2.size() / 2;
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n / 2; ++k) out[k] = c2[k];
    for (std::size_t k = n / 2 + 1; k < n; ++k) out[k] = c2[k + n];
    out[n / 2] = c2[n / 2] + c2[2 * n - n / 2];
    return out;
}

// (i xi)^order applied in place on a normalized coarse spectrum.
void apply_derivative_multiplier(std::vector<Complex>& c, const GridSpec& grid, int order) {
    if (order == 0) return;
    static const Complex units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex unit = units[order & 3];
    const bool odd = (order % 2) != 0;
    const long nyq = -static_cast<long>(grid.n_points) / 2;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const long k = grid.mode_index(i);
        if (odd && k == nyq) {
            c[i] = 0.0;
            continue;
        }
        c[i] *= unit * std::pow(grid.wavenumber(i), order);
    }
}

double guard_check(const Field& u, int m, const DegeneracyGuard& guard, const char* what) {
    double floor_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = u.grid.x(i);
        floor_min = std::min(floor_min, std::pow(1.0 + x * x, 0.5 * m) * std::abs(u.values[i]));
    }
    guard.calls += 1;
    guard.worst_min = std::min(guard.worst_min, floor_min);
    if (guard.policy != DegeneracyGuard::Policy::off && floor_min < guard.lambda_floor) {
        guard.violations += 1;
        if (guard.policy == DegeneracyGuard::Policy::error) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "degeneracy: min <x>^m|%s| = %.6e fell below the floor %.6e",
                          what, floor_min, guard.lambda_floor);
            throw DegeneracyError(buf);
        }
    }
    return floor_min;
}

} // namespace

Field evaluate_F(const Field& u, const Params& params, const DegeneracyGuard& guard) {
    guard_check(u, params.m, guard, "u");

    std::vector<Complex> cu = to_spectrum(u);
    std::vector<Complex> cd = cu;
    apply_derivative_multiplier(cd, u.grid, 2 * params.j - 1);

    const std::vector<Complex> uf = dft_inverse(upsample2(cu));
    const std::vector<Complex> df = dft_inverse(upsample2(cd));

    std::vector<Complex> wf(uf.size());
    for (std::size_t i = 0; i < uf.size(); ++i) {
        wf[i] = std::pow(std::abs(uf[i]), params.alpha) * df[i];
    }
    std::vector<Complex> cw = downsample2(dft_forward_normalized(wf));
    Field out = from_spectrum(u.grid, cw, u.time_tag);
    if (params.sign != 1) out = -1.0 * out;
    return out;
}

Field evaluate_F_difference(const Field& u, const Field& v, const Field& diff,
                            const Params& params, const DegeneracyGuard& guard) {
    if (!(u.grid == v.grid) || !(u.grid == diff.grid)) {
        throw IncompatibleTrajectoriesError("evaluate_F_difference: grid mismatch");
    }
    guard_check(u, params.m, guard, "u");
    guard_check(v, params.m, guard, "v");

    std::vector<Complex> cu = to_spectrum(u);
    std::vector<Complex> cv = to_spectrum(v);
    std::vector<Complex> cdiff = to_spectrum(diff);
    std::vector<Complex> cdv = cv;
    std::vector<Complex> cddiff = cdiff;
    apply_derivative_multiplier(cdv, u.grid, 2 * params.j - 1);
    apply_derivative_multiplier(cddiff, u.grid, 2 * params.j - 1);

    const std::vector<Complex> uf = dft_inverse(upsample2(cu));
    const std::vector<Complex> vf = dft_inverse(upsample2(cv));
    const std::vector<Complex> dfine = dft_inverse(upsample2(cdiff));
    const std::vector<Complex> dvf = dft_inverse(upsample2(cdv));
    const std::vector<Complex> ddf = dft_inverse(upsample2(cddiff));

    const double a = params.alpha;
    std::vector<Complex> wf(uf.size());
    for (std::size_t i = 0; i < uf.size(); ++i) {
        const double mu = std::abs(uf[i]);
        const double mv = std::abs(vf[i]);
        // |u|^a - |v|^a with every factor proportional to the increment.
        double pd;
        if (mu == 0.0 || mv == 0.0) {
            pd = std::pow(mu, a) - std::pow(mv, a);
        } else {
            const double dm =
                (dfine[i] * std::conj(uf[i] + vf[i])).real() / (mu + mv); // |u| - |v|
            const double r = dm / mv;
            pd = r > -1.0 ? std::pow(mv, a) * std::expm1(a * std::log1p(r))
                          : std::pow(mu, a) - std::pow(mv, a);
        }
        wf[i] = std::pow(mu, a) * ddf[i] + pd * dvf[i];
    }
    std::vector<Complex> cw = downsample2(dft_forward_normalized(wf));
    Field out = from_spectrum(u.grid, cw, u.time_tag);
    if (params.sign != 1) out = -1.0 * out;
    return out;
}

} // namespace gkdv
