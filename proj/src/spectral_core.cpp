#include "gkdv/spectral_core.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

namespace gkdv {

namespace {

// --- FFTW plan cache ---------------------------------------------------------
//
// Plans are created once per size with FFTW_ESTIMATE | FFTW_UNALIGNED and then
// executed on caller buffers through fftw_execute_dft, which is safe to call
// concurrently. Planning itself is serialized by the mutex.

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

PlanPair& plans_for(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<Complex> scratch_in(n), scratch_out(n);
    auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
    PlanPair p;
    p.forward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    auto [pos, inserted] = cache.emplace(n, p);
    (void)inserted;
    return pos->second;
}

void execute(fftw_plan plan, const std::vector<Complex>& in, std::vector<Complex>& out) {
    out.resize(in.size());
    auto* pin = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, pin, pout);
}

// --- Double-double arithmetic for multiplier phases --------------------------
//
// t * xi^{2j+1} can exceed 1e11 rad; a plain double product loses ~1e-5 of
// absolute phase there, which breaks the group law at the 1e-12 level. The
// phase is therefore accumulated in ~31 significant digits and reduced mod
// 2*pi before sin/cos.

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul_d(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div_d(DD a, double b) {
    const double q1 = a.hi / b;
    DD r = two_prod(q1, b);
    const double q2 = ((a.hi - r.hi) - r.lo + a.lo) / b;
    return quick_two_sum(q1, q2);
}

constexpr DD DD_PI = {3.141592653589793116e+00, 1.224646799147353207e-16};
constexpr DD DD_TWO_PI = {6.283185307179586232e+00, 2.449293598294706414e-16};

// Reduce a double-double angle into [-pi, pi] and return it as a double.
inline double dd_mod_two_pi(DD theta) {
    const double k = std::nearbyint(theta.hi / DD_TWO_PI.hi);
    DD r = dd_add(theta, dd_mul_d(DD_TWO_PI, -k));
    if (r.hi > DD_PI.hi) r = dd_add(r, dd_mul_d(DD_TWO_PI, -1.0));
    if (r.hi < -DD_PI.hi) r = dd_add(r, DD_TWO_PI);
    return r.hi + r.lo;
}

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

// i^order as a complex unit, used for (i xi)^order = i^order * xi^order.
Complex i_power(int order) {
    switch (order & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace

// Phase of the multiplier exp(-t (i xi)^{2j+1}) = exp(i * phase) at one mode:
// (i xi)^{2j+1} = i (-1)^j xi^{2j+1}, so phase = -(-1)^j t xi^{2j+1}.
double propagator_phase(long mode_index, double half_width, double t, int j) {
    if (mode_index == 0 || t == 0.0) return 0.0;
    DD xi = dd_div_d(dd_mul_d(DD_PI, static_cast<double>(mode_index)), half_width);
    DD pow = xi;
    for (int p = 1; p < 2 * j + 1; ++p) pow = dd_mul(pow, xi);
    DD theta = dd_mul_d(pow, (j % 2 == 0) ? -t : t);
    return dd_mod_two_pi(theta);
}

std::vector<double> GridSpec::wavenumbers() const {
    std::vector<double> out(n_points);
    for (std::size_t i = 0; i < n_points; ++i) out[i] = wavenumber(i);
    return out;
}

GridSpec make_grid(std::size_t n_points, double half_width) {
    if (n_points < 16 || !is_power_of_two(n_points)) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "invalid grid: n_points=%zu must be a power of two >= 16", n_points);
        throw InvalidGridError(buf);
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw InvalidGridError("invalid grid: half_width must be positive and finite");
    }
    GridSpec g;
    g.n_points = n_points;
    g.half_width = half_width;
    g.dx = 2.0 * half_width / static_cast<double>(n_points);
    return g;
}

bool Field::finite() const {
    for (const Complex& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

int Params::m_for_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ParamError("alpha must lie in (0,1)");
    }
    double inv = 1.0 / alpha;
    // Snap to the nearest integer when 1/alpha is within representation noise
    // of it, so alpha = 0.2 yields m = 6 rather than 5.
    const double rounded = std::nearbyint(inv);
    if (std::abs(inv - rounded) <= 1e-12 * rounded) inv = rounded;
    return static_cast<int>(std::floor(inv)) + 1;
}

Params Params::make(int j, double alpha, int sign, int s) {
    Params p;
    p.j = j;
    p.alpha = alpha;
    p.sign = sign;
    p.m = m_for_alpha(alpha);
    p.s = s;
    p.validate();
    return p;
}

void Params::validate() const {
    if (j < 1) throw ParamError("j must be a positive integer");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParamError("alpha must lie in (0,1)");
    if (sign != 1 && sign != -1) throw ParamError("sign must be +1 or -1");
    if (m != m_for_alpha(alpha)) {
        throw ParamError("m must equal floor(1/alpha) + 1");
    }
    if (s - j + 1 < 2 * j * m + 2 * j + 2) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "s=%d too small: the regularity constraint s - j + 1 >= 2jm + 2j + 2 "
                      "requires s >= %d for j=%d, m=%d",
                      s, 2 * j * m + 3 * j + 1, j, m);
        throw ParamError(buf);
    }
}

std::vector<Complex> dft_forward_normalized(const std::vector<Complex>& values) {
    const std::size_t n = values.size();
    std::vector<Complex> out;
    execute(plans_for(n).forward, values, out);
    const double inv = 1.0 / static_cast<double>(n);
    for (Complex& c : out) c *= inv;
    return out;
}

std::vector<Complex> dft_inverse(const std::vector<Complex>& coeffs) {
    std::vector<Complex> out;
    execute(plans_for(coeffs.size()).backward, coeffs, out);
    return out;
}

std::vector<Complex> to_spectrum(const Field& f) {
    return dft_forward_normalized(f.values);
}

Field from_spectrum(const GridSpec& grid, const std::vector<Complex>& coeffs,
                    std::optional<double> time_tag) {
    if (coeffs.size() != grid.n_points) {
        throw Error("from_spectrum: coefficient count does not match grid");
    }
    return Field(grid, dft_inverse(coeffs), time_tag);
}

Field spectral_derivative(const Field& f, int order, int max_order) {
    if (order < 0 || order > max_order) {
        throw Error("spectral_derivative: order out of range");
    }
    if (order == 0) return f;

    const std::size_t n = f.grid.n_points;
    std::vector<Complex> c = to_spectrum(f);
    const Complex unit = i_power(order);
    const bool odd = (order % 2) != 0;
    for (std::size_t i = 0; i < n; ++i) {
        const long k = f.grid.mode_index(i);
        if (odd && k == -static_cast<long>(n) / 2) {
            c[i] = 0.0; // unpaired Nyquist mode has no symmetric partner
            continue;
        }
        const double xi = f.grid.wavenumber(i);
        c[i] *= unit * std::pow(xi, order);
    }
    return from_spectrum(f.grid, c, f.time_tag);
}

Field propagate(const Field& f, double t, int j) {
    if (j < 1) throw ParamError("propagate: j must be a positive integer");
    if (t == 0.0) return f;

    std::vector<Complex> c = to_spectrum(f);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double phase = propagator_phase(f.grid.mode_index(i), f.grid.half_width, t, j);
        c[i] *= Complex(std::cos(phase), std::sin(phase));
    }
    std::optional<double> tag = f.time_tag;
    if (tag) tag = *tag + t;
    return from_spectrum(f.grid, c, tag);
}

Field apply_weight(const Field& f, double power) {
    if (power == 0.0) return f;
    Field out = f;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double x = f.grid.x(i);
        out.values[i] *= std::pow(1.0 + x * x, 0.5 * power);
    }
    return out;
}

Field apply_coordinate(const Field& f) {
    Field out = f;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] *= f.grid.x(i);
    return out;
}

Field commuted_operator(const Field& f, double t, int j) {
    Field xf = apply_coordinate(f);
    if (t == 0.0) return xf;
    Field d = spectral_derivative(f, 2 * j);
    const double c = (2.0 * j + 1.0) * t;
    for (std::size_t i = 0; i < xf.size(); ++i) xf.values[i] += c * d.values[i];
    return xf;
}

double top_mode_mass_fraction(const Field& f, double top_fraction) {
    const std::vector<Complex> c = to_spectrum(f);
    const std::size_t n = c.size();
    const long cutoff = static_cast<long>((1.0 - top_fraction) * static_cast<double>(n / 2));
    double total = 0.0, top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(c[i]);
        total += a;
        if (std::labs(f.grid.mode_index(i)) >= cutoff) top += a;
    }
    return total > 0.0 ? top / total : 0.0;
}

double boundary_mass_fraction(const Field& f, double boundary_fraction) {
    const std::size_t n = f.size();
    const std::size_t band = std::max<std::size_t>(1, static_cast<std::size_t>(boundary_fraction * n));
    double total = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::norm(f.values[i]);
        total += a;
        // points nearest the seam: first band/2 and last band/2 samples
        if (i < band / 2 || i >= n - (band - band / 2)) edge += a;
    }
    return total > 0.0 ? edge / total : 0.0;
}

void require_boundary_clear(const Field& f, double threshold, double boundary_fraction) {
    const double frac = boundary_mass_fraction(f, boundary_fraction);
    if (frac > threshold) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "boundary mass fraction %.3e exceeds threshold %.3e; "
                      "field is not negligible near the periodic seam",
                      frac, threshold);
        throw BoundaryMassError(buf);
    }
}

Field operator+(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw IncompatibleTrajectoriesError("field grids differ");
    Field out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw IncompatibleTrajectoriesError("field grids differ");
    Field out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

Field operator*(double c, const Field& f) {
    Field out = f;
    for (Complex& v : out.values) v *= c;
    return out;
}

Field operator*(Complex c, const Field& f) {
    Field out = f;
    for (Complex& v : out.values) v *= c;
    return out;
}

} // namespace gkdv
