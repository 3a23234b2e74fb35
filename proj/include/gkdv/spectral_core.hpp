#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "gkdv/errors.hpp"

namespace gkdv {

using Complex = std::complex<double>;

/// Uniform periodic grid on [-L, L) standing in for the real line.
///
/// Wavenumbers follow the usual DFT layout: index i maps to the signed
/// integer k = i for i < n/2 and k = i - n otherwise, with xi_k = pi*k/L.
/// The single unpaired Nyquist mode sits at k = -n/2.
struct GridSpec {
    std::size_t n_points = 0;
    double half_width = 0.0; // L
    double dx = 0.0;         // 2L / n_points

    double x(std::size_t i) const { return -half_width + static_cast<double>(i) * dx; }

    long mode_index(std::size_t i) const {
        const long n = static_cast<long>(n_points);
        const long li = static_cast<long>(i);
        return li < n / 2 ? li : li - n;
    }

    double wavenumber(std::size_t i) const {
        return M_PI * static_cast<double>(mode_index(i)) / half_width;
    }

    std::vector<double> wavenumbers() const;

    bool operator==(const GridSpec& other) const {
        return n_points == other.n_points && half_width == other.half_width;
    }
};

GridSpec make_grid(std::size_t n_points, double half_width);

/// Complex samples of u(.) on a grid, optionally tagged with the time they represent.
struct Field {
    GridSpec grid;
    std::vector<Complex> values;
    std::optional<double> time_tag;

    Field() = default;
    Field(GridSpec g, std::vector<Complex> v, std::optional<double> t = std::nullopt)
        : grid(g), values(std::move(v)), time_tag(t) {}

    static Field zero(const GridSpec& g, std::optional<double> t = std::nullopt) {
        return Field(g, std::vector<Complex>(g.n_points, Complex(0.0, 0.0)), t);
    }

    std::size_t size() const { return values.size(); }
    bool finite() const;
};

/// The problem tuple (j, alpha, sign, m, s) of the equation
///   d_t u + d_x^{2j+1} u + sign * |u|^alpha d_x^{2j-1} u = 0.
/// m and s obey m = floor(1/alpha) + 1 and s - j + 1 >= 2jm + 2j + 2.
struct Params {
    int j = 1;
    double alpha = 0.5;
    int sign = 1;
    int m = 3;
    int s = 10;

    static int m_for_alpha(double alpha);
    static Params make(int j, double alpha, int sign, int s);
    void validate() const;
};

// --- Transforms ------------------------------------------------------------
//
// Normalized coefficients: c_k = (1/n) sum_i f_i exp(-2*pi*I*i*k/n), so that
// f_i = sum_k c_k exp(+2*pi*I*i*k/n). Index layout matches GridSpec modes.

std::vector<Complex> to_spectrum(const Field& f);
Field from_spectrum(const GridSpec& grid, const std::vector<Complex>& coeffs,
                    std::optional<double> time_tag = std::nullopt);

// Raw size-n transforms used by internal oversampling helpers.
std::vector<Complex> dft_forward_normalized(const std::vector<Complex>& values);
std::vector<Complex> dft_inverse(const std::vector<Complex>& coeffs);

// --- Operations -------------------------------------------------------------

/// Spectral d_x^order. Order zero returns the field unchanged. The unpaired
/// Nyquist coefficient is zeroed for odd orders.
Field spectral_derivative(const Field& f, int order, int max_order = 64);

/// Exact linear group U_j(t): Fourier multiplier exp(-t (i xi)^{2j+1}), an
/// L^2 isometry. Phases are accumulated in double-double arithmetic and
/// reduced mod 2*pi before evaluation, so group composition holds to roundoff
/// even when t * xi^{2j+1} is large.
Field propagate(const Field& f, double t, int j);

/// Phase of the U_j(t) multiplier at signed mode k, reduced into [-pi, pi]:
/// exp(-t (i xi_k)^{2j+1}) = exp(i * phase).
double propagator_phase(long mode_index, double half_width, double t, int j);

/// Pointwise multiplication by <x>^power = (1 + x^2)^{power/2}.
Field apply_weight(const Field& f, double power);

/// Pointwise multiplication by the sawtooth coordinate x of the grid.
Field apply_coordinate(const Field& f);

/// Right-hand side of the commutation identity
///   U_j(-t) x U_j(t) f = x f + (2j+1) t d_x^{2j} f,
/// evaluated spectrally. Valid for fields with negligible mass near the seam.
Field commuted_operator(const Field& f, double t, int j);

// --- Diagnostics ------------------------------------------------------------

/// Fraction of the l1 spectral mass carried by the top `top_fraction` of |xi|.
double top_mode_mass_fraction(const Field& f, double top_fraction = 0.10);

/// Fraction of the l2 mass carried by the `boundary_fraction` of points
/// nearest the periodic seam at +-L.
double boundary_mass_fraction(const Field& f, double boundary_fraction = 0.05);

/// Throws BoundaryMassError when the seam carries more than `threshold` mass.
void require_boundary_clear(const Field& f, double threshold = 1e-10,
                            double boundary_fraction = 0.05);

// --- Field arithmetic helpers ----------------------------------------------

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double c, const Field& f);
Field operator*(Complex c, const Field& f);

} // namespace gkdv
