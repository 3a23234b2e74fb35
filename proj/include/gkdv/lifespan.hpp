#pragma once

#include "gkdv/spectral_core.hpp"

namespace gkdv {

/// Lower bounds for the existence time, in both published forms.
///
/// Statement form: T^{1/2j} >= c*lambda / (delta * (1 + delta^kappa * R))
/// Proof form:     T^{1/2j} >= c*lambda / (delta * (1 + (delta^alpha + delta^{s-j+2}) * R))
/// with R = ((1+lambda)/lambda)^{s-j+2-alpha} and kappa = s-j+2 when
/// delta >= 1, kappa = alpha otherwise. The two bracket each other within a
/// factor 2^{2j}.
struct LifespanResult {
    double t_statement = 0.0;
    double t_proof = 0.0;
    double kappa = 0.0;
    double c_used = 0.0;
};

/// m(alpha) = floor(1/alpha) + 1 for alpha in (0, 1).
int m_of_alpha(double alpha);

/// Smallest integer s satisfying s - j + 1 >= 2jm + 2j + 2.
int min_regularity(int j, int m);

LifespanResult lifespan_lower_bound(double delta, double lambda, const Params& params, double c);

} // namespace gkdv
