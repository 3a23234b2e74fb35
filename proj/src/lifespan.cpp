#include "gkdv/lifespan.hpp"

#include <cmath>

namespace gkdv {

int m_of_alpha(double alpha) {
    return Params::m_for_alpha(alpha); // throws ParamError outside (0,1)
}

int min_regularity(int j, int m) {
    if (j < 1 || m < 1) throw ParamError("min_regularity: j and m must be positive");
    return 2 * j * m + 3 * j + 1;
}

LifespanResult lifespan_lower_bound(double delta, double lambda, const Params& params,
                                    double c) {
    if (!(lambda > 0.0)) throw DataError("lifespan: degenerate data, lambda must be positive");
    if (delta < lambda) throw DataError("lifespan: inconsistent data, delta < lambda");
    if (!(c > 0.0 && c <= 1.0)) throw ParamError("lifespan: c must lie in (0, 1]");

    const double s = params.s;
    const double j = params.j;
    const double a = params.alpha;
    const double kappa = delta >= 1.0 ? s - j + 2.0 : a;
    const double ratio_pow = std::pow((1.0 + lambda) / lambda, s - j + 2.0 - a);

    LifespanResult r;
    r.kappa = kappa;
    r.c_used = c;
    const double root_statement =
        c * lambda / (delta * (1.0 + std::pow(delta, kappa) * ratio_pow));
    const double root_proof =
        c * lambda /
        (delta * (1.0 + (std::pow(delta, a) + std::pow(delta, s - j + 2.0)) * ratio_pow));
    r.t_statement = std::pow(root_statement, 2.0 * j);
    r.t_proof = std::pow(root_proof, 2.0 * j);
    return r;
}

} // namespace gkdv
