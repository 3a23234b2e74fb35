#pragma once

#include <limits>

#include "gkdv/spectral_core.hpp"

namespace gkdv {

/// Lower-bound check on <x>^m |u| before evaluating the fractional power.
/// The contraction argument needs <x>^m |u| >= lambda/2; intermediate Picard
/// iterates may graze it, so the default policy only records violations.
struct DegeneracyGuard {
    enum class Policy { error, warn, off };

    double lambda_floor = 0.0;
    Policy policy = Policy::warn;

    // violation tally, updated by evaluate_F
    mutable std::size_t calls = 0;
    mutable std::size_t violations = 0;
    mutable double worst_min = std::numeric_limits<double>::infinity();

    static DegeneracyGuard for_lambda(double lambda, Policy policy = Policy::warn) {
        DegeneracyGuard g;
        g.lambda_floor = 0.5 * lambda * 0.999;
        g.policy = policy;
        return g;
    }
};

/// F(u) = sign * |u|^alpha * d_x^{2j-1} u. The derivative and the product are
/// formed on a 2x zero-padded grid and truncated back; |u|^alpha is the real
/// alpha-power of the complex modulus, with 0^alpha = 0.
Field evaluate_F(const Field& u, const Params& params, const DegeneracyGuard& guard);

/// F(u) - F(v) evaluated in difference form,
///   sign * ( |u|^a d^{2j-1}(u - v) + (|u|^a - |v|^a) d^{2j-1} v ),
/// with |u|^a - |v|^a computed via expm1/log1p from the exact increment
/// diff = u - v. Every term scales with diff, so the result keeps relative
/// accuracy long after fl(F(u)) - fl(F(v)) would be pure cancellation noise.
Field evaluate_F_difference(const Field& u, const Field& v, const Field& diff,
                            const Params& params, const DegeneracyGuard& guard);

} // namespace gkdv
