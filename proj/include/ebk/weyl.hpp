#pragma once

// Weyl shift-and-phase operators and the maximally entangled bases their
// action on the seed |Omega_00> = (1/sqrt d) sum_i |i>|i'> generates.
//
// Variants, with xi = exp(2*pi*i/d) and index shifts taken mod the target
// dimension:
//   check:  W|i> = xi^{m(i-n)} |i-n>      (d x d, the textbook form)
//   hat:    W|i> = xi^{m i}    |i-n>      (d x d, simplified phases)
//   tilde:  W|i'> = xi^{m i}   |(i-n)'>   (acts on the d'-dimensional side)

#include <cmath>
#include <cstddef>
#include <string>

#include "ebk/errors.hpp"
#include "ebk/matrix.hpp"
#include "ebk/state.hpp"

namespace ebk {

enum class WeylVariant { check, hat, tilde };

struct WeylOp {
    WeylVariant variant = WeylVariant::hat;
    std::size_t m = 0;         // phase index, 0 <= m < phase_dim
    std::size_t n = 0;         // shift index, 0 <= n < dim
    std::size_t dim = 0;       // dimension the operator acts on
    std::size_t phase_dim = 0; // d in xi = exp(2*pi*i/d); equals dim except for tilde
};

inline CMatrix weyl_matrix(const WeylOp& op) {
    if (op.dim == 0 || op.phase_dim == 0) throw invalid_input_error("weyl_matrix: zero dimension");
    if (op.m >= op.phase_dim || op.n >= op.dim)
        throw invalid_input_error("weyl_matrix: index out of range");
    CMatrix w(op.dim, op.dim);
    for (std::size_t i = 0; i < op.dim; ++i) {
        const std::size_t target = (i + op.dim - op.n) % op.dim;
        const std::size_t exponent = (op.variant == WeylVariant::check) ? target : i;
        w.at(target, i) = unit_phase(static_cast<long long>(op.m * exponent),
                                     static_cast<long long>(op.phase_dim));
    }
    return w;
}

namespace detail {

inline BipartiteState meb_state(std::size_t d, std::size_t dprime, std::size_t m,
                                std::size_t n) {
    std::vector<Amplitude> amps;
    amps.reserve(d);
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        const Complex phase = unit_phase(static_cast<long long>(m * i), static_cast<long long>(d));
        if (d == dprime) {
            // (hat W_{m,n} (x) 1)|Omega_00>: row shifts, column i keeps the phase.
            amps.push_back({(i + d - n) % d, i, phase * w});
        } else {
            // (1 (x) tilde W_{m,n})|Omega_00>: the second factor shifts.
            amps.push_back({i, (i + dprime - n) % dprime, phase * w});
        }
    }
    return BipartiteState(d, dprime, std::move(amps));
}

} // namespace detail

/// Maximally entangled basis of C^d (x) C^d', d <= d'. All d*d' states have
/// Schmidt number d with every coefficient 1/sqrt(d). State (m,n) sits at
/// index m + d*n.
inline EntangledBasis meb(std::size_t d, std::size_t dprime) {
    if (d < 2) throw invalid_input_error("meb: d must be at least 2");
    if (d > dprime) throw dimension_order_error("meb: requires d <= d'");
    EntangledBasis basis;
    basis.d = d;
    basis.dprime = dprime;
    basis.k = d;
    basis.family = BasisFamily::meb;
    basis.states.reserve(d * dprime);
    for (std::size_t n = 0; n < dprime; ++n)
        for (std::size_t m = 0; m < d; ++m)
            basis.states.push_back(detail::meb_state(d, dprime, m, n));
    basis.provenance["construction"] = (d == dprime) ? "weyl-hat" : "weyl-tilde";
    basis.provenance["ordering"] = "index = m + d*n";
    return basis;
}

/// check-variant MEB state, kept for cross-validation: it matches the hat
/// variant up to a global phase xi^{-mn} per state.
inline BipartiteState meb_state_check_variant(std::size_t d, std::size_t m, std::size_t n) {
    std::vector<Amplitude> amps;
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t target = (i + d - n) % d;
        amps.push_back({target, i,
                        unit_phase(static_cast<long long>(m * target), static_cast<long long>(d)) * w});
    }
    return BipartiteState(d, d, std::move(amps));
}

} // namespace ebk
