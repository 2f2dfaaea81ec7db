#pragma once

// The cyclic family: a position sequence that threads the d x d' grid along
// wrapped diagonals, cut into blocks of k cells. Every block has pairwise
// distinct rows and pairwise distinct columns, so placing the columns of a
// zero-free k x k isometry on a block yields k orthonormal states of Schmidt
// number exactly k. Requires k | d*d' so the blocks tile the grid.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "ebk/errors.hpp"
#include "ebk/isometry.hpp"
#include "ebk/state.hpp"

namespace ebk {

/// Position i = t*d + r maps to (r, (t+r) mod d'); the first d positions are
/// the main diagonal. Covers the grid exactly once.
inline PositionSequence gamma_sequence(std::size_t d, std::size_t dprime) {
    if (d == 0 || dprime == 0) throw invalid_input_error("gamma_sequence: zero dimension");
    if (d > dprime) throw dimension_order_error("gamma_sequence: requires d <= d'");
    PositionSequence seq;
    seq.d = d;
    seq.dprime = dprime;
    seq.positions.reserve(d * dprime);
    for (std::size_t i = 0; i < d * dprime; ++i) {
        const std::size_t t = i / d;
        const std::size_t r = i % d;
        seq.positions.emplace_back(r, (t + r) % dprime);
    }
    return seq;
}

inline bool constant_column_modulus(const CMatrix& x, double tol = 1e-10) {
    const double target = 1.0 / std::sqrt(static_cast<double>(x.rows()));
    for (const auto& z : x.entries())
        if (std::abs(std::abs(z) - target) > tol) return false;
    return true;
}

/// State (m,n) = sum_l x[l][m] |gamma_{n*k+l}>, index m + k*n. With DFT
/// coefficients every Schmidt coefficient is 1/sqrt(k) (a SEBk, and a MEB
/// when k = d); any zero-free isometry gives an EBk.
inline EntangledBasis ebk_cyclic(std::size_t d, std::size_t dprime, std::size_t k,
                                 const Isometry& coeffs) {
    if (k == 0) throw invalid_input_error("ebk_cyclic: k must be positive");
    if (k > d) throw invalid_input_error("ebk_cyclic: requires k <= d");
    if (d > dprime) throw dimension_order_error("ebk_cyclic: requires d <= d'");
    if ((d * dprime) % k != 0)
        throw wrong_path_error("ebk_cyclic: d*d' is not a multiple of k; use the tiling path");
    if (coeffs.rows() != k || coeffs.cols() != k)
        throw invalid_input_error("ebk_cyclic: coefficient isometry must be k x k");
    validate_isometry(coeffs);
    if (!no_zero_entries(coeffs))
        throw degenerate_coefficient_error(
            "ebk_cyclic: a zero coefficient would drop the Schmidt number below k");

    const PositionSequence gamma = gamma_sequence(d, dprime);
    const std::size_t blocks = (d * dprime) / k;
    EntangledBasis basis;
    basis.d = d;
    basis.dprime = dprime;
    basis.k = k;
    basis.family = constant_column_modulus(coeffs.entries)
                       ? (k == d ? BasisFamily::meb : BasisFamily::sebk)
                       : BasisFamily::ebk;
    basis.states.reserve(d * dprime);
    for (std::size_t n = 0; n < blocks; ++n) {
        for (std::size_t m = 0; m < k; ++m) {
            std::vector<Amplitude> amps;
            amps.reserve(k);
            for (std::size_t l = 0; l < k; ++l) {
                const auto& [row, col] = gamma.positions[n * k + l];
                amps.push_back({row, col, coeffs.entries.at(l, m)});
            }
            basis.states.push_back(BipartiteState(d, dprime, std::move(amps)));
        }
    }
    basis.provenance["construction"] = "cyclic";
    basis.provenance["ordering"] = "index = m + k*n, n-major over gamma blocks";
    return basis;
}

/// Computational product basis |i>|j'>, row-major; the k = 1 case.
inline EntangledBasis product_basis(std::size_t d, std::size_t dprime) {
    if (d == 0 || dprime == 0) throw invalid_input_error("product_basis: zero dimension");
    EntangledBasis basis;
    basis.d = d;
    basis.dprime = dprime;
    basis.k = 1;
    basis.family = BasisFamily::pb;
    basis.states.reserve(d * dprime);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < dprime; ++j)
            basis.states.push_back(
                BipartiteState(d, dprime, {{i, j, Complex(1.0, 0.0)}}));
    basis.provenance["construction"] = "product";
    basis.provenance["ordering"] = "row-major computational";
    return basis;
}

} // namespace ebk
