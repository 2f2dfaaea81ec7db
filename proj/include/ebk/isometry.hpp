#pragma once

// Coefficient-matrix suppliers. An isometric matrix X (X^dag X = I) without
// zero entries feeds the cyclic construction; its columns become the state
// coefficients. The Theorem-3-style predicate classifies the columns of a
// square isometry by whether a diagonal or an L-shaped placement of them
// yields equal Schmidt coefficients 1/sqrt(k).

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ebk/errors.hpp"
#include "ebk/matrix.hpp"

namespace ebk {

enum class IsometrySource { dft, od, ud, file };
enum class CoefficientField { complex_field, real_field };

struct Isometry {
    CMatrix entries;
    IsometrySource source = IsometrySource::file;
    CoefficientField field = CoefficientField::complex_field;

    std::size_t rows() const { return entries.rows(); }
    std::size_t cols() const { return entries.cols(); }

    double isometry_deviation() const {
        return max_deviation_from_identity(multiply(entries.adjoint(), entries));
    }
};

inline void validate_isometry(const Isometry& x, double tol = 1e-10) {
    if (!x.entries.all_finite()) throw invalid_input_error("isometry: non-finite entry");
    if (x.rows() < x.cols()) throw invalid_input_error("isometry: needs rows >= cols");
    if (x.isometry_deviation() > tol)
        throw invalid_input_error("isometry: X^dag X deviates from identity beyond tolerance");
}

/// Unitary DFT matrix, entries exp(2*pi*i*p*q/n)/sqrt(n); no zero entries.
inline Isometry dft(std::size_t n) {
    if (n == 0) throw invalid_input_error("dft: size must be positive");
    Isometry x;
    x.entries = CMatrix(n, n);
    x.source = IsometrySource::dft;
    const double w = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            x.entries.at(p, q) = unit_phase(static_cast<long long>((p * q) % n),
                                            static_cast<long long>(n)) * w;
    return x;
}

/// Real orthogonal matrix (1/d)(2J - dI): off-diagonal 2/d, diagonal (2-d)/d.
/// Zero-free only for d >= 3 (at d = 2 the diagonal vanishes).
inline Isometry od(std::size_t d) {
    if (d <= 2)
        throw degenerate_coefficient_error(
            "od: formula yields zero entries for d <= 2; supply a custom rotation instead");
    Isometry x;
    x.entries = CMatrix(d, d);
    x.source = IsometrySource::od;
    x.field = CoefficientField::real_field;
    const double off = 2.0 / static_cast<double>(d);
    const double diag = (2.0 - static_cast<double>(d)) / static_cast<double>(d);
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q)
            x.entries.at(p, q) = Complex(p == q ? diag : off, 0.0);
    return x;
}

/// u_d = i * o_d, a zero-free unitary.
inline Isometry ud(std::size_t d) {
    Isometry x = od(d);
    x.source = IsometrySource::ud;
    x.field = CoefficientField::complex_field;
    for (auto& z : x.entries.entries()) z *= Complex(0.0, 1.0);
    return x;
}

inline bool no_zero_entries(const Isometry& x, double tol = 1e-10) {
    for (const auto& z : x.entries.entries())
        if (std::abs(z) <= tol) return false;
    return true;
}

/// Per-column verdicts for the equal-coefficient placement conditions on a
/// square isometry of size k+r, 1 <= r <= k-1. A column passes if either
///   1) it has exactly k nonzero entries, each of modulus 1/sqrt(k)
///      (diagonal placement), or
///   2) its first k-1 entries have modulus 1/sqrt(k) and the tail satisfies
///      sum_{i>=k} |x_ij|^2 = 1/k (L-shaped placement).
struct ColumnVerdict {
    bool diagonal_condition = false; // condition 1
    bool l_shape_condition = false;  // condition 2
    bool passes() const { return diagonal_condition || l_shape_condition; }
};

struct Theorem3Report {
    std::size_t k = 0;
    std::vector<ColumnVerdict> columns;
    bool overall = false;
};

inline Theorem3Report theorem3_predicate(const Isometry& x, std::size_t k, double tol = 1e-10) {
    const std::size_t n = x.rows();
    if (n != x.cols() || n <= k || n >= 2 * k)
        throw invalid_input_error("theorem3_predicate: matrix must be square of size k+r, 1 <= r <= k-1");
    const double target = 1.0 / std::sqrt(static_cast<double>(k));
    Theorem3Report report;
    report.k = k;
    report.columns.resize(n);
    report.overall = true;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t nonzero = 0;
        bool moduli_ok = true;
        bool head_ok = true;
        double tail = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = std::abs(x.entries.at(i, j));
            if (a > tol) {
                ++nonzero;
                if (std::abs(a - target) > tol) moduli_ok = false;
            }
            if (i + 1 <= k - 1 && std::abs(a - target) > tol) head_ok = false;
            if (i + 1 >= k) tail += a * a;
        }
        ColumnVerdict& v = report.columns[j];
        v.diagonal_condition = (nonzero == k) && moduli_ok;
        v.l_shape_condition = head_ok && std::abs(tail - 1.0 / static_cast<double>(k)) <= tol;
        if (!v.passes()) report.overall = false;
    }
    return report;
}

} // namespace ebk
