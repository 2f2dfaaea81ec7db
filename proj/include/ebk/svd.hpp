#pragma once

// Singular value decomposition for small dense complex matrices via
// one-sided Jacobi: columns of A are rotated pairwise until mutually
// orthogonal, the same rotations accumulate into V, and the surviving
// column norms are the singular values. Simple and very accurate at the
// sizes used here.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "ebk/errors.hpp"
#include "ebk/matrix.hpp"

namespace ebk {

/// Thin SVD a = U diag(sigma) V^dag with sigma sorted non-increasing,
/// U (rows x r) and V (cols x r) column-orthonormal, r = min(rows, cols).
struct SvdResult {
    std::vector<double> singular_values;
    CMatrix left_vectors;   // U
    CMatrix right_vectors;  // V

    CMatrix reconstruct() const {
        const std::size_t m = left_vectors.rows();
        const std::size_t n = right_vectors.rows();
        const std::size_t r = singular_values.size();
        CMatrix out(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Complex acc(0.0, 0.0);
                for (std::size_t t = 0; t < r; ++t)
                    acc += left_vectors.at(i, t) * singular_values[t] *
                           std::conj(right_vectors.at(j, t));
                out.at(i, j) = acc;
            }
        return out;
    }
};

namespace detail {

// Orthonormal fill-in for columns whose singular value vanished exactly:
// sweep the standard basis, project out the columns already present, keep
// the first candidate with a solid residual.
inline void complete_column(CMatrix& u, std::size_t col) {
    const std::size_t m = u.rows();
    for (std::size_t t = 0; t < m; ++t) {
        std::vector<Complex> cand(m, Complex(0.0, 0.0));
        cand[t] = Complex(1.0, 0.0);
        for (std::size_t j = 0; j < u.cols(); ++j) {
            if (j == col) continue;
            Complex overlap(0.0, 0.0);
            for (std::size_t i = 0; i < m; ++i) overlap += std::conj(u.at(i, j)) * cand[i];
            for (std::size_t i = 0; i < m; ++i) cand[i] -= overlap * u.at(i, j);
        }
        double norm2 = 0.0;
        for (const auto& z : cand) norm2 += std::norm(z);
        if (norm2 > 0.25) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (std::size_t i = 0; i < m; ++i) u.at(i, col) = cand[i] * inv;
            return;
        }
    }
    throw invalid_input_error("svd: failed to complete orthonormal basis");
}

// One-sided Jacobi on a tall (rows >= cols) matrix.
inline SvdResult svd_tall(CMatrix a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    CMatrix v = CMatrix::identity(n);

    const double conv_tol = 1e-14;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq(0.0, 0.0);
                for (std::size_t i = 0; i < m; ++i) {
                    app += std::norm(a.at(i, p));
                    aqq += std::norm(a.at(i, q));
                    apq += std::conj(a.at(i, p)) * a.at(i, q);
                }
                const double off = std::abs(apq);
                if (off <= conv_tol * std::sqrt(app * aqq) || off == 0.0) continue;
                rotated = true;

                // Absorb the phase of <a_p|a_q> so a real Jacobi rotation applies.
                const Complex phase = apq / off;
                const double zeta = (aqq - app) / (2.0 * off);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                for (std::size_t i = 0; i < m; ++i) {
                    const Complex ap = a.at(i, p);
                    const Complex aq = a.at(i, q);
                    a.at(i, p) = c * ap - s * std::conj(phase) * aq;
                    a.at(i, q) = s * phase * ap + c * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vp = v.at(i, p);
                    const Complex vq = v.at(i, q);
                    v.at(i, p) = c * vp - s * std::conj(phase) * vq;
                    v.at(i, q) = s * phase * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(a.at(i, j));
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    SvdResult out;
    out.singular_values.resize(n);
    out.left_vectors = CMatrix(m, n);
    out.right_vectors = CMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.singular_values[j] = norms[src];
        for (std::size_t i = 0; i < n; ++i) out.right_vectors.at(i, j) = v.at(i, src);
        if (norms[src] > 0.0) {
            const double inv = 1.0 / norms[src];
            for (std::size_t i = 0; i < m; ++i) out.left_vectors.at(i, j) = a.at(i, src) * inv;
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (out.singular_values[j] == 0.0) complete_column(out.left_vectors, j);
    return out;
}

} // namespace detail

inline SvdResult svd(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw invalid_input_error("svd: empty matrix");
    if (!a.all_finite()) throw invalid_input_error("svd: non-finite entry");
    if (a.rows() >= a.cols()) return detail::svd_tall(a);
    SvdResult t = detail::svd_tall(a.adjoint());
    std::swap(t.left_vectors, t.right_vectors);
    return t;
}

inline std::vector<double> singular_values(const CMatrix& a) {
    return svd(a).singular_values;
}

} // namespace ebk
