#pragma once

// Dense complex matrices at small sizes: products, adjoints, tensor products,
// Gram matrices. Everything is a value; no operation mutates its inputs.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "ebk/errors.hpp"

namespace ebk {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// exp(2*pi*i * numer/denom).
inline Complex unit_phase(long long numer, long long denom) {
    const double arg = 2.0 * std::numbers::pi * static_cast<double>(numer) /
                       static_cast<double>(denom);
    return Complex(std::cos(arg), std::sin(arg));
}

/// Row-major complex matrix. Entries are stored densely; rows*cols stays
/// small (a few hundred at most) throughout this library.
class CMatrix {
public:
    CMatrix() = default;

    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}

    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw invalid_input_error("CMatrix: entry count does not match rows*cols");
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Complex(1.0, 0.0);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<Complex>& entries() const { return entries_; }
    std::vector<Complex>& entries() { return entries_; }

    bool all_finite() const {
        for (const auto& z : entries_)
            if (!is_finite(z)) return false;
        return true;
    }

    CMatrix adjoint() const {
        CMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = std::conj(at(r, c));
        return out;
    }

    CMatrix transpose() const {
        CMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
        return out;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : entries_) m = std::max(m, std::abs(z));
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

inline CMatrix multiply(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw invalid_input_error("multiply: inner dimensions differ");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const Complex aij = a.at(i, t);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) += aij * b.at(t, j);
        }
    return out;
}

/// Standard Kronecker product; dimensions multiply.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex f = a.at(ar, ac);
            if (f == Complex(0.0, 0.0)) continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out.at(ar * b.rows() + br, ac * b.cols() + bc) = f * b.at(br, bc);
        }
    return out;
}

/// Conjugate inner product <a|b> accumulated in ascending index order.
/// The summation order is fixed so reports are bit-stable.
inline Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw invalid_input_error("inner_product: length mismatch");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

/// Gram matrix G[i][j] = <v_i|v_j>; Hermitian by construction.
inline CMatrix gram(const std::vector<std::vector<Complex>>& vectors) {
    const std::size_t n = vectors.size();
    for (const auto& v : vectors)
        if (v.size() != vectors.front().size())
            throw invalid_input_error("gram: vectors must share one length");
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.at(i, j) = inner_product(vectors[i], vectors[j]);
    return g;
}

inline double max_deviation_from_identity(const CMatrix& g) {
    double dev = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const Complex want = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            dev = std::max(dev, std::abs(g.at(i, j) - want));
        }
    return dev;
}

} // namespace ebk
