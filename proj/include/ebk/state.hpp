#pragma once

// Bipartite states as sparse amplitude lists over a d x d' computational
// grid, and the one-to-one correspondence with d x d' coefficient matrices:
// |psi> = sum a_kl |k>|l'>  <->  A = [a_kl], with <psi|phi> = Tr(A^dag B)
// and the Schmidt number of |psi> equal to rank(A).

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ebk/errors.hpp"
#include "ebk/matrix.hpp"
#include "ebk/svd.hpp"

namespace ebk {

inline constexpr double kNormTol = 1e-12;
inline constexpr double kDefaultRankTol = 1e-8;   // sigma_k must exceed this
inline constexpr double kDefaultZeroTol = 1e-10;  // sigma_{k+1} must stay below this

struct Amplitude {
    std::size_t row = 0;
    std::size_t col = 0;
    Complex value;
};

/// Normalized pure state of C^d (x) C^d'. Amplitudes are kept sorted by
/// (row, col) and unique; the constructions emit k-sparse states.
class BipartiteState {
public:
    BipartiteState(std::size_t d, std::size_t dprime, std::vector<Amplitude> amplitudes,
                   bool check_norm = true)
        : d_(d), dprime_(dprime), amplitudes_(std::move(amplitudes)) {
        if (d_ == 0 || dprime_ == 0) throw invalid_input_error("BipartiteState: zero dimension");
        std::stable_sort(amplitudes_.begin(), amplitudes_.end(),
                         [](const Amplitude& a, const Amplitude& b) {
                             return a.row != b.row ? a.row < b.row : a.col < b.col;
                         });
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            const auto& a = amplitudes_[i];
            if (a.row >= d_ || a.col >= dprime_)
                throw invalid_input_error("BipartiteState: amplitude index out of range");
            if (!is_finite(a.value))
                throw invalid_input_error("BipartiteState: non-finite amplitude");
            if (i > 0 && amplitudes_[i - 1].row == a.row && amplitudes_[i - 1].col == a.col)
                throw invalid_input_error("BipartiteState: duplicate amplitude position");
        }
        if (check_norm && std::abs(norm_squared() - 1.0) > kNormTol)
            throw normalization_error("BipartiteState: squared norm deviates from 1");
    }

    std::size_t d() const { return d_; }
    std::size_t dprime() const { return dprime_; }
    const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amplitudes_) s += std::norm(a.value);
        return s;
    }

    /// Flattened row-major vector of length d*d'.
    std::vector<Complex> dense() const {
        std::vector<Complex> v(d_ * dprime_, Complex(0.0, 0.0));
        for (const auto& a : amplitudes_) v[a.row * dprime_ + a.col] = a.value;
        return v;
    }

private:
    std::size_t d_;
    std::size_t dprime_;
    std::vector<Amplitude> amplitudes_;
};

inline CMatrix state_to_matrix(const BipartiteState& s) {
    CMatrix a(s.d(), s.dprime());
    for (const auto& amp : s.amplitudes()) a.at(amp.row, amp.col) = amp.value;
    return a;
}

/// Inverse of state_to_matrix; requires unit Frobenius norm within 1e-10.
inline BipartiteState matrix_to_state(const CMatrix& a) {
    const double fn = a.frobenius_norm();
    if (std::abs(fn - 1.0) > 1e-10)
        throw normalization_error("matrix_to_state: Frobenius norm deviates from 1");
    std::vector<Amplitude> amps;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.at(r, c) != Complex(0.0, 0.0)) amps.push_back({r, c, a.at(r, c)});
    return BipartiteState(a.rows(), a.cols(), std::move(amps), /*check_norm=*/false);
}

/// Schmidt number and coefficients: the singular values of the coefficient
/// matrix strictly above rank_tol.
struct SchmidtData {
    std::size_t schmidt_number = 0;
    std::vector<double> coefficients;
    double tol_used = kDefaultRankTol;
};

inline SchmidtData schmidt(const BipartiteState& s, double rank_tol = kDefaultRankTol) {
    SchmidtData out;
    out.tol_used = rank_tol;
    for (double sv : singular_values(state_to_matrix(s))) {
        if (sv > rank_tol) {
            out.coefficients.push_back(sv);
        }
    }
    out.schmidt_number = out.coefficients.size();
    return out;
}

enum class BasisFamily { pb, ebk, sebk, meb, custom };

inline std::string to_string(BasisFamily f) {
    switch (f) {
        case BasisFamily::pb: return "pb";
        case BasisFamily::ebk: return "ebk";
        case BasisFamily::sebk: return "sebk";
        case BasisFamily::meb: return "meb";
        case BasisFamily::custom: return "custom";
    }
    return "custom";
}

inline BasisFamily family_from_string(const std::string& s) {
    if (s == "pb") return BasisFamily::pb;
    if (s == "ebk") return BasisFamily::ebk;
    if (s == "sebk") return BasisFamily::sebk;
    if (s == "meb") return BasisFamily::meb;
    if (s == "custom") return BasisFamily::custom;
    throw invalid_input_error("unknown basis family: " + s);
}

/// Ordered complete family of d*d' states plus construction metadata.
/// Provenance keys are sorted (std::map) so serialized output is stable.
struct EntangledBasis {
    std::size_t d = 0;
    std::size_t dprime = 0;
    std::size_t k = 0;
    BasisFamily family = BasisFamily::custom;
    std::vector<BipartiteState> states;
    std::map<std::string, std::string> provenance;

    bool complete() const { return states.size() == d * dprime; }
};

/// Ordered positions covering the d x d' grid exactly once.
struct PositionSequence {
    std::size_t d = 0;
    std::size_t dprime = 0;
    std::vector<std::pair<std::size_t, std::size_t>> positions;

    bool covers_grid_once() const {
        if (positions.size() != d * dprime) return false;
        std::vector<char> seen(d * dprime, 0);
        for (const auto& [r, c] : positions) {
            if (r >= d || c >= dprime) return false;
            if (seen[r * dprime + c]) return false;
            seen[r * dprime + c] = 1;
        }
        return true;
    }
};

} // namespace ebk
