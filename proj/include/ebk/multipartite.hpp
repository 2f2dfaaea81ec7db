#pragma once

// N-partite bases whose members carry a fixed number of product terms:
// |psi> = sum_j lambda_j |e_j^(1)> ... |e_j^(N)>, lambda_j > 0. A bipartite
// EBk lifts to m+1 parties by attaching |(j+l) mod d> on the new party to
// term l; the lift preserves orthonormality, the weight multiset, and the
// term count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ebk/errors.hpp"
#include "ebk/matrix.hpp"
#include "ebk/state.hpp"
#include "ebk/svd.hpp"

namespace ebk {

struct MultiTerm {
    double weight = 0.0;                        // lambda_j > 0
    std::vector<std::vector<Complex>> vectors;  // one unit vector per party
};

/// Term-form multipartite state. Per-party frame orthonormality is reported
/// as a deviation rather than enforced: the termwise lift of states whose
/// coefficient rows are not orthogonal produces frames that only span the
/// marginal, and such states still verify as EBk members.
class MultipartiteState {
public:
    MultipartiteState(std::vector<std::size_t> dims, std::vector<MultiTerm> terms)
        : dims_(std::move(dims)), terms_(std::move(terms)) {
        if (dims_.size() < 2) throw invalid_input_error("MultipartiteState: needs at least 2 parties");
        double wsq = 0.0;
        for (const auto& t : terms_) {
            if (!(t.weight > 0.0)) throw invalid_input_error("MultipartiteState: weights must be positive");
            wsq += t.weight * t.weight;
            if (t.vectors.size() != dims_.size())
                throw invalid_input_error("MultipartiteState: term party count mismatch");
            for (std::size_t l = 0; l < dims_.size(); ++l) {
                if (t.vectors[l].size() != dims_[l])
                    throw invalid_input_error("MultipartiteState: vector length mismatch");
                double n2 = 0.0;
                for (const auto& z : t.vectors[l]) {
                    if (!is_finite(z)) throw invalid_input_error("MultipartiteState: non-finite entry");
                    n2 += std::norm(z);
                }
                if (std::abs(n2 - 1.0) > 1e-10)
                    throw invalid_input_error("MultipartiteState: term vectors must be unit");
            }
        }
        if (std::abs(wsq - 1.0) > kNormTol)
            throw normalization_error("MultipartiteState: squared weights must sum to 1");
    }

    const std::vector<std::size_t>& dims() const { return dims_; }
    const std::vector<MultiTerm>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    std::size_t total_dim() const {
        std::size_t n = 1;
        for (std::size_t d : dims_) n *= d;
        return n;
    }

    /// Full tensor, row-major with party 1 slowest.
    std::vector<Complex> dense() const {
        const std::size_t total = total_dim();
        std::vector<Complex> out(total, Complex(0.0, 0.0));
        for (const auto& t : terms_) {
            for (std::size_t flat = 0; flat < total; ++flat) {
                Complex amp(t.weight, 0.0);
                std::size_t rem = flat;
                for (std::size_t l = dims_.size(); l-- > 0;) {
                    amp *= t.vectors[l][rem % dims_[l]];
                    rem /= dims_[l];
                }
                out[flat] += amp;
            }
        }
        return out;
    }

    /// Max Gram deviation of any party's term-vector frame from orthonormal.
    double frame_deviation() const {
        double dev = 0.0;
        for (std::size_t l = 0; l < dims_.size(); ++l) {
            for (std::size_t a = 0; a < terms_.size(); ++a)
                for (std::size_t b = a; b < terms_.size(); ++b) {
                    const Complex g = inner_product(terms_[a].vectors[l], terms_[b].vectors[l]);
                    const Complex want = (a == b) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
                    dev = std::max(dev, std::abs(g - want));
                }
        }
        return dev;
    }

private:
    std::vector<std::size_t> dims_;
    std::vector<MultiTerm> terms_;
};

struct MultipartiteBasis {
    std::vector<std::size_t> dims;
    std::size_t k = 0;
    BasisFamily family = BasisFamily::custom;
    std::vector<MultipartiteState> states;
    std::map<std::string, std::string> provenance;

    std::size_t expected_count() const {
        std::size_t n = 1;
        for (std::size_t d : dims) n *= d;
        return n;
    }
};

namespace detail {

inline std::vector<Complex> basis_vector(std::size_t dim, std::size_t index) {
    std::vector<Complex> v(dim, Complex(0.0, 0.0));
    v[index] = Complex(1.0, 0.0);
    return v;
}

// Term form of a sparse bipartite state. Amplitudes grouped by the first
// party's index when that yields exactly k groups (this follows the listing
// order of the source state), otherwise by the second party's index, with a
// full Schmidt decomposition as the fallback for dense foreign states.
inline std::vector<MultiTerm> bipartite_terms(const BipartiteState& st, std::size_t k) {
    auto group_terms = [&](bool by_row) -> std::vector<MultiTerm> {
        std::map<std::size_t, std::vector<Amplitude>> groups;
        for (const auto& a : st.amplitudes()) groups[by_row ? a.row : a.col].push_back(a);
        if (groups.size() != k) return {};
        std::vector<MultiTerm> terms;
        for (const auto& [line, amps] : groups) {
            MultiTerm t;
            double n2 = 0.0;
            for (const auto& a : amps) n2 += std::norm(a.value);
            t.weight = std::sqrt(n2);
            std::vector<Complex> partner(by_row ? st.dprime() : st.d(), Complex(0.0, 0.0));
            for (const auto& a : amps) partner[by_row ? a.col : a.row] = a.value / t.weight;
            if (by_row) {
                t.vectors = {basis_vector(st.d(), line), std::move(partner)};
            } else {
                t.vectors = {std::move(partner), basis_vector(st.dprime(), line)};
            }
            terms.push_back(std::move(t));
        }
        return terms;
    };
    if (auto terms = group_terms(true); !terms.empty()) return terms;
    if (auto terms = group_terms(false); !terms.empty()) return terms;

    // Schmidt decomposition: |psi> = sum_j sigma_j |u_j>|conj(v_j)>.
    const SvdResult dec = svd(state_to_matrix(st));
    std::vector<MultiTerm> terms;
    for (std::size_t j = 0; j < dec.singular_values.size(); ++j) {
        if (dec.singular_values[j] <= kDefaultRankTol) break;
        MultiTerm t;
        t.weight = dec.singular_values[j];
        std::vector<Complex> u(st.d()), v(st.dprime());
        for (std::size_t i = 0; i < st.d(); ++i) u[i] = dec.left_vectors.at(i, j);
        for (std::size_t i = 0; i < st.dprime(); ++i) v[i] = std::conj(dec.right_vectors.at(i, j));
        t.vectors = {std::move(u), std::move(v)};
        terms.push_back(std::move(t));
    }
    if (terms.size() != k)
        throw invalid_input_error("bipartite_terms: state does not have the claimed term count");
    return terms;
}

inline MultipartiteBasis as_multipartite(const EntangledBasis& basis) {
    MultipartiteBasis out;
    out.dims = {basis.d, basis.dprime};
    out.k = basis.k;
    out.family = basis.family;
    out.provenance = basis.provenance;
    for (const auto& st : basis.states)
        out.states.emplace_back(out.dims, bipartite_terms(st, basis.k));
    return out;
}

} // namespace detail

/// m-partite EBk -> (m+1)-partite EBk: input state i with terms
/// lambda_l |psi_i^l> becomes, for each j in 0..d_next-1, the state
/// sum_l lambda_l |psi_i^l> |(j+l) mod d_next>, at output index i*d_next + j.
inline MultipartiteBasis lift(const MultipartiteBasis& basis, std::size_t d_next) {
    if (basis.k > d_next)
        throw invalid_input_error(
            "lift: k exceeds the new party dimension; the shifted vectors would collide");
    MultipartiteBasis out;
    out.dims = basis.dims;
    out.dims.push_back(d_next);
    out.k = basis.k;
    out.family = basis.family;
    out.provenance = basis.provenance;
    out.provenance["lift"] += "+" + std::to_string(d_next);
    for (const auto& st : basis.states) {
        for (std::size_t j = 0; j < d_next; ++j) {
            std::vector<MultiTerm> terms;
            terms.reserve(st.term_count());
            for (std::size_t l = 0; l < st.term_count(); ++l) {
                MultiTerm t = st.terms()[l];
                t.vectors.push_back(detail::basis_vector(d_next, (j + l) % d_next));
                terms.push_back(std::move(t));
            }
            out.states.emplace_back(out.dims, std::move(terms));
        }
    }
    return out;
}

inline MultipartiteBasis lift(const EntangledBasis& basis, std::size_t d_next) {
    return lift(detail::as_multipartite(basis), d_next);
}

struct GhzCheckResult {
    enum class Failure { none, wrong_rank, not_product };
    bool success = false;
    Failure failure = Failure::none;
    std::size_t rank_found = 0;
    std::size_t failing_party = 0; // for not_product: the party whose split is entangled
    std::vector<double> weights;   // descending
    std::vector<std::vector<std::vector<Complex>>> term_vectors; // [term][party]
    double frame_deviation = 0.0;  // diagnostic: per-party frame orthonormality
};

/// Decide whether a raw tensor is a k-term product-decomposable state:
/// Schmidt-split party 1 against the rest, require rank exactly k, then
/// require every right Schmidt vector to factor across parties 2..N.
inline GhzCheckResult ghz_check(const std::vector<Complex>& amplitudes,
                                const std::vector<std::size_t>& dims, std::size_t k,
                                double tol_rank = kDefaultRankTol) {
    if (dims.size() < 2) throw invalid_input_error("ghz_check: needs at least 2 parties");
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    if (amplitudes.size() != total) throw invalid_input_error("ghz_check: amplitude count mismatch");

    GhzCheckResult res;
    const std::size_t rest = total / dims[0];
    CMatrix m(dims[0], rest);
    for (std::size_t i = 0; i < total; ++i) m.at(i / rest, i % rest) = amplitudes[i];
    const SvdResult dec = svd(m);
    for (double sv : dec.singular_values)
        if (sv > tol_rank) ++res.rank_found;
    if (res.rank_found != k) {
        res.failure = GhzCheckResult::Failure::wrong_rank;
        return res;
    }

    for (std::size_t j = 0; j < k; ++j) {
        res.weights.push_back(dec.singular_values[j]);
        std::vector<std::vector<Complex>> vecs;
        std::vector<Complex> head(dims[0]);
        for (std::size_t i = 0; i < dims[0]; ++i) head[i] = dec.left_vectors.at(i, j);
        vecs.push_back(std::move(head));

        std::vector<Complex> remainder(rest);
        for (std::size_t i = 0; i < rest; ++i) remainder[i] = std::conj(dec.right_vectors.at(i, j));
        std::size_t tail_dim = rest;
        for (std::size_t party = 1; party + 1 < dims.size(); ++party) {
            tail_dim /= dims[party];
            CMatrix split(dims[party], tail_dim);
            for (std::size_t i = 0; i < remainder.size(); ++i)
                split.at(i / tail_dim, i % tail_dim) = remainder[i];
            const SvdResult f = svd(split);
            if (f.singular_values.size() > 1 && f.singular_values[1] > tol_rank) {
                res.failure = GhzCheckResult::Failure::not_product;
                res.failing_party = party;
                res.weights.clear();
                res.term_vectors.clear();
                return res;
            }
            std::vector<Complex> factor(dims[party]);
            for (std::size_t i = 0; i < dims[party]; ++i) factor[i] = f.left_vectors.at(i, 0);
            vecs.push_back(std::move(factor));
            std::vector<Complex> next(tail_dim);
            for (std::size_t i = 0; i < tail_dim; ++i)
                next[i] = std::conj(f.right_vectors.at(i, 0)) * f.singular_values[0];
            remainder = std::move(next);
        }
        // whatever norm is left belongs to the last party's vector
        double n2 = 0.0;
        for (const auto& z : remainder) n2 += std::norm(z);
        const double inv = n2 > 0.0 ? 1.0 / std::sqrt(n2) : 0.0;
        for (auto& z : remainder) z *= inv;
        vecs.push_back(std::move(remainder));
        res.term_vectors.push_back(std::move(vecs));
    }

    res.success = true;
    for (std::size_t l = 0; l < dims.size(); ++l)
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a; b < k; ++b) {
                const Complex g = inner_product(res.term_vectors[a][l], res.term_vectors[b][l]);
                const Complex want = (a == b) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
                res.frame_deviation = std::max(res.frame_deviation, std::abs(g - want));
            }
    return res;
}

} // namespace ebk
