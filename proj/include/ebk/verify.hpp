#pragma once

// Certification from first principles. Verification is construction-blind:
// everything is recomputed from the amplitudes. Mathematical failures are
// recorded in the report, never thrown; only malformed input throws.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ebk/errors.hpp"
#include "ebk/matrix.hpp"
#include "ebk/multipartite.hpp"
#include "ebk/state.hpp"
#include "ebk/svd.hpp"

namespace ebk {

enum class Classification { invalid, pb, ebk, sebk, meb };

inline std::string to_string(Classification c) {
    switch (c) {
        case Classification::invalid: return "invalid";
        case Classification::pb: return "pb";
        case Classification::ebk: return "ebk";
        case Classification::sebk: return "sebk";
        case Classification::meb: return "meb";
    }
    return "invalid";
}

struct VerifyTolerances {
    double gram = 1e-10;
    double rank = kDefaultRankTol;  // sigma_k must exceed this
    double zero = kDefaultZeroTol;  // sigma_{k+1} must stay below this
    double sebk = 1e-10;            // |sigma - 1/sqrt(k)| bound for SEBk
};

struct PerStateCheck {
    std::size_t index = 0;
    std::size_t schmidt_number = 0;
    std::vector<double> coefficients;
    double max_sebk_deviation = 0.0;
    std::vector<double> ambiguous; // singular values inside (zero, rank] band
    bool rank_ok = false;
};

struct VerificationReport {
    std::vector<std::size_t> dims;
    std::size_t claimed_k = 0;
    std::size_t state_count = 0;
    std::size_t expected_count = 0;
    double gram_max_deviation = 0.0;
    std::vector<PerStateCheck> per_state;
    Classification classification = Classification::invalid;
    std::vector<std::string> failures;
    VerifyTolerances tols;

    bool passed() const { return failures.empty(); }
};

namespace detail {

inline PerStateCheck check_singular_values(std::size_t index, const std::vector<double>& sv,
                                           std::size_t k, const VerifyTolerances& tols,
                                           std::vector<std::string>& failures) {
    PerStateCheck c;
    c.index = index;
    for (double s : sv) {
        if (s > tols.rank)
            c.coefficients.push_back(s);
        else if (s > tols.zero)
            c.ambiguous.push_back(s);
    }
    c.schmidt_number = c.coefficients.size();
    const double target = 1.0 / std::sqrt(static_cast<double>(k));
    for (double s : c.coefficients)
        c.max_sebk_deviation = std::max(c.max_sebk_deviation, std::abs(s - target));
    c.rank_ok = (c.schmidt_number == k) && c.ambiguous.empty();
    if (c.schmidt_number != k)
        failures.push_back("state " + std::to_string(index) + ": Schmidt number " +
                           std::to_string(c.schmidt_number) + " != " + std::to_string(k));
    else if (!c.ambiguous.empty())
        failures.push_back("state " + std::to_string(index) +
                           ": singular value in the ambiguous band (" +
                           std::to_string(tols.zero) + ", " + std::to_string(tols.rank) + "]");
    return c;
}

inline Classification classify(const VerificationReport& r, std::size_t k, bool bipartite) {
    if (!r.failures.empty()) return Classification::invalid;
    if (k == 1) return Classification::pb;
    bool sebk = true;
    for (const auto& c : r.per_state)
        if (c.max_sebk_deviation > r.tols.sebk) sebk = false;
    if (!sebk) return Classification::ebk;
    const std::size_t dmin = *std::min_element(r.dims.begin(), r.dims.end());
    return (bipartite && k == dmin) ? Classification::meb : Classification::sebk;
}

} // namespace detail

inline VerificationReport verify_states(std::size_t d, std::size_t dprime,
                                        const std::vector<BipartiteState>& states, std::size_t k,
                                        VerifyTolerances tols = {}) {
    if (k == 0) throw invalid_input_error("verify_states: k must be positive");
    for (const auto& st : states)
        if (st.d() != d || st.dprime() != dprime)
            throw invalid_input_error("verify_states: dimension mismatch among states");

    VerificationReport report;
    report.dims = {d, dprime};
    report.claimed_k = k;
    report.state_count = states.size();
    report.expected_count = d * dprime;
    report.tols = tols;
    if (report.state_count != report.expected_count)
        report.failures.push_back("state count " + std::to_string(report.state_count) + " != " +
                                  std::to_string(report.expected_count));

    std::vector<std::vector<Complex>> flat;
    flat.reserve(states.size());
    for (const auto& st : states) flat.push_back(st.dense());
    if (!flat.empty()) {
        report.gram_max_deviation = max_deviation_from_identity(gram(flat));
        if (report.gram_max_deviation > tols.gram)
            report.failures.push_back("Gram deviation " + std::to_string(report.gram_max_deviation) +
                                      " exceeds " + std::to_string(tols.gram));
    }

    for (std::size_t i = 0; i < states.size(); ++i)
        report.per_state.push_back(detail::check_singular_values(
            i, singular_values(state_to_matrix(states[i])), k, tols, report.failures));

    report.classification = detail::classify(report, k, /*bipartite=*/true);
    return report;
}

inline VerificationReport verify_basis(const EntangledBasis& basis, std::size_t k,
                                       VerifyTolerances tols = {}) {
    return verify_states(basis.d, basis.dprime, basis.states, k, tols);
}

/// Multipartite verification over raw tensors: count, Gram, per-state
/// product-decomposability at term count k, SEBk when all weights are
/// 1/sqrt(k).
inline VerificationReport verify_multipartite_tensors(const std::vector<std::size_t>& dims,
                                                      const std::vector<std::vector<Complex>>& tensors,
                                                      std::size_t k, VerifyTolerances tols = {}) {
    if (k == 0) throw invalid_input_error("verify_multipartite: k must be positive");
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    for (const auto& t : tensors)
        if (t.size() != total)
            throw invalid_input_error("verify_multipartite: tensor length mismatch");

    VerificationReport report;
    report.dims = dims;
    report.claimed_k = k;
    report.state_count = tensors.size();
    report.expected_count = total;
    report.tols = tols;
    if (report.state_count != report.expected_count)
        report.failures.push_back("state count " + std::to_string(report.state_count) + " != " +
                                  std::to_string(report.expected_count));

    if (!tensors.empty()) {
        report.gram_max_deviation = max_deviation_from_identity(gram(tensors));
        if (report.gram_max_deviation > tols.gram)
            report.failures.push_back("Gram deviation " + std::to_string(report.gram_max_deviation) +
                                      " exceeds " + std::to_string(tols.gram));
    }

    const double target = 1.0 / std::sqrt(static_cast<double>(k));
    for (std::size_t i = 0; i < tensors.size(); ++i) {
        PerStateCheck c;
        c.index = i;
        const GhzCheckResult g = ghz_check(tensors[i], dims, k, tols.rank);
        c.schmidt_number = g.rank_found;
        c.coefficients = g.weights;
        c.rank_ok = g.success;
        for (double w : g.weights)
            c.max_sebk_deviation = std::max(c.max_sebk_deviation, std::abs(w - target));
        if (!g.success) {
            if (g.failure == GhzCheckResult::Failure::wrong_rank)
                report.failures.push_back("state " + std::to_string(i) + ": marginal rank " +
                                          std::to_string(g.rank_found) + " != " + std::to_string(k));
            else
                report.failures.push_back("state " + std::to_string(i) + ": right Schmidt vector not a product at party " +
                                          std::to_string(g.failing_party + 1));
        }
        report.per_state.push_back(std::move(c));
    }

    report.classification = detail::classify(report, k, /*bipartite=*/dims.size() == 2);
    return report;
}

inline VerificationReport verify_multipartite(const MultipartiteBasis& basis, std::size_t k,
                                              VerifyTolerances tols = {}) {
    std::vector<std::vector<Complex>> tensors;
    tensors.reserve(basis.states.size());
    for (const auto& st : basis.states) tensors.push_back(st.dense());
    return verify_multipartite_tensors(basis.dims, tensors, k, tols);
}

/// Rank order for "classification matches or exceeds the claimed family".
inline int classification_rank(Classification c) {
    switch (c) {
        case Classification::invalid: return 0;
        case Classification::pb: return 1;
        case Classification::ebk: return 2;
        case Classification::sebk: return 3;
        case Classification::meb: return 4;
    }
    return 0;
}

inline int family_rank(BasisFamily f) {
    switch (f) {
        case BasisFamily::custom: return 0; // any valid classification satisfies a custom claim
        case BasisFamily::pb: return 1;
        case BasisFamily::ebk: return 2;
        case BasisFamily::sebk: return 3;
        case BasisFamily::meb: return 4;
    }
    return 0;
}

inline bool classification_satisfies(Classification c, BasisFamily claimed) {
    if (c == Classification::invalid) return false;
    return classification_rank(c) >= family_rank(claimed);
}

} // namespace ebk
