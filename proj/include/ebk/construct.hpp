#pragma once

// Top-level basis generation. Bipartite requests dispatch on k | d*d':
// the cyclic construction when it divides (SEBk with equal-modulus
// coefficients, plain EBk otherwise), the block-and-tiling path when it
// does not (EBk only; the equal-coefficient case then hinges on special
// isometries that are not known to exist in general).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ebk/cyclic.hpp"
#include "ebk/errors.hpp"
#include "ebk/isometry.hpp"
#include "ebk/multipartite.hpp"
#include "ebk/state.hpp"
#include "ebk/tiling.hpp"

namespace ebk {

struct ConstructionRequest {
    std::size_t d = 0;
    std::size_t dprime = 0;
    std::size_t k = 0;
    BasisFamily family = BasisFamily::ebk;
    std::optional<Isometry> coeffs;  // k x k; defaults to dft(k) / od(k) by field
    CoefficientField field = CoefficientField::complex_field;
};

namespace detail {

inline Isometry resolve_coeffs(const ConstructionRequest& req) {
    if (req.coeffs) {
        const Isometry& x = *req.coeffs;
        if (x.rows() != req.k || x.cols() != req.k)
            throw invalid_input_error("generate: coefficient isometry must be k x k");
        if (req.field == CoefficientField::real_field)
            for (const auto& z : x.entries.entries())
                if (std::abs(z.imag()) > 1e-12)
                    throw invalid_input_error("generate: real mode requires a real isometry");
        return x;
    }
    if (req.field == CoefficientField::real_field) return od(req.k);
    return dft(req.k);
}

} // namespace detail

inline EntangledBasis generate(ConstructionRequest req) {
    if (req.k == 0 || req.d == 0 || req.dprime == 0)
        throw invalid_input_error("generate: dimensions and k must be positive");
    if (req.d > req.dprime) throw dimension_order_error("generate: requires d <= d'");
    if (req.k > req.d) throw invalid_input_error("generate: k exceeds min(d, d')");
    if (req.family == BasisFamily::meb) {
        if (req.k != req.d)
            throw invalid_input_error("generate: a MEB requires k = min(d, d')");
        req.family = BasisFamily::sebk;
    }
    if (req.family == BasisFamily::pb && req.k != 1)
        throw invalid_input_error("generate: a product basis requires k = 1");

    if (req.k == 1) return product_basis(req.d, req.dprime);

    if (req.family == BasisFamily::sebk && req.field == CoefficientField::real_field)
        throw unsupported_construction_error(
            "generate: equal real coefficients of modulus 1/sqrt(k) force entries +-1/sqrt(k), "
            "and no such real basis is produced by this construction");

    const std::size_t area = req.d * req.dprime;
    if (area % req.k == 0) {
        const Isometry coeffs = detail::resolve_coeffs(req);
        if (req.family == BasisFamily::sebk && !constant_column_modulus(coeffs.entries))
            throw unsupported_construction_error(
                "generate: a SEBk needs coefficients of constant modulus 1/sqrt(k); "
                "the supplied isometry varies in modulus");
        EntangledBasis basis = ebk_cyclic(req.d, req.dprime, req.k, coeffs);
        if (req.field == CoefficientField::real_field)
            basis.provenance["field"] = "real";
        return basis;
    }

    if (req.family == BasisFamily::sebk)
        throw unsupported_construction_error(
            "generate: k does not divide d*d'; an equal-coefficient basis would require a "
            "special isometric matrix whose columns mix diagonal and L-shaped placements, "
            "and such matrices are not known to exist for k >= 3 (none exist for k = 2). "
            "Use family ebk, or evaluate a candidate isometry with the predicate.");

    EntangledBasis basis = assemble(req.d, req.dprime, req.k, detail::resolve_coeffs(req));
    if (req.field == CoefficientField::real_field) basis.provenance["field"] = "real";
    return basis;
}

/// N-partite generation: build a bipartite seed on the first admissible
/// party pair, lift over the remaining parties in ascending index order,
/// then permute parties back to the requested order.
inline MultipartiteBasis generate_npartite(const std::vector<std::size_t>& dims, std::size_t k,
                                           BasisFamily family,
                                           std::optional<Isometry> coeffs = std::nullopt,
                                           CoefficientField field = CoefficientField::complex_field) {
    if (dims.size() < 3)
        throw invalid_input_error("generate_npartite: needs at least 3 parties");
    std::size_t dmin = dims.front();
    for (std::size_t d : dims) {
        if (d == 0) throw invalid_input_error("generate_npartite: zero dimension");
        dmin = std::min(dmin, d);
    }
    if (k == 0 || k > dmin)
        throw invalid_input_error("generate_npartite: requires 1 <= k <= min(dims)");

    // First admissible seed pair in ascending index order. Any pair admits
    // an EBk; a SEBk seed also needs k | d_p * d_q.
    std::size_t seed_p = dims.size(), seed_q = dims.size();
    for (std::size_t p = 0; p < dims.size() && seed_p == dims.size(); ++p)
        for (std::size_t q = p + 1; q < dims.size(); ++q) {
            if (k > std::min(dims[p], dims[q])) continue;
            if (family == BasisFamily::sebk && (dims[p] * dims[q]) % k != 0) continue;
            seed_p = p;
            seed_q = q;
            break;
        }
    if (seed_p == dims.size())
        throw unsupported_construction_error(
            "generate_npartite: no party pair admits an equal-coefficient seed "
            "(need k | d_p * d_q with k <= min(d_p, d_q))");

    ConstructionRequest req;
    req.d = std::min(dims[seed_p], dims[seed_q]);
    req.dprime = std::max(dims[seed_p], dims[seed_q]);
    req.k = k;
    req.family = family;
    req.coeffs = std::move(coeffs);
    req.field = field;
    const EntangledBasis seed = generate(req);

    MultipartiteBasis built = detail::as_multipartite(seed);
    // seed party order: the smaller dimension came first
    std::vector<std::size_t> built_parties;
    if (dims[seed_p] <= dims[seed_q]) {
        built_parties = {seed_p, seed_q};
    } else {
        built_parties = {seed_q, seed_p};
    }
    for (std::size_t l = 0; l < dims.size(); ++l) {
        if (l == seed_p || l == seed_q) continue;
        built = lift(built, dims[l]);
        built_parties.push_back(l);
    }

    // permute parties from built order back to the requested order
    std::vector<std::size_t> pos_of_party(dims.size());
    for (std::size_t bpos = 0; bpos < built_parties.size(); ++bpos)
        pos_of_party[built_parties[bpos]] = bpos;

    MultipartiteBasis out;
    out.dims.assign(dims.begin(), dims.end());
    out.k = k;
    out.family = built.family;
    out.provenance = built.provenance;
    out.provenance["seed_pair"] =
        std::to_string(seed_p) + "," + std::to_string(seed_q);
    {
        std::string order;
        for (std::size_t l : built_parties) order += (order.empty() ? "" : ",") + std::to_string(l);
        out.provenance["built_party_order"] = order;
    }
    for (const auto& st : built.states) {
        std::vector<MultiTerm> terms;
        terms.reserve(st.term_count());
        for (const auto& t : st.terms()) {
            MultiTerm nt;
            nt.weight = t.weight;
            nt.vectors.resize(dims.size());
            for (std::size_t l = 0; l < dims.size(); ++l) nt.vectors[l] = t.vectors[pos_of_party[l]];
            terms.push_back(std::move(nt));
        }
        out.states.emplace_back(out.dims, std::move(terms));
    }
    return out;
}

} // namespace ebk
