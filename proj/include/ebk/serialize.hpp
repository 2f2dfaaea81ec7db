#pragma once

// JSON persistence. Complex values are [re, im]-style {re, im} fields at
// full double precision; amplitudes are stored sparsely with one index per
// party. Keys serialize in sorted order and no timestamps enter the
// payload, so identical inputs give byte-identical files.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ebk/errors.hpp"
#include "ebk/isometry.hpp"
#include "ebk/multipartite.hpp"
#include "ebk/state.hpp"
#include "ebk/tiling.hpp"
#include "ebk/verify.hpp"

namespace ebk {

inline constexpr const char* kFormatVersion = "1";
inline constexpr const char* kToolVersion = "ebk 1.0.0";

using json = nlohmann::json;

namespace detail {

inline json amplitude_entry(const std::vector<std::size_t>& indices, Complex value) {
    json a;
    a["indices"] = indices;
    a["re"] = value.real();
    a["im"] = value.imag();
    return a;
}

inline json provenance_json(const std::map<std::string, std::string>& p) {
    json out = json::object();
    for (const auto& [key, value] : p) out[key] = value;
    out["tool"] = kToolVersion;
    return out;
}

} // namespace detail

inline json basis_to_json(const EntangledBasis& basis) {
    json out;
    out["format_version"] = kFormatVersion;
    out["kind"] = "bipartite";
    out["dims"] = std::vector<std::size_t>{basis.d, basis.dprime};
    out["k"] = basis.k;
    out["family"] = to_string(basis.family);
    out["provenance"] = detail::provenance_json(basis.provenance);
    json states = json::array();
    for (std::size_t i = 0; i < basis.states.size(); ++i) {
        json st;
        st["index"] = i;
        json amps = json::array();
        for (const auto& a : basis.states[i].amplitudes())
            amps.push_back(detail::amplitude_entry({a.row, a.col}, a.value));
        st["amplitudes"] = std::move(amps);
        states.push_back(std::move(st));
    }
    out["states"] = std::move(states);
    return out;
}

inline json basis_to_json(const MultipartiteBasis& basis) {
    json out;
    out["format_version"] = kFormatVersion;
    out["kind"] = "multipartite";
    out["dims"] = basis.dims;
    out["k"] = basis.k;
    out["family"] = to_string(basis.family);
    out["provenance"] = detail::provenance_json(basis.provenance);
    json states = json::array();
    for (std::size_t i = 0; i < basis.states.size(); ++i) {
        json st;
        st["index"] = i;
        json amps = json::array();
        const std::vector<Complex> dense = basis.states[i].dense();
        const auto& dims = basis.dims;
        for (std::size_t flat = 0; flat < dense.size(); ++flat) {
            if (dense[flat] == Complex(0.0, 0.0)) continue;
            std::vector<std::size_t> indices(dims.size());
            std::size_t rem = flat;
            for (std::size_t l = dims.size(); l-- > 0;) {
                indices[l] = rem % dims[l];
                rem /= dims[l];
            }
            amps.push_back(detail::amplitude_entry(indices, dense[flat]));
        }
        st["amplitudes"] = std::move(amps);
        states.push_back(std::move(st));
    }
    out["states"] = std::move(states);
    return out;
}

/// Loaded basis file with states as raw data; verification recomputes
/// everything from this.
struct LoadedBasis {
    bool multipartite = false;
    std::vector<std::size_t> dims;
    std::size_t k = 0;
    BasisFamily family = BasisFamily::custom;
    std::map<std::string, std::string> provenance;
    std::vector<BipartiteState> bipartite_states;
    std::vector<std::vector<Complex>> tensors; // one per state, any kind
};

namespace detail {

inline const json& require_field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw file_format_error(std::string("missing field '") + name + "'");
    return *it;
}

inline std::size_t require_size(const json& j, const char* name) {
    const json& f = require_field(j, name);
    if (!f.is_number_unsigned() || f.get<unsigned long long>() == 0)
        throw file_format_error(std::string("field '") + name + "' must be a positive integer");
    return f.get<std::size_t>();
}

inline double require_double(const json& j, const char* name) {
    const json& f = require_field(j, name);
    if (!f.is_number()) throw file_format_error(std::string("field '") + name + "' must be a number");
    const double v = f.get<double>();
    if (!std::isfinite(v)) throw file_format_error(std::string("field '") + name + "' must be finite");
    return v;
}

} // namespace detail

/// Parse and validate a basis file. With strict_norm every state must have
/// unit norm within 1e-10; verification-bound loads relax this so that
/// mathematically broken but well-formed files are reported by the
/// verifier instead of rejected here.
inline LoadedBasis basis_from_json(const json& j, bool strict_norm = true) {
    if (!j.is_object()) throw file_format_error("top level must be an object");
    const std::string version = detail::require_field(j, "format_version").get<std::string>();
    if (version != kFormatVersion)
        throw file_format_error("unsupported format_version '" + version + "'");
    const std::string kind = detail::require_field(j, "kind").get<std::string>();
    if (kind != "bipartite" && kind != "multipartite")
        throw file_format_error("kind must be 'bipartite' or 'multipartite'");

    LoadedBasis out;
    out.multipartite = (kind == "multipartite");
    const json& dims = detail::require_field(j, "dims");
    if (!dims.is_array() || dims.size() < 2)
        throw file_format_error("dims must be an array of at least two dimensions");
    if (!out.multipartite && dims.size() != 2)
        throw file_format_error("bipartite files must have exactly two dims");
    for (const auto& d : dims) {
        if (!d.is_number_unsigned() || d.get<unsigned long long>() == 0)
            throw file_format_error("dims entries must be positive integers");
        out.dims.push_back(d.get<std::size_t>());
    }
    out.k = detail::require_size(j, "k");
    out.family = family_from_string(detail::require_field(j, "family").get<std::string>());
    if (auto it = j.find("provenance"); it != j.end() && it->is_object())
        for (const auto& [key, value] : it->items())
            if (value.is_string()) out.provenance[key] = value.get<std::string>();

    std::size_t total = 1;
    for (std::size_t d : out.dims) total *= d;

    const json& states = detail::require_field(j, "states");
    if (!states.is_array()) throw file_format_error("states must be an array");
    for (const auto& st : states) {
        const json& amps = detail::require_field(st, "amplitudes");
        if (!amps.is_array() || amps.empty())
            throw file_format_error("each state needs a non-empty amplitudes array");
        std::vector<Complex> tensor(total, Complex(0.0, 0.0));
        std::vector<Amplitude> bip;
        double norm2 = 0.0;
        for (const auto& a : amps) {
            const json& idx = detail::require_field(a, "indices");
            if (!idx.is_array() || idx.size() != out.dims.size())
                throw file_format_error("amplitude indices must list one index per party");
            std::size_t flat = 0;
            std::vector<std::size_t> indices;
            for (std::size_t l = 0; l < out.dims.size(); ++l) {
                if (!idx[l].is_number_unsigned())
                    throw file_format_error("amplitude indices must be non-negative integers");
                const std::size_t v = idx[l].get<std::size_t>();
                if (v >= out.dims[l]) throw file_format_error("amplitude index out of range");
                indices.push_back(v);
                flat = flat * out.dims[l] + v;
            }
            const Complex value(detail::require_double(a, "re"), detail::require_double(a, "im"));
            if (tensor[flat] != Complex(0.0, 0.0))
                throw file_format_error("duplicate amplitude position in a state");
            tensor[flat] = value;
            norm2 += std::norm(value);
            if (!out.multipartite) bip.push_back({indices[0], indices[1], value});
        }
        if (strict_norm && std::abs(norm2 - 1.0) > 1e-10)
            throw file_format_error("state norm deviates from 1 beyond 1e-10");
        out.tensors.push_back(std::move(tensor));
        if (!out.multipartite)
            out.bipartite_states.push_back(
                BipartiteState(out.dims[0], out.dims[1], std::move(bip), /*check_norm=*/false));
    }
    return out;
}

inline std::string dump_deterministic(const json& j) { return j.dump(2) + "\n"; }

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw file_format_error("cannot open '" + path + "' for writing");
    out << dump_deterministic(j);
    if (!out) throw file_format_error("failed writing '" + path + "'");
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw file_format_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw file_format_error(std::string("invalid JSON: ") + e.what());
    }
    return j;
}

inline json matrix_to_json(const CMatrix& m) {
    json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    json entries = json::array();
    for (const auto& z : m.entries()) entries.push_back(json::array({z.real(), z.imag()}));
    out["entries"] = std::move(entries);
    return out;
}

inline CMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw file_format_error("matrix file: top level must be an object");
    const std::size_t rows = detail::require_size(j, "rows");
    const std::size_t cols = detail::require_size(j, "cols");
    const json& entries = detail::require_field(j, "entries");
    if (!entries.is_array() || entries.size() != rows * cols)
        throw file_format_error("matrix file: entries length must equal rows*cols");
    std::vector<Complex> data;
    data.reserve(rows * cols);
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw file_format_error("matrix file: each entry must be a [re, im] pair");
        const Complex z(e[0].get<double>(), e[1].get<double>());
        if (!is_finite(z)) throw file_format_error("matrix file: non-finite entry");
        data.push_back(z);
    }
    return CMatrix(rows, cols, std::move(data));
}

/// User-supplied isometry: validated X^dag X = I within 1e-10 on load.
inline Isometry isometry_from_json(const json& j) {
    Isometry x;
    x.entries = matrix_from_json(j);
    x.source = IsometrySource::file;
    bool real = true;
    for (const auto& z : x.entries.entries())
        if (z.imag() != 0.0) real = false;
    x.field = real ? CoefficientField::real_field : CoefficientField::complex_field;
    try {
        validate_isometry(x);
    } catch (const error& e) {
        throw file_format_error(std::string("matrix file: ") + e.what());
    }
    return x;
}

inline json report_to_json(const VerificationReport& r) {
    json out;
    out["dims"] = r.dims;
    out["claimed_k"] = r.claimed_k;
    out["state_count"] = r.state_count;
    out["expected_count"] = r.expected_count;
    out["gram_max_deviation"] = r.gram_max_deviation;
    out["classification"] = to_string(r.classification);
    out["failures"] = r.failures;
    out["tolerances"] = {{"gram", r.tols.gram},
                         {"rank", r.tols.rank},
                         {"zero", r.tols.zero},
                         {"sebk", r.tols.sebk}};
    json per_state = json::array();
    for (const auto& c : r.per_state) {
        json s;
        s["index"] = c.index;
        s["schmidt_number"] = c.schmidt_number;
        s["coefficients"] = c.coefficients;
        s["max_sebk_deviation"] = c.max_sebk_deviation;
        if (!c.ambiguous.empty()) s["ambiguous"] = c.ambiguous;
        per_state.push_back(std::move(s));
    }
    out["per_state"] = std::move(per_state);
    return out;
}

inline json tiling_to_json(const Tiling& t) {
    json out;
    out["rows"] = t.rows;
    out["cols"] = t.cols;
    out["k"] = t.k;
    json diags = json::array();
    for (const auto& d : t.diagonals) {
        json cells = json::array();
        for (const auto& [r, c] : d) cells.push_back(json::array({r, c}));
        diags.push_back(std::move(cells));
    }
    out["diagonals"] = std::move(diags);
    json ls = json::array();
    for (const auto& l : t.l_patterns) {
        json lp;
        lp["s"] = l.s;
        lp["orientation"] = l.orientation == LOrientation::column ? "column" : "row";
        json singles = json::array();
        for (const auto& [r, c] : l.singletons) singles.push_back(json::array({r, c}));
        json shared = json::array();
        for (const auto& [r, c] : l.shared) shared.push_back(json::array({r, c}));
        lp["singletons"] = std::move(singles);
        lp["shared"] = std::move(shared);
        ls.push_back(std::move(lp));
    }
    out["l_patterns"] = std::move(ls);
    return out;
}

inline json decomposition_to_json(const BlockDecomposition& deco) {
    json out;
    out["d"] = deco.d;
    out["dprime"] = deco.dprime;
    out["k"] = deco.k;
    out["s"] = deco.s;
    out["r"] = deco.r;
    out["sprime"] = deco.sprime;
    out["rprime"] = deco.rprime;
    json blocks = json::array();
    for (const auto& b : deco.blocks) {
        json jb;
        jb["row0"] = b.row0;
        jb["col0"] = b.col0;
        jb["rows"] = b.rows;
        jb["cols"] = b.cols;
        jb["kind"] = b.kind == BlockKind::cyclic ? "cyclic" : "corner";
        blocks.push_back(std::move(jb));
    }
    out["blocks"] = std::move(blocks);
    return out;
}

} // namespace ebk
